"""Command-line front end.

Exit codes: 0 success, 2 bad input, 3 dimension cap exceeded,
4 verification failure, 5 infeasible profile during a sweep.
"""
import argparse
import json
import sys
import time
from pathlib import Path

from . import optimize, suites, tradeoff
from .errors import ChancapError, DimensionOverflow, InfeasibleProfile
from .serialize import curve_csv, dumps, load_channel, load_profile, profile_json
from .tradeoff import ResourceTriple, exact

EXIT_OK, EXIT_INPUT, EXIT_RESOURCE, EXIT_VERIFY, EXIT_INFEASIBLE = 0, 2, 3, 4, 5


def _positive_int(s):
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {s}")
    return v


def _resource(s):
    try:
        v = exact(s)
    except ChancapError as e:
        raise argparse.ArgumentTypeError(str(e)) from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"resource values must be nonnegative, got {s}")
    return v


def _range(s):
    parts = s.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("range must look like LO:HI:STEPS")
    lo, hi = _resource(parts[0]), _resource(parts[1])
    steps = _positive_int(parts[2])
    if steps < 2:
        raise argparse.ArgumentTypeError("a range needs at least 2 steps")
    return lo, hi, steps


def _file(s):
    if not Path(s).is_file():
        raise argparse.ArgumentTypeError(f"no such file: {s}")
    return s


def _write(text: str, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _cfg(args) -> optimize.OptimizerConfig:
    kw = {"seed": args.seed}
    if args.restarts is not None:
        kw["restarts"] = args.restarts
    if getattr(args, "max_iters", None) is not None:
        kw["max_iters"] = args.max_iters
    return optimize.OptimizerConfig(**kw)


# ------------------------------------------------------------------ commands


def cmd_capacity(args) -> int:
    ch = load_channel(args.channel)
    cfg = _cfg(args)
    t0 = time.perf_counter()
    if args.objective == "coherent":
        est = optimize.maximize_coherent_information(ch, args.n, cfg)
    elif args.objective == "qmi":
        est = optimize.maximize_qmi(ch, cfg)
    else:
        est = optimize.maximize_holevo(ch, args.ensemble_size, cfg)
    elapsed = time.perf_counter() - t0
    report = {
        "objective": est.objective,
        "channel": ch.label,
        "value_dits": est.value,
        "n_uses": est.n_uses,
        "restarts": est.restarts,
        "restarts_converged": est.converged_restarts,
        "restarts_agree": est.restarts_agree,
        "grad_norm": est.grad_norm,
        "on_boundary": est.on_boundary,
        "argmax_state": est.argmax_state,
        # timing breaks byte-identical reruns, so it is opt-in
        "wall_time": elapsed if args.timing else None,
    }
    _write(dumps(report), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    ch = load_channel(args.channel) if args.channel else None
    if args.suite == "decomposition":
        res = suites.decomposition(args.d, args.delta, args.n, args.trials, args.seed, ch)
    elif args.suite == "entropy-exchange-dual":
        res = suites.entropy_exchange_dual(args.d, args.trials, args.seed, ch)
    else:
        pr = load_profile(args.profile) if args.profile else None
        res = suites.concavity(args.trials, args.seed, pr)
    _write(dumps(res.report()), args.out)
    return EXIT_OK if res.passed else EXIT_VERIFY


def _violations(vs) -> list:
    return [{"tag": v.tag, "residual": v.residual, "message": v.message} for v in vs]


def _apply_bowen(pr: tradeoff.ChannelProfile) -> tradeoff.ChannelProfile:
    prov = dict(pr.provenance, E_Q="user")
    return pr.with_(bowen_conjecture=True, E_Q=pr.Q_E - pr.Q, provenance=prov)


def cmd_region(args) -> int:
    pr = load_profile(args.profile)
    if args.bowen:
        pr = _apply_bowen(pr)
    fixed = ResourceTriple(args.x, args.y, args.p)
    problems = tradeoff.validate_profile(pr)
    if problems and not args.force:
        sys.stderr.write(dumps({"valid": False, "violations": _violations(problems)}))
        return EXIT_INPUT
    lo, hi, steps = args.range
    try:
        curve = tradeoff.sweep(pr, args.axis, fixed, lo, hi, steps, use_exact=not problems)
    except InfeasibleProfile as e:
        sys.stderr.write(
            dumps({"infeasible": str(e), "coord": e.coord, "lower_tag": e.lower_tag, "upper_tag": e.upper_tag})
        )
        return EXIT_INFEASIBLE
    text = curve_csv(curve)
    trans = [
        {"which": t.which, "between": [t.before, t.after], "from": t.from_tag, "to": t.to_tag}
        for w in ("lower", "upper")
        for t in curve.transitions(w)
    ]
    summary = {
        "axis": args.axis,
        "fixed": {"x": args.x, "y": args.y, "p": args.p},
        "samples": len(curve.samples),
        "bounds_only": bool(problems),
        "violations": _violations(problems),
        "transitions": trans,
        "concave_lower": tradeoff.check_concavity(curve, "lower").ok if steps >= 3 else None,
    }
    if args.out:
        Path(args.out).write_text(text)
        summary["csv"] = args.out
        sys.stdout.write(dumps(summary))
    else:
        sys.stdout.write(text)
        sys.stderr.write(dumps(summary))
    return EXIT_OK


def cmd_profile_derive(args) -> int:
    ch = load_channel(args.channel)
    pr = tradeoff.derive_profile(ch, _cfg(args), n_max=args.n)
    if args.bowen:
        pr = _apply_bowen(pr)
    _write(profile_json(pr), args.out)
    return EXIT_OK


def cmd_profile_validate(args) -> int:
    pr = load_profile(args.profile)
    ctx = None
    if args.x is not None or args.y is not None or args.p is not None:
        ctx = ResourceTriple(args.x or 0, args.y or 0, args.p or 0)
    problems = tradeoff.validate_profile(pr, ctx)
    _write(dumps({"valid": not problems, "violations": _violations(problems)}), args.out)
    return EXIT_OK if not problems else EXIT_INPUT


# -------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--restarts", type=_positive_int)
    common.add_argument("--out", help="write the main output here instead of stdout")

    ap = argparse.ArgumentParser(prog="chancap", description="Quantum channel capacity toolkit.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("capacity", parents=[common], help="maximize an entropic functional over inputs")
    p.add_argument("--channel", required=True, type=_file)
    p.add_argument("--objective", choices=("coherent", "qmi", "holevo"), default="coherent")
    p.add_argument("-n", type=_positive_int, default=1, help="channel uses (coherent only)")
    p.add_argument("--ensemble-size", type=_positive_int)
    p.add_argument("--max-iters", type=_positive_int)
    p.add_argument("--timing", action="store_true", help="record wall time in the report")
    p.set_defaults(func=cmd_capacity)

    p = sub.add_parser("verify", parents=[common], help="run a randomized identity suite")
    p.add_argument("suite", choices=("decomposition", "entropy-exchange-dual", "concavity"))
    p.add_argument("--channel", type=_file)
    p.add_argument("--profile", type=_file)
    p.add_argument("--d", type=_positive_int, default=2)
    p.add_argument("--delta", type=_positive_int, default=2)
    p.add_argument("-n", type=_positive_int, default=1)
    p.add_argument("--trials", type=_positive_int, default=100)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("region", parents=[common], help="sweep trade-off bounds along one resource")
    p.add_argument("--profile", required=True, type=_file)
    p.add_argument("--axis", choices=("p", "y"), default="p")
    p.add_argument("--x", type=_resource, default=exact(0))
    p.add_argument("--y", type=_resource, default=exact(0))
    p.add_argument("--p", type=_resource, default=exact(0))
    p.add_argument("--range", type=_range, default=(exact(0), exact(2), 21))
    p.add_argument("--force", action="store_true", help="continue in bounds-only mode despite violations")
    p.add_argument("--bowen", action="store_true", help="assume the Bowen conjecture (sets E_Q = Q_E - Q)")
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("profile-derive", parents=[common], help="estimate a profile from a channel")
    p.add_argument("--channel", required=True, type=_file)
    p.add_argument("-n", type=_positive_int, default=2, help="largest block length for Q")
    p.add_argument("--bowen", action="store_true")
    p.set_defaults(func=cmd_profile_derive)

    p = sub.add_parser("profile-validate", parents=[common], help="check a profile's constraints")
    p.add_argument("--profile", required=True, type=_file)
    p.add_argument("--x", type=_resource)
    p.add_argument("--y", type=_resource)
    p.add_argument("--p", type=_resource)
    p.set_defaults(func=cmd_profile_validate)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    try:
        return args.func(args)
    except DimensionOverflow as e:
        print(f"chancap: dimension cap exceeded: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ChancapError, ValueError, KeyError, OSError, json.JSONDecodeError) as e:
        print(f"chancap: invalid input: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
