"""Resource trade-off bounds for a channel described by a scalar profile.

All arithmetic is exact: finite values are ``fractions.Fraction`` and an
infinite resource is ``math.inf``.  Sums and comparisons with ``inf`` behave
as usual.  Products and quotients that involve ``inf`` raise
``InfiniteArithmetic`` instead of silently producing a number.

Every bound comes back with a short tag naming the relation it came from.
A trailing ``*`` marks a value that leaned on a conservative stand-in for
data the profile does not carry.
"""
from __future__ import annotations

import math
import numbers
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import InfeasibleProfile, InfiniteArithmetic, InvalidProfile, MissingProfileField

INF = math.inf
TOL = Fraction(1, 10**9)

FIELDS = ("Q", "C", "Q_E", "C_E", "E_Q", "E_C", "D0", "Q_xy0")
SAMPLED_FIELDS = ("C_x0p", "Q_x0p")


# ---------------------------------------------------------------- arithmetic


def exact(v):
    """Coerce a number or numeric string to Fraction, or to ``inf``.

    Floats go through their shortest repr, so 0.1 becomes 1/10 rather than
    the binary neighbour.
    """
    if isinstance(v, bool):
        raise InvalidProfile(f"boolean {v!r} is not a resource value")
    if isinstance(v, Fraction):
        return v
    if isinstance(v, numbers.Rational):
        return Fraction(v)
    if isinstance(v, numbers.Real):
        v = float(v)
        if v == INF:
            return INF
        if not math.isfinite(v):
            raise InvalidProfile(f"{v!r} is not a usable value")
        return Fraction(repr(v))
    if isinstance(v, str):
        s = v.strip().lower()
        if s in ("inf", "+inf", "infinity", "+infinity"):
            return INF
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError):
            raise InvalidProfile(f"cannot parse {v!r} as a number") from None
    raise InvalidProfile(f"cannot interpret {v!r} as a number")


def is_inf(v) -> bool:
    return v == INF


def _add(a, b):
    if is_inf(a) or is_inf(b):
        return INF
    return a + b


def _mul(a, b):
    if is_inf(a) or is_inf(b):
        raise InfiniteArithmetic(f"product {a} * {b} involves an infinite resource")
    return a * b


def _half(v):
    return INF if is_inf(v) else v / 2


# ---------------------------------------------------------------- data types


@dataclass(frozen=True)
class ResourceTriple:
    """Assistance per channel use: x feedback dits, y forward dits, p e-dits."""

    x: Fraction = Fraction(0)
    y: Fraction = Fraction(0)
    p: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("x", "y", "p"):
            v = exact(getattr(self, name))
            if v < 0:
                raise InvalidProfile(f"resource {name}={v} is negative")
            object.__setattr__(self, name, v)

    def infinite(self, name: str) -> bool:
        return is_inf(getattr(self, name))

    def with_(self, **kw) -> "ResourceTriple":
        return replace(self, **kw)


@dataclass(frozen=True)
class SampledFunction:
    """Piecewise-linear model of a monotone function of p, from ``(p, value)`` knots.

    Past the saturation point ``at`` the value is ``to``.  Between the last
    knot and ``at`` the curve runs straight to ``(at, to)``.
    """

    knots: tuple

    def __post_init__(self):
        pts = tuple((exact(p), exact(v)) for p, v in self.knots)
        if not pts:
            raise InvalidProfile("sampled function needs at least one knot")
        if any(is_inf(p) or is_inf(v) for p, v in pts):
            raise InvalidProfile("sampled function knots must be finite")
        if pts[0][0] != 0:
            raise InvalidProfile("sampled function must start at p = 0")
        if any(b[0] <= a[0] for a, b in zip(pts, pts[1:])):
            raise InvalidProfile("sampled function knots must have increasing p")
        object.__setattr__(self, "knots", pts)

    def model(self, at, to) -> list:
        pts = [k for k in self.knots if k[0] < at]
        pts.append((at, to))
        return pts

    def __call__(self, p, at, to):
        if p >= at:
            return to
        pts = self.model(at, to)
        for (p0, v0), (p1, v1) in zip(pts, pts[1:]):
            if p <= p1:
                return v0 + (v1 - v0) * (p - p0) / (p1 - p0)
        return to

    def as_list(self) -> list:
        return [[float(p), float(v)] for p, v in self.knots]


@dataclass(frozen=True)
class ChannelProfile:
    """Scalar capacity summary of one channel.

    ``D0`` and ``Q_xy0`` stand for D(x,y,0) and Q(x,y,0) at the (x, y)
    being studied.  Where an identity fixes those values (x = 0, or
    y infinite) the evaluators use the identity instead.
    """

    Q: Fraction
    C: Fraction
    Q_E: Fraction
    C_E: Fraction
    E_Q: Fraction
    E_C: Fraction
    D0: Fraction
    Q_xy0: Fraction
    C_x0p: SampledFunction | None = None
    Q_x0p: SampledFunction | None = None
    bowen_conjecture: bool = False
    provenance: Mapping = field(default_factory=dict, compare=False)

    def __post_init__(self):
        for name in FIELDS:
            v = exact(getattr(self, name))
            if is_inf(v):
                raise InvalidProfile(f"profile field {name} must be finite")
            object.__setattr__(self, name, v)
        for name in SAMPLED_FIELDS:
            v = getattr(self, name)
            if v is not None and not isinstance(v, SampledFunction):
                object.__setattr__(self, name, SampledFunction(tuple(v)))
        object.__setattr__(self, "bowen_conjecture", bool(self.bowen_conjecture))
        object.__setattr__(self, "provenance", dict(self.provenance))

    @classmethod
    def from_dict(cls, d: Mapping) -> "ChannelProfile":
        missing = [k for k in FIELDS if k not in d]
        if missing:
            raise MissingProfileField(f"profile lacks field(s): {', '.join(missing)}")
        kw = {k: d[k] for k in FIELDS}
        for k in SAMPLED_FIELDS:
            if d.get(k) is not None:
                kw[k] = SampledFunction(tuple(tuple(pair) for pair in d[k]))
        return cls(
            **kw,
            bowen_conjecture=bool(d.get("bowen_conjecture", False)),
            provenance=d.get("provenance", {}),
        )

    def to_dict(self) -> dict:
        out = {k: float(getattr(self, k)) for k in FIELDS}
        for k in SAMPLED_FIELDS:
            f = getattr(self, k)
            if f is not None:
                out[k] = f.as_list()
        out["bowen_conjecture"] = self.bowen_conjecture
        if self.provenance:
            out["provenance"] = dict(sorted(self.provenance.items()))
        return out

    def with_(self, **kw) -> "ChannelProfile":
        return replace(self, **kw)


# ---------------------------------------------------------------- validation


@dataclass(frozen=True)
class Violation:
    tag: str
    residual: float
    message: str


def validate_profile(pr: ChannelProfile, context: ResourceTriple | None = None) -> list:
    """Every constraint the profile breaks, as data.

    With ``context`` the identities that pin D(x,y,0) and Q(x,y,0) at that
    triple are checked as well.
    """
    out = []

    def at_least(tag, a, b, what):
        if a < b - TOL:
            out.append(Violation(tag, float(b - a), f"{what}: {float(a):.12g} < {float(b):.12g}"))

    def equal(tag, a, b, what):
        if abs(a - b) > TOL:
            out.append(Violation(tag, float(abs(a - b)), f"{what}: {float(a):.12g} != {float(b):.12g}"))

    at_least("distillato1", pr.C, pr.Q, "C >= Q")
    at_least("distillato1", pr.D0, pr.Q_xy0, "D(x,y,0) >= Q(x,y,0)")
    equal("utile", pr.Q_E, pr.C_E / 2, "Q_E = C_E/2")
    at_least("bowenin1", pr.E_C + pr.Q_E, pr.E_Q, "E_C + Q_E >= E_Q")
    at_least("bowenin1", pr.E_Q, pr.E_C - pr.Q_E, "E_Q >= E_C - Q_E")
    at_least("bowenin2", pr.E_Q, pr.Q_E - pr.Q, "E_Q >= Q_E - Q")
    at_least("bowenin2", pr.E_C, pr.C_E - pr.C, "E_C >= C_E - C")
    for name in FIELDS:
        at_least("monotonicity", getattr(pr, name), Fraction(0), f"{name} >= 0")
    at_least("monotonicity", pr.Q_E, pr.Q, "Q_E >= Q")
    at_least("monotonicity", pr.C_E, pr.C, "C_E >= C")
    at_least("monotonicity", pr.Q_xy0, pr.Q, "Q(x,y,0) >= Q")

    for name, floor, at, to in (("Q_x0p", pr.Q, pr.E_Q, pr.Q_E), ("C_x0p", pr.C, pr.E_C, pr.C_E)):
        f = getattr(pr, name)
        if f is None:
            continue
        knots = f.knots
        at_least("monotonicity", knots[0][1], floor, f"{name}(0) >= unassisted value")
        for (p0, v0), (p1, v1) in zip(knots, knots[1:]):
            at_least("monotonicity", v1, v0, f"{name} non-decreasing on [{float(p0):.12g}, {float(p1):.12g}]")
        for p, v in knots:
            if p >= at:
                equal("bow1", v, to, f"{name}({float(p):.12g}) saturated")
            else:
                at_least("bow1", to, v, f"{name}({float(p):.12g}) <= saturation value")
        pts = f.model(at, to)
        for a, b, c in zip(pts, pts[1:], pts[2:]):
            bend = (c[1] - b[1]) / (c[0] - b[0]) - (b[1] - a[1]) / (b[0] - a[0])
            if bend > TOL:
                out.append(Violation("qqq", float(bend), f"{name} is convex at p={float(b[0]):.12g}"))

    if pr.bowen_conjecture:
        equal("CONJ", pr.E_Q, pr.Q_E - pr.Q, "E_Q = Q_E - Q under the Bowen conjecture")

    if context is not None:
        if context.x == 0:
            equal("Q1", pr.Q_xy0, pr.Q, "Q(0,y,0) = Q")
            equal("D12", pr.D0, pr.Q, "D(0,y,0) = Q")
        elif context.infinite("y"):
            equal("D10", pr.D0, pr.Q_xy0, "D(x,inf,0) = Q(x,inf,0)")
    return out


# ------------------------------------------------------------ derived values


def _q_xy0(pr: ChannelProfile, t: ResourceTriple):
    """Q(x,y,0): forward classical bits alone never help, so Q at x = 0."""
    return pr.Q if t.x == 0 else pr.Q_xy0


def _d_xy0(pr: ChannelProfile, t: ResourceTriple):
    if t.x == 0:
        return pr.Q
    if t.infinite("y"):
        return _q_xy0(pr, t)
    return pr.D0


def _q_x0(pr: ChannelProfile, q):
    """Q(x,0,q) and whether it came from supplied data.

    Without data the chord from (0, Q) to (E_Q, Q_E) is used; it lies below
    the true concave curve because Q(x,0,0) >= Q.
    """
    if is_inf(q) or q >= pr.E_Q:
        return pr.Q_E, True
    if pr.Q_x0p is not None:
        return pr.Q_x0p(q, pr.E_Q, pr.Q_E), True
    return q * (pr.Q_E - pr.Q) / pr.E_Q + pr.Q, False


def _pick(cands: Sequence, better):
    best = None
    for v, tag in cands:
        if best is None or better(v, best[0]):
            best = (v, tag)
    return best


def quantum_upper(pr: ChannelProfile, t: ResourceTriple):
    """Tightest applicable upper bound on Q(x,y,p) as ``(value, tag)``."""
    cands = []
    q0, d0 = _q_xy0(pr, t), _d_xy0(pr, t)
    if not t.infinite("p") and d0 > 0:
        cands.append((_add(_mul(t.p, q0) / d0, q0), "Q2"))
    cands.append((_add(_half(t.y), pr.Q_E), "Q3"))
    if pr.Q_x0p is not None and pr.C_x0p is not None and not t.infinite("y"):
        qp = pr.Q_x0p(t.p, pr.E_Q, pr.Q_E)
        cp = pr.C_x0p(t.p, pr.E_C, pr.C_E)
        if cp > 0:
            cands.append((_mul(t.y, qp) / cp + qp, "Q4"))
    return _pick(cands, lambda a, b: a < b)


def quantum_lower(pr: ChannelProfile, t: ResourceTriple):
    """Best applicable pointwise lower bound on Q(x,y,p) as ``(value, tag)``."""
    cands = []
    half = _half(t.y)
    q0 = _q_xy0(pr, t)
    if t.p <= half:
        if t.x == 0:
            cands.append((_add(t.p, pr.Q), "Q77"))
        if t.p == 0:
            cands.append((q0, "Q7"))
        elif pr.Q_x0p is not None and not t.infinite("y") and t.y == 2 * t.p:
            cands.append((t.p + pr.Q_x0p(Fraction(0), pr.E_Q, pr.Q_E), "Q7"))
        else:
            # Q(x, y-2p, 0) >= Q(x, 0, 0) >= Q by monotonicity in y
            stand_in = pr.Q_x0p(Fraction(0), pr.E_Q, pr.Q_E) if pr.Q_x0p is not None else pr.Q
            cands.append((_add(t.p, stand_in), "Q7*"))
    if t.p >= half:
        if is_inf(half):
            cands.append((INF, "Q6"))
        else:
            v, sampled = _q_x0(pr, _add(t.p, -half) if not t.infinite("p") else INF)
            cands.append((_add(half, v), "Q6" if sampled else "Q6*"))
    if not t.infinite("y") and not t.infinite("p") and t.p <= half + pr.E_Q:
        span = half + pr.E_Q
        if span == 0:
            cands.append((q0, "Q10"))
        else:
            cands.append((t.p * (half + pr.Q_E - q0) / span + q0, "Q10"))
    return _pick(cands, lambda a, b: a > b)


def quantum_exact(pr: ChannelProfile, t: ResourceTriple):
    """``(value, tag)`` where an identity pins Q(x,y,p), else None."""
    half = _half(t.y)
    if t.infinite("y"):
        return _add(t.p, _q_xy0(pr, t)), "YQ"
    if t.p >= half + pr.E_Q:
        return half + pr.Q_E, "Q8"
    if t.x == 0 and t.p <= half:
        return t.p + pr.Q, "Q1" if t.p == 0 else "Q777"
    if pr.bowen_conjecture and t.x == 0:
        return min(t.p + pr.Q, half + pr.Q_E), "Q101"
    return None


@dataclass(frozen=True)
class ClassicalResult:
    value: Fraction | float | None
    lower: Fraction | float
    upper: Fraction | float
    lower_tag: str
    upper_tag: str

    @property
    def consistent(self) -> bool:
        return not self.lower > _add(self.upper, TOL)


def classical_capacity(pr: ChannelProfile, t: ResourceTriple) -> ClassicalResult:
    """C(x,y,p) = y + C(x,0,p), exactly when C(x,0,p) is known, else bounds.

    The upper bound uses C(x,0,0)/D(x,0,0); the profile carries C(0,0,0) and
    D(x,y,0), so for x > 0 the bound is tagged as relying on stand-ins.
    """
    if t.p >= pr.E_C:
        v = _add(t.y, pr.C_E)
        return ClassicalResult(v, v, v, "C1+bow1", "C1+bow1")
    if pr.C_x0p is not None:
        v = _add(t.y, pr.C_x0p(t.p, pr.E_C, pr.C_E))
        return ClassicalResult(v, v, v, "C1", "C1")
    lower = _add(t.y, t.p * (pr.C_E - pr.C) / pr.E_C + pr.C)
    c00 = pr.C
    d00 = pr.Q if t.x == 0 else pr.D0
    upper, upper_tag = _add(t.y, pr.C_E), "C1+CE"
    if d00 > 0:
        ccc = t.p * c00 / d00 + c00
        if _add(t.y, ccc) < upper:
            upper, upper_tag = _add(t.y, ccc), "CCC" if t.x == 0 else "CCC*"
    elif t.p == 0:
        upper, upper_tag = _add(t.y, c00), "CCC"
    return ClassicalResult(None, lower, upper, "lower", upper_tag)


@dataclass(frozen=True)
class DistillResult:
    value: Fraction | float | None
    lower: Fraction | float
    upper: Fraction | float
    tag: str


def distillability(pr: ChannelProfile, t: ResourceTriple) -> DistillResult:
    """D(x,y,p) = p + D(x,y,0); the p = 0 value is pinned for x = 0 or y infinite."""
    if t.infinite("y"):
        base, tag = _q_xy0(pr, t), "qudue" if t.infinite("x") else "D10"
    elif t.x == 0:
        base, tag = pr.Q, "D12"
    else:
        base, tag = None, "distillato1"
    if t.p > 0:
        tag = "D11+" + tag
    if base is None:
        return DistillResult(None, _add(t.p, pr.Q_xy0), INF, tag)
    v = _add(t.p, base)
    return DistillResult(v, v, v, tag)


# --------------------------------------------------------------------- sweep


@dataclass(frozen=True)
class Sample:
    coord: Fraction | float
    lower: Fraction | float
    upper: Fraction | float
    exact: Fraction | float | None
    active_lower: str
    active_upper: str


@dataclass(frozen=True)
class Transition:
    which: str
    before: Fraction | float
    after: Fraction | float
    from_tag: str
    to_tag: str


@dataclass(frozen=True)
class BoundCurve:
    axis: str
    samples: tuple

    def column(self, which: str) -> list:
        """``(coord, value)`` pairs where both are present and finite."""
        out = []
        for s in self.samples:
            v = getattr(s, which)
            if v is not None and not is_inf(s.coord) and not is_inf(v):
                out.append((s.coord, v))
        return out

    def transitions(self, which: str = "upper") -> list:
        attr = "active_" + which
        out = []
        for a, b in zip(self.samples, self.samples[1:]):
            ta, tb = getattr(a, attr), getattr(b, attr)
            if ta != tb:
                out.append(Transition(which, a.coord, b.coord, ta, tb))
        return out


def concave_envelope(points: Sequence):
    """Vertices of the least concave majorant of ``(c, v)`` points, by monotone chain."""
    hull = []
    for c, v in sorted(points):
        if hull and hull[-1][0] == c:
            if v <= hull[-1][1]:
                continue
            hull.pop()
        while len(hull) >= 2:
            (c0, v0), (c1, v1) = hull[-2], hull[-1]
            # drop the middle vertex unless it sits strictly above the chord
            if (v1 - v0) * (c - c0) <= (v - v0) * (c1 - c0):
                hull.pop()
            else:
                break
        hull.append((c, v))
    return hull


def _hull_value(hull, c):
    for (c0, v0), (c1, v1) in zip(hull, hull[1:]):
        if c0 <= c <= c1:
            return v0 + (v1 - v0) * (c - c0) / (c1 - c0)
    return hull[0][1] if len(hull) == 1 and hull[0][0] == c else None


def _grid(lo, hi, steps: int, horizon):
    if is_inf(hi):
        n = steps - 1
        if n == 1:
            return [lo, INF]
        return [lo + (horizon - lo) * i / (n - 1) for i in range(n)] + [INF]
    return [lo + (hi - lo) * i / (steps - 1) for i in range(steps)]


def _horizon(pr: ChannelProfile, axis: str, fixed: ResourceTriple, lo):
    """Twice the last breakpoint along the axis, so saturation is visible."""
    if axis == "p":
        knee = None if fixed.infinite("y") else _half(fixed.y) + pr.E_Q
    else:
        knee = None if fixed.infinite("p") else 2 * fixed.p
    if knee is None:
        return lo + 1
    return max(lo + 1, 2 * knee)


def sweep(
    pr: ChannelProfile,
    axis: str,
    fixed: ResourceTriple,
    lo,
    hi,
    steps: int,
    horizon=None,
    use_exact: bool = True,
) -> BoundCurve:
    """Sample lower, upper and exact values of Q along ``axis``.

    When ``hi`` is infinite the last sample sits at infinity and the finite
    samples run up to ``horizon``, past the last breakpoint by default.
    The lower curve is replaced by its concave majorant, then both curves
    are made non-decreasing.  ``use_exact=False`` leaves the identities
    out and reports bounds only.
    """
    if axis not in ("p", "y"):
        raise ValueError(f"axis must be 'p' or 'y', not {axis!r}")
    lo, hi = exact(lo), exact(hi)
    if is_inf(lo) or lo < 0 or hi < lo:
        raise ValueError(f"bad sweep range {lo}:{hi}")
    if steps < 2:
        raise ValueError("a sweep needs at least 2 steps")
    if horizon is None:
        horizon = _horizon(pr, axis, fixed, lo)
    coords = _grid(lo, hi, steps, exact(horizon))

    rows = []
    for c in coords:
        t = fixed.with_(**{axis: c})
        lv, lt = quantum_lower(pr, t)
        uv, ut = quantum_upper(pr, t)
        ex = quantum_exact(pr, t) if use_exact else None
        ev = None
        if ex is not None:
            ev, et = ex
            if ev > lv:
                lv, lt = ev, et
            if ev < uv:
                uv, ut = ev, et
        rows.append([c, lv, uv, ev, lt, ut])

    pts = [(r[0], r[1]) for r in rows if not is_inf(r[0]) and not is_inf(r[1])]
    hull = concave_envelope(pts)
    for r in rows:
        if is_inf(r[0]) or is_inf(r[1]):
            continue
        h = _hull_value(hull, r[0])
        if h is not None and h > r[1]:
            r[1], r[4] = h, "hull"
    for prev, r in zip(rows, rows[1:]):
        if prev[1] > r[1]:
            r[1], r[4] = prev[1], prev[4]
    for nxt, r in zip(reversed(rows), list(reversed(rows))[1:]):
        if nxt[2] < r[2]:
            r[2], r[5] = nxt[2], nxt[5]

    for c, lv, uv, _, lt, ut in rows:
        if lv > _add(uv, TOL):
            raise InfeasibleProfile(
                f"lower bound {float(lv):.12g} ({lt}) exceeds upper bound {float(uv):.12g} ({ut}) at {axis}={float(c):.12g}",
                coord=c,
                lower_tag=lt,
                upper_tag=ut,
            )
    return BoundCurve(axis, tuple(Sample(*r) for r in rows))


@dataclass(frozen=True)
class ConcavityCheck:
    ok: bool
    index: int | None = None
    excess: float = 0.0


def check_concavity(curve: BoundCurve, which: str = "lower") -> ConcavityCheck:
    """Second differences along the present samples, scaled to the right-hand step.

    ``index`` is the sample index (into ``curve.samples``) of the first kink
    that bends upward by more than 1e-9.
    """
    if len(curve.samples) < 3:
        raise ValueError("concavity needs at least 3 samples")
    idx = [
        i
        for i, s in enumerate(curve.samples)
        if getattr(s, which) is not None and not is_inf(s.coord) and not is_inf(getattr(s, which))
    ]
    for a, b, c in zip(idx, idx[1:], idx[2:]):
        sa, sb, sc = curve.samples[a], curve.samples[b], curve.samples[c]
        va, vb, vc = getattr(sa, which), getattr(sb, which), getattr(sc, which)
        ratio = (sc.coord - sb.coord) / (sb.coord - sa.coord)
        bend = (vc - vb) - (vb - va) * ratio
        if bend > TOL:
            return ConcavityCheck(False, b, float(bend))
    return ConcavityCheck(True)


def curve_problems(curve: BoundCurve, tol=Fraction(1, 10**12)) -> list:
    """Ways in which a curve breaks the ordering and monotonicity a bound curve must have."""
    out = []
    for i, s in enumerate(curve.samples):
        if s.lower > _add(s.upper, tol):
            out.append(f"sample {i}: lower > upper")
        if s.exact is not None and not (s.lower - tol <= s.exact <= _add(s.upper, tol)):
            out.append(f"sample {i}: exact outside [lower, upper]")
    for i, (a, b) in enumerate(zip(curve.samples, curve.samples[1:]), start=1):
        if b.lower < a.lower - tol:
            out.append(f"sample {i}: lower decreases")
        if b.upper < a.upper - tol:
            out.append(f"sample {i}: upper decreases")
    return out


# ------------------------------------------------------------ derived profile


def derive_profile(ch, cfg=None, n_max: int = 2, base_dim: int | None = None) -> ChannelProfile:
    """Profile out of the optimizers, with E_Q and E_C at their lower-bound defaults.

    The estimates are lower bounds, so C and C_E are lifted to the values the
    other estimates already imply (C >= Q, C_E >= max(2Q, C)).
    """
    from . import optimize

    q = optimize.estimate_quantum_capacity(ch, n_max, cfg, base_dim).value
    ce = optimize.maximize_qmi(ch, cfg, base_dim).value
    c = optimize.maximize_holevo(ch, cfg=cfg, base_dim=base_dim).value
    q = max(exact(q), Fraction(0))
    c = max(exact(c), q)
    ce = max(exact(ce), 2 * q, c)
    qe = ce / 2
    prov = {k: "measured" for k in ("Q", "C", "C_E")}
    prov.update(Q_E="measured", E_Q="default", E_C="default", D0="default", Q_xy0="default")
    return ChannelProfile(
        Q=q,
        C=c,
        Q_E=qe,
        C_E=ce,
        E_Q=qe - q,
        E_C=ce - c,
        D0=q,
        Q_xy0=q,
        provenance=prov,
    )
