import math
from fractions import Fraction as F

import pytest

from chancap import tradeoff as T
from chancap.errors import InfeasibleProfile, InfiniteArithmetic, InvalidProfile, MissingProfileField
from chancap.tradeoff import INF, ChannelProfile, ResourceTriple

BASE = dict(Q=0.5, C=1, Q_E=1, C_E=2, E_Q=0.5, E_C=1, D0=0.5, Q_xy0=0.5)
RICH = dict(Q=0.5, C=1, Q_E=1.2, C_E=2.4, E_Q=0.7, E_C=1.4, D0=1, Q_xy0=0.5)


def prof(**kw):
    return ChannelProfile(**{**BASE, **kw})


def rich(**kw):
    return ChannelProfile(**{**RICH, **kw})


def tags(vs):
    return {v.tag for v in vs}


# ------------------------------------------------------------------ arithmetic


def test_exact_conversion():
    assert T.exact(0.1) == F(1, 10)
    assert T.exact("0.25") == F(1, 4)
    assert T.exact(3) == F(3)
    assert T.exact("inf") == INF and T.exact(math.inf) == INF
    for bad in (True, "nope", float("nan"), None):
        with pytest.raises(InvalidProfile):
            T.exact(bad)


def test_infinite_arithmetic_rules():
    assert T._add(INF, F(1)) == INF
    assert min(INF, F(2)) == 2 and max(INF, F(2)) == INF
    with pytest.raises(InfiniteArithmetic):
        T._mul(INF, F(2))
    with pytest.raises(InfiniteArithmetic):
        T._mul(F(0), INF)


def test_resource_triple():
    t = ResourceTriple("inf", 1, 0.5)
    assert t.infinite("x") and not t.infinite("y") and t.p == F(1, 2)
    with pytest.raises(InvalidProfile):
        ResourceTriple(-1, 0, 0)


def test_profile_round_trip():
    d = {**RICH, "Q_x0p": [[0, 0.5], [0.35, 0.9]], "bowen_conjecture": False, "provenance": {"Q": "user"}}
    pr = ChannelProfile.from_dict(d)
    assert pr.Q_x0p is not None
    back = ChannelProfile.from_dict(pr.to_dict())
    assert back == pr
    with pytest.raises(MissingProfileField):
        ChannelProfile.from_dict({"Q": 1})
    with pytest.raises(InvalidProfile):
        prof(Q="inf")


def test_sampled_function_interpolation_and_saturation():
    f = T.SampledFunction(((0, 0.5), (0.2, 0.8)))
    at, to = F(7, 10), F(6, 5)
    assert f(F(0), at, to) == F(1, 2)
    assert f(F(1, 10), at, to) == F(13, 20)
    # straight from the last knot to the saturation point
    assert f(F(45, 100), at, to) == F(8, 10) + (F(6, 5) - F(8, 10)) * F(1, 2)
    assert f(F(9), at, to) == to and f(INF, at, to) == to
    with pytest.raises(InvalidProfile):
        T.SampledFunction(((0.1, 0.5),))
    with pytest.raises(InvalidProfile):
        T.SampledFunction(((0, 0.5), (0, 0.6)))


# ------------------------------------------------------------------ validator


def test_validator_examples():
    assert T.validate_profile(prof()) == []
    v = T.validate_profile(prof(Q_E=0.9, C_E=2))
    assert [x.tag for x in v if x.tag == "utile"] == ["utile"]
    assert next(x for x in v if x.tag == "utile").residual == pytest.approx(0.1)
    assert "bowenin2" in tags(T.validate_profile(prof(E_Q=0.3)))


def test_validator_families():
    assert tags(T.validate_profile(prof(C=0.4, C_E=2))) >= {"distillato1"}
    assert tags(T.validate_profile(prof(D0=0.4))) == {"distillato1"}
    assert tags(T.validate_profile(prof(E_Q=2.1))) == {"bowenin1"}
    assert tags(T.validate_profile(prof(Q_xy0=0.4, D0=0.5))) == {"monotonicity"}
    assert "monotonicity" in tags(T.validate_profile(prof(Q=-0.1, D0=0.5)))


def test_validator_sampled_functions():
    ok = rich(Q_x0p=[[0, 0.5], [0.35, 0.85]], C_x0p=[[0, 1], [0.7, 1.7]])
    assert T.validate_profile(ok) == []
    assert "qqq" in tags(T.validate_profile(rich(Q_x0p=[[0, 0.5], [0.35, 0.55]])))
    assert "monotonicity" in tags(T.validate_profile(rich(Q_x0p=[[0, 0.5], [0.2, 0.9], [0.3, 0.8]])))
    assert "bow1" in tags(T.validate_profile(rich(Q_x0p=[[0, 0.5], [1.0, 1.1]])))


def test_validator_bowen_conjecture():
    assert T.validate_profile(rich(E_Q=0.7, bowen_conjecture=True)) == []
    assert tags(T.validate_profile(rich(E_Q=0.8, bowen_conjecture=True))) == {"CONJ"}


def test_validator_context_identities():
    pr = rich()
    assert tags(T.validate_profile(pr, ResourceTriple(0, 1, 0))) == {"D12"}
    assert tags(T.validate_profile(rich(), ResourceTriple(1, "inf", 0))) == {"D10"}
    assert T.validate_profile(rich(D0=0.6, Q_xy0=0.6), ResourceTriple(1, 1, 0)) == []


# ----------------------------------------------------------- point evaluators


def test_quantum_upper_examples():
    pr = rich(E_C=1.4)
    t = ResourceTriple(1, 1, F(3, 5))
    assert T.quantum_upper(pr, t) == (F(4, 5), "Q2")
    assert T.quantum_upper(pr, t.with_(p=F(3))) == (F(17, 10), "Q3")
    assert T.quantum_upper(pr, ResourceTriple(1, 1, 0)) == (F(1, 2), "Q2")
    assert T.quantum_upper(pr, ResourceTriple(0, 0, INF)) == (F(6, 5), "Q3")


def test_quantum_upper_q4_with_sampled_data():
    # a slowly rising Q(x,0,p) undercuts the Q2 line p + Q_xy0
    pr = rich(D0=0.5, Q_x0p=[[0, 0.5], [0.35, 0.6]], C_x0p=[[0, 1], [0.7, 1.7]])
    v, tag = T.quantum_upper(pr, ResourceTriple(1, F(1, 10), F(3, 10)))
    # Q(.3) = 41/70, C(.3) = 13/10, y Q/C + Q = 41/65
    assert (v, tag) == (F(41, 65), "Q4")
    # at p = 0 Q2 collapses to Q_xy0 and wins
    assert T.quantum_upper(pr, ResourceTriple(1, F(1, 10), 0)) == (F(1, 2), "Q2")


def test_quantum_lower_examples():
    assert T.quantum_lower(rich(), ResourceTriple(0, 1, F(3, 10))) == (F(4, 5), "Q77")
    v, tag = T.quantum_lower(rich(), ResourceTriple(1, 1, F(1, 2) + F(7, 10)))
    assert v == F(17, 10) and tag.startswith("Q6")
    assert T.quantum_lower(rich(), ResourceTriple(1, 1, 0)) == (F(1, 2), "Q7")
    assert T.quantum_lower(rich(), ResourceTriple(1, 1, F(1, 5)))[1] == "Q7*"


def test_quantum_lower_q6_uses_sampled_curve():
    pr = rich(Q_x0p=[[0, 0.5], [0.35, 0.9]])
    v, tag = T.quantum_lower(pr, ResourceTriple(1, 1, F(1, 2) + F(7, 20)))
    assert (v, tag) == (F(1, 2) + F(9, 10), "Q6")


def test_quantum_exact_examples():
    assert T.quantum_exact(rich(), ResourceTriple(0, 2, 1)) == (F(3, 2), "Q777")
    assert T.quantum_exact(rich(), ResourceTriple(1, 1, F(1, 2) + F(7, 10) + 1)) == (F(17, 10), "Q8")
    assert T.quantum_exact(rich(), ResourceTriple(0, 0, 0)) == (F(1, 2), "Q1")
    assert T.quantum_exact(rich(), ResourceTriple(1, 1, F(1, 2))) is None
    bowen = rich(bowen_conjecture=True)
    assert T.quantum_exact(bowen, ResourceTriple(0, 1, F(9, 10)))[0] == F(7, 5)
    assert T.quantum_exact(bowen, ResourceTriple(0, 1, 2))[0] == F(17, 10)
    assert T.quantum_exact(rich(), ResourceTriple(0, INF, F(3, 10))) == (F(4, 5), "YQ")


def test_bowen_small_p_is_p_plus_q():
    pr = rich(bowen_conjecture=True)
    for k in range(8):
        p = F(k, 10)
        assert T.quantum_exact(pr, ResourceTriple(0, 0, p))[0] == p + pr.Q


def test_exact_lies_within_bounds():
    pr = rich(E_C=1.4)
    for x in (0, 1):
        for y in (0, F(1, 2), 1, 3):
            for k in range(0, 40, 3):
                t = ResourceTriple(x, y, F(k, 10))
                lo, _ = T.quantum_lower(pr, t)
                up, _ = T.quantum_upper(pr, t)
                ex = T.quantum_exact(pr, t)
                if x == 0:
                    assert lo <= up + T.TOL
                if ex is not None and x == 0:
                    assert lo - T.TOL <= ex[0] <= up + T.TOL


def test_q777_meets_q6_at_half_y():
    pr = rich(Q_x0p=[[0, 0.5], [0.35, 0.85]])
    t = ResourceTriple(0, 1, F(1, 2))
    q6 = F(1, 2) + pr.Q_x0p(F(0), pr.E_Q, pr.Q_E)
    assert abs(T.quantum_exact(pr, t)[0] - q6) <= T.TOL


# --------------------------------------------------------- classical capacity


def test_classical_saturated():
    for x in (0, 2, INF):
        r = T.classical_capacity(prof(), ResourceTriple(x, 1, 1))
        assert r.value == 1 + 2


def test_classical_unassisted_point():
    r = T.classical_capacity(prof(), ResourceTriple(0, 0, 0))
    assert r.lower == r.upper == 1 and r.value is None


def test_classical_inconsistency_flag():
    pr = prof(D0=1.5)
    r = T.classical_capacity(pr, ResourceTriple(1, 0, F(1, 2)))
    assert r.lower == F(3, 2)
    assert r.upper == F(4, 3)
    assert not r.consistent


def test_classical_with_sampled_function_is_exact():
    pr = rich(C_x0p=[[0, 1], [0.7, 1.7]])
    for p in (0, F(1, 5), F(7, 10), 2):
        base = T.classical_capacity(pr, ResourceTriple(0, 0, p)).value
        for y in (F(1, 3), 2, F(7, 2)):
            assert T.classical_capacity(pr, ResourceTriple(0, y, p)).value - base == y


# -------------------------------------------------------------- distillability


def test_distillability_examples():
    pr = rich()
    assert T.distillability(pr, ResourceTriple(0, 3, 0)).value == pr.Q
    assert T.distillability(pr, ResourceTriple(0, 3, 0)).tag == "D12"
    r = T.distillability(pr, ResourceTriple(INF, INF, 0))
    assert r.value == pr.Q_xy0 and r.tag == "qudue"
    r = T.distillability(pr, ResourceTriple(1, 1, 0))
    assert r.value is None and r.lower == pr.Q_xy0 and r.upper == INF


def test_distillability_shift_by_p():
    pr = rich()
    for x, y in ((0, 1), (1, INF), (1, 1)):
        for p in (F(1, 3), F(2)):
            a = T.distillability(pr, ResourceTriple(x, y, p))
            b = T.distillability(pr, ResourceTriple(x, y, 0))
            assert a.lower - b.lower == p
            if a.value is not None:
                assert a.value - b.value == p


# ----------------------------------------------------------------------- sweep


def test_sweep_bowen_two_piece():
    pr = rich(bowen_conjecture=True, D0=0.5)
    curve = T.sweep(pr, "p", ResourceTriple(0, 0, 0), 0, 2, 21)
    for s in curve.samples:
        expected = min(s.coord + pr.Q, pr.Q_E)
        assert s.lower == s.upper == s.exact == expected
    assert T.check_concavity(curve, "exact").ok


def test_sweep_saturates_beyond_eq():
    curve = T.sweep(rich(D0=0.5), "p", ResourceTriple(0, 0, 0), 0, 2, 21)
    for s in curve.samples:
        if s.coord >= F(7, 10):
            assert s.lower == s.upper == F(6, 5)


def test_sweep_y_axis_unassisted_is_q():
    curve = T.sweep(rich(), "y", ResourceTriple(0, 0, 0), 0, 5, 11)
    assert all(s.exact == F(1, 2) for s in curve.samples)


def test_sweep_y_to_infinity():
    curve = T.sweep(rich(), "y", ResourceTriple(0, 0, F(3, 10)), 0, "inf", 6)
    last = curve.samples[-1]
    assert last.coord == INF and last.exact == F(4, 5)
    assert len(curve.samples) == 6


def test_sweep_bounds_only_mode():
    curve = T.sweep(rich(), "p", ResourceTriple(0, 1, 0), 0, 2, 5, use_exact=False)
    assert all(s.exact is None for s in curve.samples)


def test_sweep_rejects_bad_ranges():
    with pytest.raises(ValueError):
        T.sweep(rich(), "p", ResourceTriple(), 1, 0, 5)
    with pytest.raises(ValueError):
        T.sweep(rich(), "p", ResourceTriple(), 0, 1, 1)
    with pytest.raises(ValueError):
        T.sweep(rich(), "z", ResourceTriple(), 0, 1, 3)


def test_sweep_infeasible_reports_tags():
    # D(x,y,0) = 1 with Q(x,y,0) = 0.5 caps the p slope at 1/2 while the
    # chord from Q(x,y,0) to saturation climbs faster
    with pytest.raises(InfeasibleProfile) as exc:
        T.sweep(rich(D0=2), "p", ResourceTriple(1, 1, 0), 0, 3, 31)
    assert exc.value.lower_tag and exc.value.upper_tag


def test_sweep_curve_invariants():
    for fixed in (ResourceTriple(0, 1, 0), ResourceTriple(0, F(1, 2), 0)):
        curve = T.sweep(rich(), "p", fixed, 0, 3, 31)
        assert T.curve_problems(curve) == []
        assert T.check_concavity(curve, "lower").ok


def test_concave_envelope():
    pts = [(F(0), F(0)), (F(1), F(0)), (F(2), F(2)), (F(3), F(2))]
    assert T.concave_envelope(pts) == [(F(0), F(0)), (F(2), F(2)), (F(3), F(2))]
    assert T.concave_envelope([(F(1), F(1))]) == [(F(1), F(1))]


def _curve(values):
    return T.BoundCurve(
        "p", tuple(T.Sample(F(i), F(v), F(v), F(v), "a", "b") for i, v in enumerate(values))
    )


def test_check_concavity_examples():
    assert T.check_concavity(_curve([0, 1, 2, 3])).ok
    assert T.check_concavity(_curve([0, 1, 2, 2, 2])).ok
    bad = T.check_concavity(_curve([0, 0, 0, 1, 2]))
    assert not bad.ok and bad.index == 2
    with pytest.raises(ValueError):
        T.check_concavity(_curve([0, 1]))


def test_transitions():
    curve = T.sweep(rich(), "p", ResourceTriple(0, 1, 0), 0, 3, 31)
    ups = [(t.from_tag, t.to_tag) for t in curve.transitions("upper")]
    assert ("Q2", "Q3") in ups
