"""Property checks over random inputs drawn by hypothesis."""
from fractions import Fraction as F

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from chancap import channels as C
from chancap import information as I
from chancap import numerics, sampling, tradeoff
from chancap.suites import random_profile
from chancap.tradeoff import ResourceTriple

seeds = st.integers(0, 2**32 - 1)
dims = st.integers(2, 4)
small = st.fractions(min_value=0, max_value=3, max_denominator=20)


@given(seeds, dims)
def test_entropy_within_range(seed, d):
    rho = sampling.random_density(d, np.random.default_rng(seed))
    s = numerics.von_neumann_entropy(rho, d)
    assert -1e-12 <= s <= 1 + 1e-12


@given(seeds, dims)
def test_channel_output_is_a_state(seed, d):
    rng = np.random.default_rng(seed)
    ch = sampling.random_channel(d, rng, n_kraus=int(rng.integers(1, 4)))
    out = C.apply(ch, sampling.random_density(d, rng))
    assert abs(np.trace(out) - 1) < 1e-10
    assert np.allclose(out, out.conj().T, atol=1e-12)
    assert np.linalg.eigvalsh(out).min() > -1e-10


@given(seeds)
def test_coherent_information_bounds(seed):
    # -S(rho) <= I_c <= S(rho) for any channel
    rng = np.random.default_rng(seed)
    ch = sampling.random_channel(2, rng, n_kraus=int(rng.integers(1, 5)))
    rho = sampling.random_density(2, rng)
    s = numerics.von_neumann_entropy(rho, 2)
    ic = I.coherent_information(ch, rho, 2)
    assert -s - 1e-9 <= ic <= s + 1e-9
    assert ic <= I.quantum_mutual_information(ch, rho, 2) + 1e-9


@given(seeds)
def test_qmi_bounded_by_twice_input_entropy(seed):
    rng = np.random.default_rng(seed)
    ch = sampling.random_channel(3, rng, n_kraus=2)
    rho = sampling.random_density(3, rng)
    qmi = I.quantum_mutual_information(ch, rho, 3)
    assert -1e-9 <= qmi <= 2 * numerics.von_neumann_entropy(rho, 3) + 1e-9


@given(seeds, st.integers(2, 3))
def test_dual_route_entropy_exchange(seed, d):
    rng = np.random.default_rng(seed)
    ch = sampling.random_channel(d, rng, n_kraus=int(rng.integers(1, 4)))
    rho = sampling.random_density(d, rng)
    assert abs(C.entropy_exchange(ch, rho, d) - C.entropy_exchange_purified(ch, rho, d)) < 1e-8


@given(seeds)
def test_decomposition_identity_holds(seed):
    rng = np.random.default_rng(seed)
    m = sampling.random_channel(2, rng, n_kraus=2)
    assert I.decomposition_identity_check(m, 2, sampling.random_density(4, rng), 1, base_dim=2).holds


def profiles(bowen=False):
    return seeds.map(lambda s: random_profile(np.random.default_rng(s), bowen))


@given(profiles(), small, small)
def test_random_profiles_are_consistent_and_ordered(pr, y, p):
    assert tradeoff.validate_profile(pr, ResourceTriple(0, y, p)) == []
    t = ResourceTriple(0, y, p)
    lo, _ = tradeoff.quantum_lower(pr, t)
    up, _ = tradeoff.quantum_upper(pr, t)
    assert lo <= up + tradeoff.TOL
    ex = tradeoff.quantum_exact(pr, t)
    if ex is not None:
        assert lo - tradeoff.TOL <= ex[0] <= up + tradeoff.TOL


@given(profiles(), small, small, small)
def test_distillability_shift_identity(pr, x, y, p):
    a = tradeoff.distillability(pr, ResourceTriple(x, y, p))
    b = tradeoff.distillability(pr, ResourceTriple(x, y, 0))
    assert a.lower - b.lower == p


@given(profiles(), small, small)
def test_classical_shift_identity_with_sampled_data(pr, y, p):
    pr = pr.with_(C_x0p=tradeoff.SampledFunction(((0, pr.C), (pr.E_C, pr.C_E))))
    a = tradeoff.classical_capacity(pr, ResourceTriple(0, y, p)).value
    b = tradeoff.classical_capacity(pr, ResourceTriple(0, 0, p)).value
    assert a - b == y


@given(profiles(bowen=True))
def test_bowen_sweep_is_two_piece(pr):
    curve = tradeoff.sweep(pr, "p", ResourceTriple(0, 0, 0), 0, 3, 13)
    for s in curve.samples:
        assert s.exact == min(s.coord + pr.Q, pr.Q_E)


@given(profiles(), st.sampled_from(["p", "y"]), st.fractions(0, 2, max_denominator=4))
def test_sweeps_are_concave_and_well_formed(pr, axis, fixed_val):
    fixed = ResourceTriple(0, fixed_val, 0) if axis == "p" else ResourceTriple(0, 0, fixed_val)
    curve = tradeoff.sweep(pr, axis, fixed, 0, 4, 17)
    assert tradeoff.curve_problems(curve) == []
    assert tradeoff.check_concavity(curve, "lower").ok


@given(st.lists(st.tuples(small, small), min_size=1, max_size=12))
def test_concave_envelope_dominates(points):
    env = tradeoff.concave_envelope(points)
    for x, v in points:
        assert tradeoff._hull_value(env, x) >= v
    xs = [x for x, _ in env]
    assert xs == sorted(set(xs))


@given(small, small)
def test_exact_round_trip(a, b):
    assert tradeoff.exact(str(a)) == a
    assert tradeoff._add(a, b) == a + b
    assert tradeoff.exact(float(a)) == F(repr(float(a)))
