import numpy as np
import pytest

from chancap import channels as C
from chancap import optimize as O
from chancap import sampling
from chancap.errors import DegenerateFactor, DimensionOverflow

import oracles

AMP = C.standard_channel("amplitude_damping", 2, 0.3)


def test_parameterize_state():
    eye = np.eye(2, dtype=complex)
    p = np.concatenate([eye.real.ravel(), eye.imag.ravel()])
    assert np.allclose(O.parameterize_state(p, 2), np.eye(2) / 2)
    a = np.zeros((2, 2), dtype=complex)
    a[:, 0] = [1, 1j]
    rho = O.parameterize_state(np.concatenate([a.real.ravel(), a.imag.ravel()]), 2)
    assert np.linalg.matrix_rank(rho, tol=1e-12) == 1
    with pytest.raises(DegenerateFactor):
        O.parameterize_state(np.zeros(8), 2)
    with pytest.raises(ValueError):
        O.parameterize_state(np.ones(5), 2)


def test_parameterize_state_round_trip(rng):
    for _ in range(5):
        rho = O.parameterize_state(rng.normal(size=18), 3)
        assert np.allclose(rho, rho.conj().T)
        assert abs(np.trace(rho) - 1) < 1e-12
        assert np.linalg.eigvalsh(rho).min() > -1e-12
        back = O.parameterize_state(O.state_to_params(rho), 3)
        assert np.allclose(back, rho, atol=1e-12)


def test_config_validation():
    with pytest.raises(ValueError):
        O.OptimizerConfig(restarts=0)
    with pytest.raises(ValueError):
        O.OptimizerConfig(tol=0)


def test_coherent_identity():
    est = O.maximize_coherent_information(C.identity(2))
    assert est.value == pytest.approx(1.0, abs=1e-6)
    assert est.objective == "coherent" and est.n_uses == 1
    assert est.converged_restarts == est.restarts == 16
    assert np.allclose(est.argmax_state, np.eye(2) / 2, atol=1e-4)


def test_coherent_dephasing_is_zero():
    assert O.maximize_coherent_information(C.complete_dephasing(2)).value == pytest.approx(0, abs=1e-6)


def test_coherent_dephasing_qutrit_is_zero():
    assert O.maximize_coherent_information(C.complete_dephasing(3)).value == pytest.approx(0, abs=1e-6)


def test_coherent_amplitude_damping_oracle():
    q, _ = oracles.amplitude_damping_diag(0.3)
    est = O.maximize_coherent_information(AMP)
    assert est.value == pytest.approx(oracles.AMP_DAMP_03_Q1, abs=1e-6)
    assert est.value >= q - 1e-9
    assert est.grad_norm <= 1e-4 or est.on_boundary


def test_qmi_examples():
    assert O.maximize_qmi(C.identity(2)).value == pytest.approx(2.0, abs=1e-6)
    dep = C.standard_channel("depolarizing", 2, 1.0)
    assert O.maximize_qmi(dep).value == pytest.approx(0.0, abs=1e-6)
    est = O.maximize_qmi(C.standard_channel("depolarizing", 2, 0.2))
    assert est.value == pytest.approx(oracles.DEPOL_02_QMI, abs=1e-6)


@pytest.mark.parametrize(
    "ch",
    [C.identity(2), C.complete_dephasing(2), C.standard_channel("erasure", 2, 0.5), AMP],
    ids=lambda c: c.label,
)
def test_qmi_restarts_agree(ch):
    est = O.maximize_qmi(ch)
    assert est.restarts_agree
    assert max(est.restart_values) - min(est.restart_values) <= 10 * O.OptimizerConfig().tol


def test_qmi_amplitude_damping_oracle():
    est = O.maximize_qmi(AMP)
    assert est.value == pytest.approx(oracles.AMP_DAMP_03_QMI, abs=1e-6)
    assert est.grad_norm <= 1e-4


def test_holevo_examples():
    assert O.maximize_holevo(C.identity(2), 2).value == pytest.approx(1.0, abs=1e-5)
    assert O.maximize_holevo(C.complete_dephasing(2), 2).value == pytest.approx(1.0, abs=1e-5)
    assert O.maximize_holevo(C.standard_channel("dephasing", 2, 0.5)).value == pytest.approx(1.0, abs=1e-4)
    with pytest.raises(ValueError):
        O.maximize_holevo(C.identity(2), 1)


def test_holevo_ensemble_is_reported():
    est = O.maximize_holevo(C.identity(2), 2)
    probs = [p for p, _ in est.ensemble]
    assert len(est.ensemble) == 2 and sum(probs) == pytest.approx(1.0)


def test_coherent_not_above_qmi():
    rng = np.random.default_rng(5)
    for _ in range(3):
        ch = sampling.random_channel(2, rng, n_kraus=2)
        cfg = O.OptimizerConfig(restarts=4)
        assert O.maximize_coherent_information(ch, 1, cfg).value <= O.maximize_qmi(ch, cfg).value + 1e-9


def test_determinism():
    cfg = O.OptimizerConfig(restarts=4, seed=7)
    a = O.maximize_coherent_information(AMP, 1, cfg)
    b = O.maximize_coherent_information(AMP, 1, cfg)
    assert a.value == b.value and np.array_equal(a.argmax_state, b.argmax_state)
    assert a.restart_values == b.restart_values


def test_value_within_range():
    for ch in (C.identity(2), C.standard_channel("erasure", 2, 0.9)):
        est = O.maximize_coherent_information(ch, 1, O.OptimizerConfig(restarts=3))
        assert -1 - 1e-12 <= est.value <= 2 + 1e-12


def test_non_convergence_is_not_an_error():
    est = O.maximize_qmi(AMP, O.OptimizerConfig(restarts=3, max_iters=2))
    assert est.converged_restarts < est.restarts
    assert np.isfinite(est.value)


def test_multi_use_monotone():
    for ch in (AMP, C.standard_channel("depolarizing", 2, 0.1)):
        bound = O.estimate_quantum_capacity(ch, n_max=2)
        one, two = bound.per_n
        assert two.value >= one.value - 1e-5
        assert bound.value == max(one.value, two.value)
        assert two.n_uses == 2


def test_multi_use_overflow(monkeypatch):
    monkeypatch.setenv("CHANCAP_MAX_DIM", "4")
    with pytest.raises(DimensionOverflow):
        O.maximize_coherent_information(C.identity(2), 3)


def test_boundary_flag():
    # the maximally mixed input is optimal and interior for the identity;
    # for a pure-state optimum the flag must be raised instead
    assert not O.maximize_coherent_information(C.identity(2)).on_boundary
    # above eps = 1/2 erasure has (1 - 2 eps) S(rho) < 0, maximised by pure inputs
    est = O.maximize_coherent_information(C.standard_channel("erasure", 2, 0.9))
    assert est.on_boundary
    assert est.value == pytest.approx(0.0, abs=1e-6)
