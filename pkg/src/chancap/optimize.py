"""Maximise entropic functionals over channel inputs.

States are parameterised by an unconstrained square factor (rho = A A^dag /
Tr A A^dag) and climbed with central finite-difference gradients and an
adaptive step.  Every value returned is an achieved value, so it is a lower
bound on the true maximum.
"""
import logging
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _backend, numerics
from .channels import QuantumChannel, tensor_power
from .errors import DegenerateFactor, DimensionMismatch
from .numerics import check_density, check_dim

log = logging.getLogger(__name__)

COHERENT, QMI, HOLEVO = 0, 1, 2
_KIND_NAMES = {COHERENT: "coherent", QMI: "qmi", HOLEVO: "holevo"}

STEP_FLOOR = 1e-12
PATIENCE = 5
ARMIJO = 1e-4
PURE_JITTER = 1e-4
BOUNDARY_EIG = 1e-6


@dataclass(frozen=True)
class OptimizerConfig:
    restarts: int = 16
    max_iters: int = 2000
    step_init: float = 0.1
    grad_eps: float = 1e-6
    tol: float = 1e-7
    seed: int = 0

    def __post_init__(self):
        if self.restarts < 1 or self.max_iters < 1:
            raise ValueError("restarts and max_iters must be at least 1")
        if min(self.step_init, self.grad_eps, self.tol) <= 0:
            raise ValueError("step_init, grad_eps and tol must be positive")


@dataclass(frozen=True)
class CapacityEstimate:
    """Best value found, in dits per channel use."""

    value: float
    argmax_state: np.ndarray
    n_uses: int
    converged_restarts: int
    objective: str
    restarts: int
    restart_values: tuple
    grad_norm: float
    on_boundary: bool
    restarts_agree: bool | None = None
    base_dim: int = 2
    ensemble: tuple = ()


def parameterize_state(params, dim: int) -> np.ndarray:
    p = np.asarray(params, dtype=float).ravel()
    if p.size != 2 * dim * dim:
        raise DimensionMismatch(f"expected {2 * dim * dim} parameters for dim {dim}, got {p.size}")
    n2 = dim * dim
    a = (p[:n2] + 1j * p[n2:]).reshape(dim, dim)
    rho = a @ a.conj().T
    tr = np.trace(rho).real
    if tr < 1e-12:
        raise DegenerateFactor(f"Tr(A A^dag) = {tr:.3e} is too small to normalise")
    rho = rho / tr
    return 0.5 * (rho + rho.conj().T)


def _factor_to_params(a: np.ndarray) -> np.ndarray:
    return np.concatenate([a.real.ravel(), a.imag.ravel()])


def state_to_params(rho) -> np.ndarray:
    """Parameters whose factor is the Hermitian square root of ``rho``."""
    rho = check_density(rho)
    eig = numerics.hermitian_eig(rho)
    lam = np.sqrt(np.clip(eig.eigenvalues, 0.0, None))
    v = eig.eigenvectors
    return _factor_to_params((v * lam) @ v.conj().T)


def _normalise(kind: int, x: np.ndarray, dim: int, m: int) -> np.ndarray:
    if kind != HOLEVO:
        return x / np.linalg.norm(x)
    x = x.copy()
    vecs = x[: m * 2 * dim].reshape(m, 2 * dim)
    vecs /= np.linalg.norm(vecs, axis=1, keepdims=True)
    x[m * 2 * dim :] -= x[m * 2 * dim :].mean()
    return x


def _ascend(kind, x0, kraus, dim, m, scale, cfg: OptimizerConfig):
    k = _backend.kernels
    x = _normalise(kind, np.asarray(x0, dtype=float), dim, m)
    f = k.objective(kind, x, kraus, dim, m, scale)
    g = k.gradient(kind, x, kraus, dim, m, cfg.grad_eps, scale)
    step = cfg.step_init
    small = 0
    for _ in range(cfg.max_iters):
        trial = _normalise(kind, x + step * g, dim, m)
        ft = k.objective(kind, trial, kraus, dim, m, scale)
        # sufficient increase keeps the walk from bouncing across a valley
        if ft > f + ARMIJO * step * float(g @ g):
            gain = ft - f
            x, f = trial, ft
            step *= 2.0
            # a lone small gain is often a slow stretch, not the optimum
            small = small + 1 if gain < cfg.tol else 0
            if small >= PATIENCE:
                return x, f, True
            g = k.gradient(kind, x, kraus, dim, m, cfg.grad_eps, scale)
        else:
            step *= 0.5
            if step < STEP_FLOOR:
                return x, f, True
    return x, f, False


def _gaussian(rng, size):
    return rng.normal(size=size)


def _state_starts(dim: int, cfg: OptimizerConfig, initial_states: Sequence) -> list:
    rng = np.random.default_rng(cfg.seed)
    starts = [_factor_to_params(np.eye(dim, dtype=complex))]
    if cfg.restarts > 1:
        a = PURE_JITTER * (rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim)))
        a[:, 0] = rng.normal(size=dim) + 1j * rng.normal(size=dim)
        starts.append(_factor_to_params(a))
    while len(starts) < cfg.restarts:
        starts.append(_gaussian(rng, 2 * dim * dim))
    starts.extend(state_to_params(s) for s in initial_states)
    return starts


def _ensemble_starts(dim: int, m: int, cfg: OptimizerConfig) -> list:
    rng = np.random.default_rng(cfg.seed)
    basis = np.zeros((m, 2, dim))
    for i in range(m):
        basis[i, 0, i % dim] = 1.0
    starts = [np.concatenate([basis.ravel(), np.zeros(m)])]
    if cfg.restarts > 1:
        starts.append(np.concatenate([rng.normal(size=m * 2 * dim), np.zeros(m)]))
    while len(starts) < cfg.restarts:
        starts.append(rng.normal(size=m * 2 * dim + m))
    return starts


def _run(kind, kraus, dim, m, base_dim, starts, cfg):
    scale = 1.0 / math.log(base_dim)
    results = [_ascend(kind, s, kraus, dim, m, scale, cfg) for s in starts]
    values = [r[1] for r in results]
    # deterministic reduction: highest value, lowest restart index on ties
    best = max(range(len(results)), key=lambda i: (values[i], -i))
    x, f, _ = results[best]
    g = _backend.kernels.gradient(kind, x, kraus, dim, m, cfg.grad_eps, scale)
    converged = sum(1 for r in results if r[2])
    return x, f, float(np.linalg.norm(g)), converged, values


def _prepare(ch: QuantumChannel, n: int):
    check_dim(ch.d_in**n, ch.d_out**n)
    chn = tensor_power(ch, n)
    return chn, np.ascontiguousarray(chn.kraus)


def _state_estimate(kind, ch, n, cfg, base_dim, initial_states):
    cfg = cfg or OptimizerConfig()
    base = base_dim or ch.d_in
    chn, kraus = _prepare(ch, n)
    dim = chn.d_in
    starts = _state_starts(dim, cfg, initial_states)
    x, f, gnorm, conv, values = _run(kind, kraus, dim, 0, base, starts, cfg)
    rho = parameterize_state(x, dim)
    lam_min = numerics.eigvalsh(rho)[-1]
    agree = None
    if kind == QMI:
        ok = [v for v, s in zip(values, starts) if np.isfinite(v)]
        agree = bool(max(ok) - min(ok) <= 10 * cfg.tol)
    return CapacityEstimate(
        value=float(f / n),
        argmax_state=rho,
        n_uses=n,
        converged_restarts=conv,
        objective=_KIND_NAMES[kind],
        restarts=len(starts),
        restart_values=tuple(float(v / n) for v in values),
        grad_norm=gnorm,
        on_boundary=bool(lam_min < BOUNDARY_EIG),
        restarts_agree=agree,
        base_dim=base,
    )


def maximize_coherent_information(
    ch: QuantumChannel,
    n: int = 1,
    cfg: OptimizerConfig | None = None,
    base_dim: int | None = None,
    initial_states: Sequence = (),
) -> CapacityEstimate:
    """Best coherent information of ch^(x)n found, divided by n.

    ``initial_states`` are extra restarts (density matrices on the n-use
    input space) appended after the configured ones.
    """
    return _state_estimate(COHERENT, ch, n, cfg, base_dim, initial_states)


def maximize_qmi(
    ch: QuantumChannel, cfg: OptimizerConfig | None = None, base_dim: int | None = None
) -> CapacityEstimate:
    """Maximum quantum mutual information.  The objective is concave, so
    ``restarts_agree`` is False only when the ascent under-converged."""
    return _state_estimate(QMI, ch, 1, cfg, base_dim, ())


def maximize_holevo(
    ch: QuantumChannel,
    ensemble_size: int | None = None,
    cfg: OptimizerConfig | None = None,
    base_dim: int | None = None,
) -> CapacityEstimate:
    cfg = cfg or OptimizerConfig()
    m = ensemble_size or ch.d_in**2
    if m < 2:
        raise ValueError("ensemble_size must be at least 2")
    base = base_dim or ch.d_in
    _, kraus = _prepare(ch, 1)
    dim = ch.d_in
    starts = _ensemble_starts(dim, m, cfg)
    x, f, gnorm, conv, values = _run(HOLEVO, kraus, dim, m, base, starts, cfg)
    probs, members = _decode_ensemble(x, dim, m)
    avg = sum(p * r for p, r in zip(probs, members))
    return CapacityEstimate(
        value=float(f),
        argmax_state=0.5 * (avg + avg.conj().T),
        n_uses=1,
        converged_restarts=conv,
        objective="holevo",
        restarts=len(starts),
        restart_values=tuple(float(v) for v in values),
        grad_norm=gnorm,
        on_boundary=bool(min(probs) < BOUNDARY_EIG),
        base_dim=base,
        ensemble=tuple(zip((float(p) for p in probs), members)),
    )


def _decode_ensemble(x: np.ndarray, dim: int, m: int):
    vec = x[: m * 2 * dim].reshape(m, 2, dim)
    psi = vec[:, 0] + 1j * vec[:, 1]
    psi /= np.linalg.norm(psi, axis=1, keepdims=True)
    logits = x[m * 2 * dim :]
    e = np.exp(logits - logits.max())
    probs = e / e.sum()
    return probs, [np.outer(v, v.conj()) for v in psi]


@dataclass(frozen=True)
class QuantumCapacityBound:
    """max over n <= n_max of Q_n / n; a lower bound on Q."""

    value: float
    best_n: int
    per_n: tuple


def estimate_quantum_capacity(
    ch: QuantumChannel, n_max: int = 2, cfg: OptimizerConfig | None = None, base_dim: int | None = None
) -> QuantumCapacityBound:
    """Each n > 1 run is seeded with the n = 1 optimum tensored n times."""
    first = maximize_coherent_information(ch, 1, cfg, base_dim)
    per_n = [first]
    for n in range(2, n_max + 1):
        seed = first.argmax_state
        for _ in range(n - 1):
            seed = np.kron(seed, first.argmax_state)
        per_n.append(maximize_coherent_information(ch, n, cfg, base_dim, initial_states=[seed]))
    best = max(range(len(per_n)), key=lambda i: (per_n[i].value, -i))
    return QuantumCapacityBound(per_n[best].value, best + 1, tuple(per_n))
