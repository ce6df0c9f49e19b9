"""Entropic functionals of a channel and an input, and the dephased-register
decomposition of the coherent information."""
import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import numerics
from .channels import (
    QuantumChannel,
    _exchange_matrix,
    apply,
    extend_with_dephasing,
    tensor_power,
)
from .errors import DimensionMismatch, InvalidDistribution
from .numerics import check_density, check_dim

WEIGHT_FLOOR = 1e-12
IDENTITY_TOL = 1e-8


def _check_input(ch: QuantumChannel, rho) -> np.ndarray:
    rho = check_density(rho)
    if rho.shape[0] != ch.d_in:
        raise DimensionMismatch(f"state of dimension {rho.shape[0]} fed to channel with d_in={ch.d_in}")
    return rho


def _output_and_exchange(ch: QuantumChannel, rho: np.ndarray, base_dim: int):
    out = apply(ch, rho)
    s_out = numerics.von_neumann_entropy(out, base_dim)
    s_ex = numerics.matrix_entropy(_exchange_matrix(ch, rho), base_dim)
    return s_out, s_ex


def coherent_information(ch: QuantumChannel, rho, base_dim: int) -> float:
    """S(ch(rho)) - S_exchange(ch, rho) in base-``base_dim`` dits."""
    rho = _check_input(ch, rho)
    s_out, s_ex = _output_and_exchange(ch, rho, base_dim)
    return s_out - s_ex


def quantum_mutual_information(ch: QuantumChannel, rho, base_dim: int) -> float:
    rho = _check_input(ch, rho)
    s_out, s_ex = _output_and_exchange(ch, rho, base_dim)
    return numerics.von_neumann_entropy(rho, base_dim) + s_out - s_ex


def holevo_information(ch: QuantumChannel, ensemble: Sequence, base_dim: int) -> float:
    """chi = S(sum p_i ch(rho_i)) - sum p_i S(ch(rho_i)) for ``[(p_i, rho_i), ...]``."""
    if not ensemble:
        raise InvalidDistribution("empty ensemble")
    probs = np.array([float(p) for p, _ in ensemble])
    if np.any(probs < -1e-12) or abs(probs.sum() - 1.0) > numerics.TRACE_TOL:
        raise InvalidDistribution(f"ensemble weights {probs} are not a distribution")
    probs = np.clip(probs, 0.0, None)
    outs = [apply(ch, _check_input(ch, r)) for _, r in ensemble]
    avg = sum(p * o for p, o in zip(probs, outs))
    avg = 0.5 * (avg + avg.conj().T)
    cond = sum(p * numerics.von_neumann_entropy(o, base_dim) for p, o in zip(probs, outs))
    return numerics.von_neumann_entropy(avg / np.trace(avg).real, base_dim) - cond


@dataclass(frozen=True)
class DephasedDecomposition:
    """Weights and normalised conditional states of a register projection.

    ``labels[k]`` is the register multi-index of ``weights[k]``; states with
    weight at or below 1e-12 are replaced by the maximally mixed state.
    """

    weights: np.ndarray
    conditional_states: tuple
    labels: tuple

    def reassemble(self, d: int, delta: int, n: int) -> np.ndarray:
        """sum_w lambda_w rho_w (x) |w><w| in the factor order (H (x) H')^n."""
        dn = d**n
        big = np.zeros((dn * delta**n,) * 2, dtype=np.complex128)
        t = big.reshape((delta**n, dn, delta**n, dn))
        for k, (lam, rho) in enumerate(zip(self.weights, self.conditional_states)):
            if lam > WEIGHT_FLOOR:
                t[k, :, k, :] = lam * rho
        return _register_first_to_interleaved(big, d, delta, n)


def _interleaved_axes(n: int):
    # (H, H') pairs interleaved -> all H' factors first, then all H factors
    sys = [2 * j for j in range(n)]
    reg = [2 * j + 1 for j in range(n)]
    return reg + sys


def _interleaved_to_register_first(m: np.ndarray, d: int, delta: int, n: int) -> np.ndarray:
    shape = [d, delta] * n
    axes = _interleaved_axes(n)
    t = m.reshape(shape + shape).transpose(axes + [2 * n + a for a in axes])
    return t.reshape(delta**n * d**n, delta**n * d**n)


def _register_first_to_interleaved(m: np.ndarray, d: int, delta: int, n: int) -> np.ndarray:
    axes = _interleaved_axes(n)
    inv = list(np.argsort(axes))
    shape = [delta] * n + [d] * n
    t = m.reshape(shape + shape).transpose(inv + [2 * n + a for a in inv])
    return t.reshape(m.shape)


def project_dephased(r, system_dims, n: int) -> DephasedDecomposition:
    """Project every register factor of R on (H (x) H')^n onto |w>.

    Returns lambda_w = Tr<w|R|w> and rho_w = <w|R|w> / lambda_w for each
    multi-index w in lexicographic order.
    """
    d, delta = (int(x) for x in system_dims)
    r = numerics.as_matrix(r)
    if r.shape != ((d * delta) ** n,) * 2:
        raise DimensionMismatch(f"R of shape {r.shape} does not live on ({d}x{delta})^{n}")
    t = _interleaved_to_register_first(r, d, delta, n).reshape(delta**n, d**n, delta**n, d**n)
    weights, states = [], []
    mixed = np.eye(d**n, dtype=np.complex128) / d**n
    for k in range(delta**n):
        block = t[k, :, k, :]
        lam = float(np.trace(block).real)
        weights.append(max(lam, 0.0))
        states.append(block / lam if lam > WEIGHT_FLOOR else mixed)
    labels = tuple(itertools.product(range(delta), repeat=n))
    w = np.array(weights)
    return DephasedDecomposition(w, tuple(states), labels)


@dataclass(frozen=True)
class IdentityCheck:
    lhs: float
    rhs: float
    residual: float
    output_lhs: float
    output_rhs: float
    output_residual: float

    @property
    def holds(self) -> bool:
        return self.residual < IDENTITY_TOL and self.output_residual < IDENTITY_TOL


def decomposition_identity_check(m: QuantumChannel, delta: int, r, n: int, base_dim: int) -> IdentityCheck:
    """Compare the coherent information of (M (x) T)^n at R with the
    lambda-weighted coherent informations of M^n at the projected states.

    Also reports the output-entropy split
    S((M (x) T)^n(R)) = H(lambda) + sum lambda S(M^n(rho_w)).
    """
    d = m.d_in
    check_dim((d * delta) ** n, (m.d_out * delta) ** n)
    r = check_density(r)
    big = tensor_power(extend_with_dephasing(m, delta), n)
    lhs = coherent_information(big, r, base_dim)
    out_lhs = numerics.von_neumann_entropy(apply(big, r), base_dim)

    dec = project_dephased(r, (d, delta), n)
    mn = tensor_power(m, n)
    rhs = 0.0
    out_rhs = numerics.shannon_entropy(dec.weights / dec.weights.sum(), base_dim)
    for lam, rho in zip(dec.weights, dec.conditional_states):
        if lam <= WEIGHT_FLOOR:
            continue
        rho = 0.5 * (rho + rho.conj().T)
        rhs += lam * coherent_information(mn, rho, base_dim)
        out_rhs += lam * numerics.von_neumann_entropy(apply(mn, rho), base_dim)
    vals = (lhs, rhs, abs(lhs - rhs), out_lhs, out_rhs, abs(out_lhs - out_rhs))
    return IdentityCheck(*(float(v) for v in vals))
