"""Dense Hermitian linear algebra and entropies measured in dits.

All entropies take the logarithm base explicitly (``base_dim``); internally
natural logs are used and rescaled once at the end.
"""
import math
import os
from typing import NamedTuple, Sequence

import numpy as np

from . import _backend
from .errors import (
    DimensionMismatch,
    DimensionOverflow,
    InvalidDistribution,
    InvalidState,
    NonConvergence,
    NonHermitian,
)

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-9
EIG_FLOOR = -1e-9
TIE_TOL = 1e-12
DEFAULT_MAX_DIM = 4096


def max_dim() -> int:
    """Dimension cap; ``CHANCAP_MAX_DIM`` overrides the default of 4096."""
    raw = os.environ.get("CHANCAP_MAX_DIM")
    if raw is None:
        return DEFAULT_MAX_DIM
    value = int(raw)
    if value < 1:
        raise ValueError("CHANCAP_MAX_DIM must be a positive integer")
    return value


def check_dim(*dims: int) -> None:
    cap = max_dim()
    for d in dims:
        if d > cap:
            raise DimensionOverflow(f"dimension {d} exceeds cap {cap}")


class Spectrum(NamedTuple):
    eigenvalues: np.ndarray  # descending
    eigenvectors: np.ndarray  # columns


def as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise DimensionMismatch(f"expected a non-empty 2-d matrix, got shape {a.shape}")
    return a


def _check_hermitian(a: np.ndarray) -> None:
    if a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"matrix is not square: {a.shape}")
    dev = np.max(np.abs(a - a.conj().T)) if a.size else 0.0
    if dev > HERMITIAN_TOL:
        raise NonHermitian(f"max |M - M^dag| = {dev:.3e} exceeds {HERMITIAN_TOL}")


def _canonical_order(w: np.ndarray, v: np.ndarray):
    # Fix each eigenvector's phase (largest entry real positive), then sort by
    # descending eigenvalue with a lexicographic tie-break on the entries.
    v = v.copy()
    for j in range(v.shape[1]):
        col = v[:, j]
        k = int(np.argmax(np.abs(col) - 1e-12 * np.arange(col.size)))
        if abs(col[k]) > 0:
            v[:, j] = col * (abs(col[k]) / col[k])
    order = sorted(range(w.size), key=lambda j: -w[j])
    # group near-equal eigenvalues and sort each group lexicographically
    out, i = [], 0
    while i < len(order):
        j = i + 1
        while j < len(order) and abs(w[order[i]] - w[order[j]]) <= TIE_TOL:
            j += 1
        group = order[i:j]
        if len(group) > 1:
            group.sort(key=lambda c: tuple(np.round(np.column_stack([v[:, c].real, v[:, c].imag]).ravel(), 12)))
        out.extend(group)
        i = j
    idx = np.array(out, dtype=int)
    return w[idx], v[:, idx]


def hermitian_eig(m) -> Spectrum:
    """Full eigendecomposition of a Hermitian matrix, eigenvalues descending.

    Degenerate eigenvalues (within 1e-12) are ordered lexicographically by
    eigenvector entries after phase fixing, so the result is reproducible.
    """
    a = as_matrix(m)
    _check_hermitian(a)
    w, v, ok = _backend.kernels.eigh(0.5 * (a + a.conj().T))
    if not ok:
        raise NonConvergence("Hermitian eigensolver hit its iteration cap")
    w, v = _canonical_order(np.asarray(w, dtype=float), np.asarray(v, dtype=np.complex128))
    return Spectrum(w, v)


def eigvalsh(m) -> np.ndarray:
    """Eigenvalues only, descending."""
    a = as_matrix(m)
    _check_hermitian(a)
    w, ok = _backend.kernels.eigvalsh(0.5 * (a + a.conj().T))
    if not ok:
        raise NonConvergence("Hermitian eigensolver hit its iteration cap")
    return np.sort(np.asarray(w, dtype=float))[::-1]


def tensor_product(a, b) -> np.ndarray:
    a = as_matrix(a)
    b = as_matrix(b)
    check_dim(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1])
    return np.kron(a, b)


def partial_trace(m, dims: Sequence[int], keep) -> np.ndarray:
    """Reduce a square matrix on ``prod(dims)`` to the factors listed in ``keep``."""
    a = as_matrix(m)
    dims = [int(d) for d in dims]
    if any(d < 1 for d in dims) or math.prod(dims) != a.shape[0] or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"dims {dims} do not factor a {a.shape} matrix")
    keep = sorted(set(int(k) for k in keep))
    if not keep or keep[0] < 0 or keep[-1] >= len(dims):
        raise DimensionMismatch(f"keep {keep} is not a nonempty subset of factor indices")
    n = len(dims)
    t = a.reshape(dims + dims)
    letters = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
    if 2 * n > len(letters):
        raise DimensionMismatch("too many tensor factors")
    rows = list(letters[:n])
    cols = list(letters[n : 2 * n])
    for i in range(n):
        if i not in keep:
            cols[i] = rows[i]
    out = "".join(rows[i] for i in keep) + "".join(cols[i] for i in keep)
    r = np.einsum("".join(rows) + "".join(cols) + "->" + out, t)
    d = math.prod(dims[i] for i in keep)
    return r.reshape(d, d)


def check_density(rho, tol: float = TRACE_TOL) -> np.ndarray:
    """Validate a density matrix and return it as a complex array."""
    a = as_matrix(rho)
    try:
        _check_hermitian(a)
    except NonHermitian as exc:
        raise InvalidState(str(exc)) from exc
    tr = np.trace(a).real
    if abs(tr - 1.0) > tol:
        raise InvalidState(f"trace {tr!r} deviates from 1 by more than {tol}")
    w = eigvalsh(a)
    if w[-1] < EIG_FLOOR:
        raise InvalidState(f"minimum eigenvalue {w[-1]:.3e} below {EIG_FLOOR}")
    return a


def _entropy_from_eigs(w: np.ndarray, base_dim: int) -> float:
    if base_dim < 2:
        raise ValueError("base_dim must be at least 2")
    w = np.where(w < 0.0, 0.0, w)
    nz = w[w > 0.0]
    # eigenvalues a hair above 1 would otherwise give -1e-13 and the like
    return max(0.0, float(-np.sum(nz * np.log(nz)) / math.log(base_dim)))


def von_neumann_entropy(rho, base_dim: int) -> float:
    """S(rho) = -Tr rho log_d rho, with eigenvalues in [-1e-9, 0] clipped."""
    a = as_matrix(rho)
    _check_hermitian(a)
    w = eigvalsh(a)
    tr = float(np.sum(w))
    if abs(tr - 1.0) > TRACE_TOL:
        raise InvalidState(f"trace {tr!r} deviates from 1")
    if w[-1] < EIG_FLOOR:
        raise InvalidState(f"minimum eigenvalue {w[-1]:.3e} below {EIG_FLOOR}")
    return _entropy_from_eigs(w, base_dim)


def matrix_entropy(m, base_dim: int) -> float:
    # Entropy of a PSD matrix that need not be normalised (used for the
    # exchange matrix, whose trace equals Tr rho only up to rounding).
    a = as_matrix(m)
    _check_hermitian(a)
    w = eigvalsh(a)
    if w.size and w[-1] < EIG_FLOOR:
        raise InvalidState(f"minimum eigenvalue {w[-1]:.3e} below {EIG_FLOOR}")
    return _entropy_from_eigs(w, base_dim)


def shannon_entropy(probs, base_dim: int) -> float:
    p = np.asarray(probs, dtype=float).ravel()
    if p.size == 0 or np.any(p < -1e-12) or abs(p.sum() - 1.0) > TRACE_TOL:
        raise InvalidDistribution(f"not a probability vector: {p}")
    return _entropy_from_eigs(np.clip(p, 0.0, None), base_dim)
