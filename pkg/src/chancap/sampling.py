"""Seeded random states and channels for randomized checks."""
import numpy as np

from .channels import QuantumChannel


def _ginibre(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    return rng.normal(size=(rows, cols)) + 1j * rng.normal(size=(rows, cols))


def random_density(dim: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    g = _ginibre(rng, dim, rank or dim)
    rho = g @ g.conj().T
    rho /= np.trace(rho).real
    return 0.5 * (rho + rho.conj().T)


def random_pure(dim: int, rng: np.random.Generator) -> np.ndarray:
    v = _ginibre(rng, dim, 1)[:, 0]
    v /= np.linalg.norm(v)
    return np.outer(v, v.conj())


def random_hermitian(dim: int, rng: np.random.Generator) -> np.ndarray:
    g = _ginibre(rng, dim, dim)
    return 0.5 * (g + g.conj().T)


def random_channel(d_in: int, rng: np.random.Generator, d_out: int | None = None, n_kraus: int = 2) -> QuantumChannel:
    """Kraus family cut from a Haar-like random isometry (QR of a Ginibre matrix)."""
    d_out = d_out or d_in
    if d_out * n_kraus < d_in:
        raise ValueError(f"{n_kraus} Kraus operators of shape {d_out}x{d_in} cannot be trace preserving")
    q, r = np.linalg.qr(_ginibre(rng, d_out * n_kraus, d_in))
    q = q * (np.diag(r) / np.abs(np.diag(r)))
    return QuantumChannel(q.reshape(n_kraus, d_out, d_in), f"random({d_in}->{d_out},k={n_kraus})")
