"""Quantum channels as Kraus families."""
from dataclasses import dataclass, field
from functools import reduce
from typing import Sequence

import numpy as np

from . import numerics
from .errors import DimensionMismatch, InvalidChannel, InvalidState, UnsupportedDimension
from .numerics import check_density, check_dim

CPT_TOL = 1e-9
PURE_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class QuantumChannel:
    """CPT map rho -> sum_i K_i rho K_i^dag.

    ``kraus`` is stored as a ``(k, d_out, d_in)`` complex array.  Kraus
    operators are not canonicalised; use :func:`channels_equal` to compare
    maps.
    """

    kraus: np.ndarray
    label: str = ""
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        k = np.asarray(self.kraus, dtype=np.complex128)
        if k.ndim == 2:
            k = k[None]
        if k.ndim != 3 or k.shape[0] < 1 or k.shape[1] < 1 or k.shape[2] < 1:
            raise InvalidChannel(f"Kraus family must have shape (k, d_out, d_in), got {k.shape}")
        check_dim(k.shape[1], k.shape[2])
        k = np.ascontiguousarray(k)
        k.setflags(write=False)
        object.__setattr__(self, "kraus", k)
        dev = cpt_deviation(k)
        if dev > CPT_TOL:
            raise InvalidChannel(f"sum K^dag K deviates from identity by {dev:.3e}")

    @property
    def d_in(self) -> int:
        return self.kraus.shape[2]

    @property
    def d_out(self) -> int:
        return self.kraus.shape[1]

    @property
    def n_kraus(self) -> int:
        return self.kraus.shape[0]

    @property
    def square(self) -> bool:
        """True when input and output dimensions agree."""
        return self.d_in == self.d_out

    def __call__(self, rho):
        return apply(self, rho)

    def __repr__(self):
        return f"QuantumChannel({self.label or 'custom'}, d_in={self.d_in}, d_out={self.d_out}, kraus={self.n_kraus})"


@dataclass(frozen=True)
class PureState:
    vec: np.ndarray
    dims: tuple

    def __post_init__(self):
        v = np.asarray(self.vec, dtype=np.complex128).ravel()
        if abs(np.linalg.norm(v) - 1.0) > PURE_TOL:
            raise InvalidState("pure state vector is not normalised")
        if int(np.prod(self.dims)) != v.size:
            raise DimensionMismatch(f"dims {self.dims} do not match vector length {v.size}")
        object.__setattr__(self, "vec", v)
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))

    def density(self) -> np.ndarray:
        return np.outer(self.vec, self.vec.conj())


def cpt_deviation(kraus: np.ndarray) -> float:
    s = np.einsum("koi,koj->ij", kraus.conj(), kraus)
    return float(np.max(np.abs(s - np.eye(kraus.shape[2]))))


def from_kraus(ops: Sequence, label: str = "") -> QuantumChannel:
    ops = [np.asarray(k, dtype=np.complex128) for k in ops]
    if not ops:
        raise InvalidChannel("at least one Kraus operator is required")
    shapes = {k.shape for k in ops}
    if len(shapes) != 1:
        raise InvalidChannel(f"Kraus operators have mismatched shapes {sorted(shapes)}")
    return QuantumChannel(np.stack(ops), label)


def apply(ch: QuantumChannel, rho) -> np.ndarray:
    rho = check_density(rho)
    if rho.shape[0] != ch.d_in:
        raise DimensionMismatch(f"state of dimension {rho.shape[0]} fed to channel with d_in={ch.d_in}")
    k = ch.kraus
    out = np.einsum("koi,ij,kqj->oq", k, rho, k.conj())
    return check_density(out)


def tensor(a: QuantumChannel, b: QuantumChannel) -> QuantumChannel:
    check_dim(a.d_in * b.d_in, a.d_out * b.d_out)
    ka, kb = a.kraus, b.kraus
    k = np.einsum("aij,bkl->abikjl", ka, kb).reshape(
        ka.shape[0] * kb.shape[0], a.d_out * b.d_out, a.d_in * b.d_in
    )
    return QuantumChannel(k, f"({a.label})x({b.label})")


def tensor_power(ch: QuantumChannel, n: int) -> QuantumChannel:
    if n < 1:
        raise ValueError("tensor power needs n >= 1")
    check_dim(ch.d_in**n, ch.d_out**n)
    if n == 1:
        return ch
    out = reduce(tensor, [ch] * n)
    return QuantumChannel(out.kraus, f"({ch.label})^{n}", {"base": ch.label, "n": n})


def identity(d: int) -> QuantumChannel:
    return QuantumChannel(np.eye(d, dtype=np.complex128)[None], f"identity({d})", {"d": d})


def complete_dephasing(delta: int) -> QuantumChannel:
    """Projective decoherence in the computational basis of a delta-level system."""
    if delta < 2:
        raise ValueError("complete dephasing needs delta >= 2")
    check_dim(delta)
    k = np.zeros((delta, delta, delta), dtype=np.complex128)
    for w in range(delta):
        k[w, w, w] = 1.0
    return QuantumChannel(k, f"complete_dephasing({delta})", {"delta": delta})


def extend_with_dephasing(m: QuantumChannel, delta: int) -> QuantumChannel:
    """M (x) T: the channel plus a classical side register of dimension delta."""
    check_dim(m.d_in * delta, m.d_out * delta)
    ext = tensor(m, complete_dephasing(delta))
    return QuantumChannel(ext.kraus, f"({m.label})x(T{delta})", {"base": m.label, "delta": delta})


def _check_prob(prob: float) -> float:
    prob = float(prob)
    if not 0.0 <= prob <= 1.0:
        raise ValueError(f"probability {prob} outside [0, 1]")
    return prob


def _drop_zero(ops):
    kept = [k for k in ops if np.any(k != 0)]
    return kept or ops[:1]


def _weyl(d: int):
    x = np.roll(np.eye(d), 1, axis=0)
    z = np.diag(np.exp(2j * np.pi * np.arange(d) / d))
    return [np.linalg.matrix_power(x, a) @ np.linalg.matrix_power(z, b) for a in range(d) for b in range(d)]


def standard_channel(name: str, d: int = 2, prob: float = 0.0) -> QuantumChannel:
    """Named channel families.

    ``depolarizing`` maps rho to (1-q) rho + q I/d; ``erasure`` appends a
    flag level so d_out = d + 1; ``dephasing`` and ``amplitude_damping`` are
    qubit only.
    """
    name = name.replace("-", "_").lower()
    if d < 1:
        raise ValueError("dimension must be positive")
    params = {"d": d, "prob": prob}
    if name == "identity":
        return identity(d)
    if name == "complete_dephasing":
        return complete_dephasing(d)
    q = _check_prob(prob)
    if name == "dephasing":
        if d != 2:
            raise UnsupportedDimension("dephasing is defined for qubits only")
        ops = [np.sqrt(1 - q) * np.eye(2), np.sqrt(q) * np.diag([1.0, -1.0])]
    elif name == "amplitude_damping":
        if d != 2:
            raise UnsupportedDimension("amplitude damping is defined for qubits only")
        ops = [np.array([[1.0, 0.0], [0.0, np.sqrt(1 - q)]]), np.array([[0.0, np.sqrt(q)], [0.0, 0.0]])]
    elif name == "depolarizing":
        w = _weyl(d)
        ops = [np.sqrt(1 - q + q / d**2) * w[0]] + [np.sqrt(q) / d * u for u in w[1:]]
    elif name == "erasure":
        iso = np.vstack([np.eye(d), np.zeros((1, d))])
        ops = [np.sqrt(1 - q) * iso]
        for j in range(d):
            e = np.zeros((d + 1, d))
            e[d, j] = 1.0
            ops.append(np.sqrt(q) * e)
    else:
        raise ValueError(f"unknown channel family {name!r}")
    ch = QuantumChannel(np.stack(_drop_zero(ops)), f"{name}({q:g})", params)
    return ch


def purify(rho) -> PureState:
    """Canonical purification sum_i sqrt(l_i) |v_i> (x) |i>, ancilla dim = dim rho."""
    rho = check_density(rho)
    eig = numerics.hermitian_eig(rho)
    lam = np.clip(eig.eigenvalues, 0.0, None)
    d = rho.shape[0]
    vec = np.einsum("i,ai->ai", np.sqrt(lam), eig.eigenvectors).reshape(d * d)
    vec /= np.linalg.norm(vec)
    return PureState(vec, (d, d))


def _exchange_matrix(ch: QuantumChannel, rho: np.ndarray) -> np.ndarray:
    k = ch.kraus
    b = np.einsum("koi,ij->koj", k, rho)
    return np.einsum("ioa,joa->ij", b, k.conj())


def entropy_exchange(ch: QuantumChannel, rho, base_dim: int) -> float:
    """Entropy of W_ij = Tr[K_i rho K_j^dag]."""
    rho = check_density(rho)
    if rho.shape[0] != ch.d_in:
        raise DimensionMismatch(f"state of dimension {rho.shape[0]} fed to channel with d_in={ch.d_in}")
    return numerics.matrix_entropy(_exchange_matrix(ch, rho), base_dim)


def entropy_exchange_purified(ch: QuantumChannel, rho, base_dim: int) -> float:
    """Same quantity by the direct route: S((ch (x) id_anc)(Phi_rho))."""
    rho = check_density(rho)
    if rho.shape[0] != ch.d_in:
        raise DimensionMismatch(f"state of dimension {rho.shape[0]} fed to channel with d_in={ch.d_in}")
    phi = purify(rho)
    ext = tensor(ch, identity(rho.shape[0]))
    return numerics.von_neumann_entropy(apply(ext, phi.density()), base_dim)


def matrix_units(d: int):
    for i in range(d):
        for j in range(d):
            e = np.zeros((d, d), dtype=np.complex128)
            e[i, j] = 1.0
            yield e


def choi(ch: QuantumChannel) -> np.ndarray:
    """Unnormalised Choi matrix sum_ij E_ij (x) ch(E_ij)."""
    k = ch.kraus
    out = np.zeros((ch.d_in * ch.d_out,) * 2, dtype=np.complex128)
    for i, e in enumerate(matrix_units(ch.d_in)):
        img = np.einsum("koi,ij,kqj->oq", k, e, k.conj())
        out += np.kron(e, img)
    return out


def channels_equal(a: QuantumChannel, b: QuantumChannel, tol: float = 1e-9) -> bool:
    """Equality as maps, checked on every matrix unit."""
    if (a.d_in, a.d_out) != (b.d_in, b.d_out):
        return False
    return bool(np.max(np.abs(choi(a) - choi(b))) <= tol)
