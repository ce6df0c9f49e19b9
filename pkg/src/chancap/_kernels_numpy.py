"""Pure-numpy kernels, vectorised over batches of parameter vectors.

Parameter layouts shared with the numba path:

* kinds 0 (coherent information) and 1 (mutual information): ``params`` has
  length ``2 * dim**2``; the first half holds the real part of a square
  factor ``A`` in row-major order, the second half its imaginary part, and
  the state is ``A A^† / Tr(A A^†)``.
* kind 2 (Holevo quantity): ``m`` blocks of ``2 * dim`` reals (real then
  imaginary part of each unnormalised pure member), then ``m`` logits for
  the ensemble weights.

``scale`` multiplies natural-log entropies (``1 / ln(base)`` gives dits).
"""
import numpy as np

_NEG_INF = -np.inf


def eigh(h):
    try:
        w, v = np.linalg.eigh(h)
    except np.linalg.LinAlgError:
        n = h.shape[0]
        return np.zeros(n), np.eye(n, dtype=complex), False
    return w, v, True


def eigvalsh(h):
    try:
        return np.linalg.eigvalsh(h), True
    except np.linalg.LinAlgError:
        return np.zeros(h.shape[0]), False


def _entropies(h):
    w = np.clip(np.linalg.eigvalsh(h), 0.0, None)
    safe = np.where(w > 0.0, w, 1.0)
    return -np.sum(w * np.log(safe), axis=-1)


def _factor_states(batch, dim):
    n2 = dim * dim
    a = (batch[:, :n2] + 1j * batch[:, n2:]).reshape(-1, dim, dim)
    rho = a @ np.conj(np.swapaxes(a, 1, 2))
    tr = np.real(np.trace(rho, axis1=1, axis2=2))
    good = tr > 1e-300
    rho[good] /= tr[good, None, None]
    return rho, good


def _objective_batch(kind, batch, kraus, dim, m, scale):
    kc = np.conj(kraus)
    if kind == 2:
        return _holevo_batch(batch, kraus, dim, m, scale)
    rho, good = _factor_states(batch, dim)
    b = np.einsum("koi,bij->bkoj", kraus, rho)
    out = np.einsum("bkoj,kqj->boq", b, kc)
    w = np.einsum("bioa,joa->bij", b, kc)
    val = _entropies(out) - _entropies(w)
    if kind == 1:
        val = val + _entropies(rho)
    val = val * scale
    val[~good] = _NEG_INF
    return val


def _holevo_batch(batch, kraus, d, m, scale):
    nb = batch.shape[0]
    off = m * 2 * d
    vec = batch[:, :off].reshape(nb, m, 2, d)
    psi = vec[:, :, 0, :] + 1j * vec[:, :, 1, :]
    norm2 = np.sum(np.abs(psi) ** 2, axis=-1)
    good = np.all(norm2 > 1e-300, axis=-1)
    norm2 = np.where(norm2 > 1e-300, norm2, 1.0)
    rho = psi[..., :, None] * np.conj(psi)[..., None, :] / norm2[..., None, None]
    logits = batch[:, off:]
    e = np.exp(logits - logits.max(axis=1, keepdims=True))
    probs = e / e.sum(axis=1, keepdims=True)
    b = np.einsum("koi,bmij->bmkoj", kraus, rho)
    outs = np.einsum("bmkoj,kqj->bmoq", b, np.conj(kraus))
    s_each = _entropies(outs)
    avg = np.einsum("bm,bmoq->boq", probs, outs)
    val = (_entropies(avg) - np.sum(probs * s_each, axis=1)) * scale
    val[~good] = _NEG_INF
    return val


def objective(kind, params, kraus, dim, m, scale):
    return float(_objective_batch(kind, params[None, :], kraus, dim, m, scale)[0])


def gradient(kind, params, kraus, dim, m, eps, scale):
    n = params.size
    shift = eps * np.eye(n)
    batch = np.concatenate([params + shift, params - shift])
    vals = _objective_batch(kind, batch, kraus, dim, m, scale)
    return (vals[:n] - vals[n:]) / (2.0 * eps)
