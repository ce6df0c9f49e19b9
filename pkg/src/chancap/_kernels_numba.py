"""Numba-compiled hot kernels.

Same call signatures as :mod:`chancap._kernels_numpy`; see that module for
the parameter layouts.  The eigensolver here is a cyclic complex Jacobi
iteration, so this path needs no LAPACK.
"""
import numpy as np
from numba import njit

OFF_TOL = 1e-12
SWEEPS_PER_DIM = 100


@njit(cache=True)
def _jacobi(a_in, want_vectors):
    n = a_in.shape[0]
    a = np.empty((n, n), dtype=np.complex128)
    frob = 0.0
    for i in range(n):
        for j in range(n):
            a[i, j] = a_in[i, j]
            frob += a_in[i, j].real ** 2 + a_in[i, j].imag ** 2
    frob = np.sqrt(frob)
    v = np.zeros((n, n), dtype=np.complex128)
    for i in range(n):
        v[i, i] = 1.0
    thresh = OFF_TOL * frob
    converged = False
    for _ in range(SWEEPS_PER_DIM * n):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                z = abs(a[p, q])
                if z > off:
                    off = z
        if off <= thresh:
            converged = True
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                b = abs(apq)
                if b == 0.0:
                    continue
                ph = apq / b
                phc = ph.conjugate()
                theta = (a[q, q].real - a[p, p].real) / (2.0 * b)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * phc * akq
                    a[k, q] = s * akp + c * phc * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * ph * aqk
                    a[q, k] = s * apk + c * ph * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                if want_vectors:
                    for k in range(n):
                        vkp = v[k, p]
                        vkq = v[k, q]
                        v[k, p] = c * vkp - s * phc * vkq
                        v[k, q] = s * vkp + c * phc * vkq
    w = np.empty(n)
    for i in range(n):
        w[i] = a[i, i].real
    return w, v, converged


def eigh(h):
    w, v, ok = _jacobi(np.ascontiguousarray(h, dtype=np.complex128), True)
    return w, v, ok


def eigvalsh(h):
    w, _, ok = _jacobi(np.ascontiguousarray(h, dtype=np.complex128), False)
    return w, ok


@njit(cache=True)
def _xlogx_sum(w):
    s = 0.0
    for x in w:
        if x > 0.0:
            s -= x * np.log(x)
    return s


@njit(cache=True)
def _entropy(h):
    w, _, _ = _jacobi(h, False)
    return _xlogx_sum(w)


@njit(cache=True)
def _factor_state(params, dim):
    n2 = dim * dim
    a = np.empty((dim, dim), dtype=np.complex128)
    for i in range(dim):
        for j in range(dim):
            a[i, j] = complex(params[i * dim + j], params[n2 + i * dim + j])
    rho = np.empty((dim, dim), dtype=np.complex128)
    tr = 0.0
    for i in range(dim):
        for j in range(dim):
            acc = 0j
            for k in range(dim):
                acc += a[i, k] * a[j, k].conjugate()
            rho[i, j] = acc
        tr += rho[i, i].real
    if tr > 0.0:
        for i in range(dim):
            for j in range(dim):
                rho[i, j] /= tr
    return rho, tr


@njit(cache=True)
def _channel_terms(kraus, rho, want_w):
    nk, do, di = kraus.shape
    b = np.zeros((nk, do, di), dtype=np.complex128)
    for k in range(nk):
        for o in range(do):
            for j in range(di):
                acc = 0j
                for l in range(di):
                    acc += kraus[k, o, l] * rho[l, j]
                b[k, o, j] = acc
    out = np.zeros((do, do), dtype=np.complex128)
    for k in range(nk):
        for o1 in range(do):
            for o2 in range(do):
                acc = 0j
                for j in range(di):
                    acc += b[k, o1, j] * kraus[k, o2, j].conjugate()
                out[o1, o2] += acc
    w = np.zeros((nk, nk), dtype=np.complex128)
    if want_w:
        for i in range(nk):
            for j in range(nk):
                acc = 0j
                for o in range(do):
                    for l in range(di):
                        acc += b[i, o, l] * kraus[j, o, l].conjugate()
                w[i, j] = acc
    return out, w


@njit(cache=True)
def _holevo(params, kraus, d, m, scale):
    nk, do, di = kraus.shape
    off = m * 2 * d
    mx = params[off]
    for i in range(1, m):
        if params[off + i] > mx:
            mx = params[off + i]
    probs = np.empty(m)
    z = 0.0
    for i in range(m):
        probs[i] = np.exp(params[off + i] - mx)
        z += probs[i]
    avg = np.zeros((do, do), dtype=np.complex128)
    s_cond = 0.0
    rho = np.empty((d, d), dtype=np.complex128)
    psi = np.empty(d, dtype=np.complex128)
    for i in range(m):
        probs[i] /= z
        base = i * 2 * d
        norm2 = 0.0
        for j in range(d):
            psi[j] = complex(params[base + j], params[base + d + j])
            norm2 += psi[j].real ** 2 + psi[j].imag ** 2
        if norm2 <= 1e-300:
            return -np.inf
        for j in range(d):
            for l in range(d):
                rho[j, l] = psi[j] * psi[l].conjugate() / norm2
        out, _ = _channel_terms(kraus, rho, False)
        s_cond += probs[i] * _entropy(out)
        for o1 in range(do):
            for o2 in range(do):
                avg[o1, o2] += probs[i] * out[o1, o2]
    return (_entropy(avg) - s_cond) * scale


@njit(cache=True)
def _objective(kind, params, kraus, dim, m, scale):
    if kind == 2:
        return _holevo(params, kraus, dim, m, scale)
    rho, tr = _factor_state(params, dim)
    if tr <= 1e-300:
        return -np.inf
    out, w = _channel_terms(kraus, rho, True)
    val = _entropy(out) - _entropy(w)
    if kind == 1:
        val += _entropy(rho)
    return val * scale


@njit(cache=True)
def _gradient(kind, params, kraus, dim, m, eps, scale):
    n = params.size
    g = np.empty(n)
    x = params.copy()
    for i in range(n):
        orig = x[i]
        x[i] = orig + eps
        fp = _objective(kind, x, kraus, dim, m, scale)
        x[i] = orig - eps
        fm = _objective(kind, x, kraus, dim, m, scale)
        x[i] = orig
        g[i] = (fp - fm) / (2.0 * eps)
    return g


def objective(kind, params, kraus, dim, m, scale):
    return _objective(kind, params, kraus, dim, m, scale)


def gradient(kind, params, kraus, dim, m, eps, scale):
    return _gradient(kind, params, kraus, dim, m, eps, scale)
