"""Time the numba kernels against the numpy fallback.

Both backends are imported directly, so one process measures both
regardless of CHANCAP_BACKEND.  Run with

    python benchmarks/bench_kernels.py [--repeat N]

First calls are made before timing so JIT compilation is excluded.
"""
import argparse
import math
import time

import numpy as np

from chancap import _kernels_numba, _kernels_numpy, channels, sampling


def _time(fn, repeat):
    fn()
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def cases():
    rng = np.random.default_rng(0)
    amp = channels.standard_channel("amplitude_damping", 2, 0.3)
    for n in (1, 2, 3):
        ch = channels.tensor_power(amp, n)
        dim = ch.d_in
        x = rng.normal(size=2 * dim * dim)
        yield f"qmi gradient, amp-damp^{n} (dim {dim})", ("gradient", 1, x, ch.kraus, dim, 0)
    ch = sampling.random_channel(3, rng, n_kraus=3)
    m = 9
    x = rng.normal(size=m * 2 * 3 + m)
    yield "holevo gradient, random qutrit, m=9", ("gradient", 2, x, ch.kraus, 3, m)
    h = sampling.random_hermitian(16, rng)
    yield "eigvalsh 16x16", ("eigvalsh", h)


def run(repeat: int):
    scale = 1 / math.log(2)
    print(f"{'case':44s} {'numba':>10s} {'numpy':>10s} {'ratio':>7s}")
    for label, case in cases():
        row = []
        for mod in (_kernels_numba, _kernels_numpy):
            if case[0] == "gradient":
                _, kind, x, kraus, dim, m = case
                kraus = np.ascontiguousarray(kraus)
                fn = lambda: mod.gradient(kind, x, kraus, dim, m, 1e-6, scale)  # noqa: E731
            else:
                fn = lambda: mod.eigvalsh(case[1])  # noqa: E731
            row.append(_time(fn, repeat))
        print(f"{label:44s} {row[0] * 1e3:9.3f}ms {row[1] * 1e3:9.3f}ms {row[1] / row[0]:6.1f}x")


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=20)
    run(ap.parse_args().repeat)
