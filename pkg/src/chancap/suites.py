"""Randomized verification suites behind ``chancap verify``."""
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import channels, information, sampling, tradeoff
from .channels import QuantumChannel
from .numerics import check_dim

SUITE_TOL = 1e-8


@dataclass(frozen=True)
class SuiteResult:
    suite: str
    trials: int
    max_residual: float
    worst_trial: int
    tolerance: float = SUITE_TOL

    @property
    def passed(self) -> bool:
        return self.max_residual < self.tolerance

    def report(self) -> dict:
        return {
            "suite": self.suite,
            "trials": self.trials,
            "max_residual": self.max_residual,
            "worst_trial": self.worst_trial,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


def _worst(residuals):
    i = int(np.argmax(residuals)) if residuals else -1
    return (float(residuals[i]) if residuals else 0.0), i


def decomposition(d=2, delta=2, n=1, trials=100, seed=0, channel: QuantumChannel | None = None) -> SuiteResult:
    """Coherent information of (M (x) T)^n against its dephased-register split.

    Each trial draws a fresh channel unless one is given, and a full-rank
    random input on the (d * delta)^n space.
    """
    if channel is not None:
        d = channel.d_in
    check_dim((d * delta) ** n)
    rng = np.random.default_rng(seed)
    res = []
    for _ in range(trials):
        m = channel if channel is not None else sampling.random_channel(d, rng, n_kraus=int(rng.integers(1, 4)))
        r = sampling.random_density((d * delta) ** n, rng)
        chk = information.decomposition_identity_check(m, delta, r, n, base_dim=d)
        res.append(max(chk.residual, chk.output_residual))
    worst, i = _worst(res)
    return SuiteResult("decomposition", trials, worst, i)


def entropy_exchange_dual(d=3, trials=50, seed=0, channel: QuantumChannel | None = None) -> SuiteResult:
    """Exchange-matrix entropy against the entropy of the purified output."""
    if channel is not None:
        d = channel.d_in
    rng = np.random.default_rng(seed)
    res = []
    for _ in range(trials):
        ch = channel
        if ch is None:
            d_out = int(rng.integers(2, d + 2))
            k = int(rng.integers(-(-d // d_out), 5))
            ch = sampling.random_channel(d, rng, d_out=d_out, n_kraus=k)
        rank = int(rng.integers(1, d + 1))
        rho = sampling.random_density(d, rng, rank=rank)
        a = channels.entropy_exchange(ch, rho, d)
        b = channels.entropy_exchange_purified(ch, rho, d)
        res.append(abs(a - b))
    worst, i = _worst(res)
    return SuiteResult("entropy-exchange-dual", trials, worst, i)


def random_profile(rng: np.random.Generator, bowen: bool = False) -> tradeoff.ChannelProfile:
    """A profile meeting every constraint, with D0 = Q_xy0 = Q as at x = 0."""
    while True:
        u = [Fraction(int(v), 1000) for v in rng.integers(0, 1001, size=5)]
        q = u[0]
        c = q + u[1]
        qe = max(q, c / 2) + u[2]
        ce = 2 * qe
        eq = qe - q if bowen else qe - q + u[3] / 2
        ec = ce - c + u[4] / 2
        if ec + qe >= eq >= ec - qe:
            break
    return tradeoff.ChannelProfile(
        Q=q, C=c, Q_E=qe, C_E=ce, E_Q=eq, E_C=ec, D0=q, Q_xy0=q, bowen_conjecture=bowen
    )


def concavity(trials=50, seed=0, profile: tradeoff.ChannelProfile | None = None, steps=41) -> SuiteResult:
    """Sweep random consistent profiles along both axes at x = 0.

    The residual of a trial is the largest upward bend of the lower and
    exact curves, plus any breach of ordering or monotonicity (counted as 1).
    """
    rng = np.random.default_rng(seed)
    res = []
    for _ in range(trials):
        pr = profile if profile is not None else random_profile(rng, bowen=bool(rng.integers(0, 2)))
        other = Fraction(int(rng.integers(0, 3001)), 1000)
        worst = 0.0
        for axis in ("p", "y"):
            fixed = tradeoff.ResourceTriple(0, other, 0) if axis == "p" else tradeoff.ResourceTriple(0, 0, other)
            curve = tradeoff.sweep(pr, axis, fixed, 0, 4, steps)
            for which in ("lower", "exact"):
                if len(curve.column(which)) >= 3:
                    worst = max(worst, tradeoff.check_concavity(curve, which).excess)
            if tradeoff.curve_problems(curve):
                worst = max(worst, 1.0)
        res.append(worst)
    worst, i = _worst(res)
    return SuiteResult("concavity", trials, worst, i)
