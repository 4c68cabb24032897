"""Shared test helpers and independent oracles.

Oracles here are deliberately written against different math than the
implementation: the beta tail uses composite Simpson quadrature (the
package uses a continued fraction), and batch evaluation checks go through
the single-point reference evaluators.
"""

import math

import numpy as np
import pytest

from evolab import boolfn


def simpson_beta_tail(a: float, b: float, t: float, intervals: int = 200_000) -> float:
    """P(Beta(a, b) >= t) by brute-force composite Simpson on [t, 1]."""
    ln_norm = math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)

    def density(x):
        # integration starts at t > 0, so only the x=1 endpoint needs care:
        # the (1-x)^(b-1) factor is 0 for b > 1 and 1 for b == 1 there
        if x >= 1.0:
            return 0.0 if b > 1.0 else math.exp(ln_norm + (a - 1.0) * math.log(x))
        la = 0.0 if a == 1.0 else (a - 1.0) * math.log(x)
        lb = 0.0 if b == 1.0 else (b - 1.0) * math.log1p(-x)
        return math.exp(ln_norm + la + lb)

    if intervals % 2:
        intervals += 1
    h = (1.0 - t) / intervals
    acc = density(t) + density(1.0)
    for i in range(1, intervals):
        acc += density(t + i * h) * (4 if i % 2 else 2)
    return acc * h / 3.0


def encode_target_as_hypothesis(f: boolfn.TargetFunction):
    """The hypothesis carrying exactly the target's literal set."""
    if f.cls == boolfn.MAJORITY:
        return boolfn.majority_subset(f.include.copy())
    return boolfn.literal_vector(f.include.copy(), f.polarity.copy())


def all_assignments(n: int) -> np.ndarray:
    """Full enumeration as a (2^n, n) int8 matrix, bit j of the row index
    giving variable j's sign."""
    idx = np.arange(1 << n, dtype=np.uint32)
    bits = (idx[:, None] >> np.arange(n, dtype=np.uint32)) & np.uint32(1)
    return (2 * bits.astype(np.int8) - 1)


def random_hypothesis(cls: str, n: int, rng: np.random.Generator):
    return boolfn.initial_hypothesis(cls, n, "random", rng)


@pytest.fixture
def rng():
    return np.random.default_rng(20260809)
