"""Exact and empirical performance of a hypothesis against a target.

Both are correlations in [-1, 1]: the exact value is the pmf-weighted sum
of f(x) * r(x) over the whole cube, the empirical value is the sample mean
over a batch. The empirical mean is accumulated as an integer dot product
and divided once, so it is always an exact multiple of 2/s shifted from -1
and identical across kernel backends.
"""

from __future__ import annotations

import numpy as np

from .boolfn import Hypothesis, TargetFunction, hypothesis_values, target_values
from .errors import ConfigError, DimensionMismatch, EnumerationCapExceeded
from .sampling import DistributionSpec, pmf_batch

DEFAULT_ENUMERATION_CAP = 20
_CHUNK_ROWS = 1 << 14


def enumerate_assignments(n: int, chunk: int = _CHUNK_ROWS):
    """Yield (m, n) int8 blocks covering all 2^n assignments in index order.

    Bit j of the row index gives variable j's sign (+1 for a set bit).
    """
    if n < 1:
        raise ConfigError(f"dimension must be >= 1, got {n}")
    total = 1 << n
    shifts = np.arange(n, dtype=np.uint32)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.uint32)
        bits = (idx[:, None] >> shifts) & np.uint32(1)
        yield (2 * bits.astype(np.int8) - 1)


def exact_perf(
    f: TargetFunction,
    r: Hypothesis,
    cls: str,
    d: DistributionSpec,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> float:
    """Exhaustive pmf-weighted agreement; refuses dimensions above the cap."""
    if f.n > cap:
        raise EnumerationCapExceeded(
            f"n={f.n} exceeds the enumeration cap {cap}; use empirical_perf instead"
        )
    if r.n != f.n:
        raise DimensionMismatch(f"hypothesis has n={r.n}, target has n={f.n}")
    acc = 0.0
    for X in enumerate_assignments(f.n):
        fv = target_values(f, X).astype(np.float64)
        rv = hypothesis_values(r, cls, X).astype(np.float64)
        acc += float(np.sum(fv * rv * pmf_batch(d, X)))
    return acc


def empirical_perf(f: TargetFunction, r: Hypothesis, cls: str, batch) -> float:
    """Mean agreement of target and hypothesis over a batch of assignments."""
    X = np.asarray(batch, dtype=np.int8)
    if X.ndim != 2:
        raise ConfigError(f"batch must be an (s, n) matrix, got shape {X.shape}")
    if X.shape[0] < 1:
        raise ConfigError("batch must be nonempty")
    fv = target_values(f, X).astype(np.int64)
    rv = hypothesis_values(r, cls, X).astype(np.int64)
    return int(fv @ rv) / X.shape[0]
