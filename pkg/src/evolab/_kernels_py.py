"""Pure NumPy batch-evaluation kernels.

Mirrors the compiled extension in ``evolab._speedups``; the dispatcher in
``evolab.kernels`` picks whichever is importable. Both backends return
identical int8 outputs, so results never depend on the backend: sign
decisions are integer comparisons, never float accumulations.
"""

import numpy as np

OP_CONJ = 0
OP_DISJ = 1
OP_PARITY = 2


def literal_eval(X, include, polarity, op):
    """Evaluate a stack of literal-vector hypotheses on a batch.

    X: (s, n) int8 with +-1 entries. include/polarity: (c, n) uint8 with
    polarity canonical (zero where not included). Returns (c, s) int8.
    Rows with empty include evaluate to -1 everywhere for all three ops.
    """
    plus = (X == 1).astype(np.int32).T  # (n, s)
    minus = 1 - plus
    if op == OP_PARITY:
        cnt = include.astype(np.int32) @ plus
        return np.where(cnt % 2 == 1, 1, -1).astype(np.int8)
    pos = (include & (1 - polarity)).astype(np.int32)  # literals wanting +1
    neg = (include & polarity).astype(np.int32)  # literals wanting -1
    sat = pos @ plus + neg @ minus  # satisfied-literal counts
    total = include.astype(np.int32).sum(axis=1)[:, None]
    if op == OP_CONJ:
        true = (sat == total) & (total > 0)
    elif op == OP_DISJ:
        true = sat > 0
    else:
        raise ValueError(f"unknown literal op {op}")
    return np.where(true, 1, -1).astype(np.int8)


def majority_eval(X, members):
    """Majority over member subsets; ties evaluate true. members: (c, n) uint8."""
    plus = (X == 1).astype(np.int32).T
    cnt = members.astype(np.int32) @ plus
    k = members.astype(np.int32).sum(axis=1)[:, None]
    return np.where(2 * cnt >= k, 1, -1).astype(np.int8)
