"""Kernel backend selection.

The compiled Cython extension is preferred when importable; otherwise the
NumPy implementation is used. Set EVOLAB_KERNELS=python or =compiled to
force a backend (forcing the compiled one raises if it is missing).
"""

import os

import numpy as np

from . import _kernels_py

OP_CONJ = _kernels_py.OP_CONJ
OP_DISJ = _kernels_py.OP_DISJ
OP_PARITY = _kernels_py.OP_PARITY

_forced = os.environ.get("EVOLAB_KERNELS", "").strip().lower()
if _forced == "python":
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        if _forced == "compiled":
            raise
        _impl = _kernels_py
        BACKEND = "python"


def _as_i8(X):
    return np.ascontiguousarray(X, dtype=np.int8)


def _as_u8(m):
    m = np.ascontiguousarray(m, dtype=np.uint8)
    if m.ndim != 2:
        raise ValueError(f"mask stack must be 2-D, got shape {m.shape}")
    return m


def literal_eval(X, include, polarity, op):
    """Backend-dispatched literal-vector evaluation; see _kernels_py for the contract."""
    return _impl.literal_eval(_as_i8(X), _as_u8(include), _as_u8(polarity), int(op))


def majority_eval(X, members):
    """Backend-dispatched subset-majority evaluation."""
    return _impl.majority_eval(_as_i8(X), _as_u8(members))
