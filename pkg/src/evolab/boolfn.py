"""Boolean function classes, target sampling, and hypothesis encodings.

Targets and hypotheses map assignments in {-1,+1}^n to a sign. Six classes:
monotone and general conjunctions and disjunctions over a support set,
parity over a support set, and majority. The general variants attach a
polarity bit to each included variable; a literal with polarity 1 is
satisfied when its variable is -1.

Two encoding rules differ from textbook conventions on purpose:

* an empty literal vector evaluates to -1 on every input for conjunctions
  as well as disjunctions (the vacuous-truth convention is not used), and
* majority ties evaluate to +1 ("at least half"), for full targets and
  subset hypotheses alike.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import ConfigError, DimensionMismatch, ReprMismatch

MONOTONE_CONJUNCTION = "monotone_conjunction"
MONOTONE_DISJUNCTION = "monotone_disjunction"
GENERAL_CONJUNCTION = "general_conjunction"
GENERAL_DISJUNCTION = "general_disjunction"
PARITY = "parity"
MAJORITY = "majority"

CLASSES = (
    MONOTONE_CONJUNCTION,
    MONOTONE_DISJUNCTION,
    GENERAL_CONJUNCTION,
    GENERAL_DISJUNCTION,
    PARITY,
    MAJORITY,
)
GENERAL_CLASSES = (GENERAL_CONJUNCTION, GENERAL_DISJUNCTION)
LITERAL_CLASSES = (
    MONOTONE_CONJUNCTION,
    MONOTONE_DISJUNCTION,
    GENERAL_CONJUNCTION,
    GENERAL_DISJUNCTION,
    PARITY,
)

SHORT_NAMES = {
    MONOTONE_CONJUNCTION: "monconj",
    MONOTONE_DISJUNCTION: "mondisj",
    GENERAL_CONJUNCTION: "genconj",
    GENERAL_DISJUNCTION: "gendisj",
    PARITY: "parity",
    MAJORITY: "majority",
}

_KERNEL_OPS = {
    MONOTONE_CONJUNCTION: kernels.OP_CONJ,
    GENERAL_CONJUNCTION: kernels.OP_CONJ,
    MONOTONE_DISJUNCTION: kernels.OP_DISJ,
    GENERAL_DISJUNCTION: kernels.OP_DISJ,
    PARITY: kernels.OP_PARITY,
}

INIT_MODES = ("random", "fixed_empty", "fixed_subset", "near_target")


def check_class(cls: str) -> None:
    if cls not in CLASSES:
        raise ConfigError(f"unknown function class {cls!r}; valid classes: {', '.join(CLASSES)}")


@dataclass(eq=False)
class TargetFunction:
    """A hidden target: class, dimension, support mask, and polarity mask.

    The polarity mask is all-zero except for general classes, where it is
    canonical (zero outside the support).
    """

    cls: str
    n: int
    include: np.ndarray
    polarity: np.ndarray


@dataclass(eq=False)
class LiteralVector:
    """Hypothesis for the conjunction, disjunction, and parity classes."""

    include: np.ndarray
    polarity: np.ndarray

    @property
    def n(self) -> int:
        return self.include.size


@dataclass(eq=False)
class MajoritySubset:
    """Hypothesis for the majority class: a nonempty variable subset mask."""

    members: np.ndarray

    @property
    def n(self) -> int:
        return self.members.size


Hypothesis = LiteralVector | MajoritySubset


def literal_vector(include, polarity=None) -> LiteralVector:
    """Build a canonical literal vector (polarity zeroed outside the support)."""
    include = np.asarray(include, dtype=np.uint8)
    if polarity is None:
        polarity = np.zeros_like(include)
    else:
        polarity = np.asarray(polarity, dtype=np.uint8) & include
    return LiteralVector(include, polarity)


def majority_subset(members) -> MajoritySubset:
    members = np.asarray(members, dtype=np.uint8)
    if int(members.sum()) < 1:
        raise ConfigError("majority subset must contain at least one variable")
    return MajoritySubset(members)


def _check_assignment(x, n: int) -> np.ndarray:
    x = np.asarray(x)
    if x.ndim != 1 or x.size != n:
        raise DimensionMismatch(f"assignment has shape {x.shape}, expected length {n}")
    if not np.all(np.abs(x) == 1):
        raise ConfigError("assignment entries must be -1 or +1")
    return x


def _eval_masks(cls: str, include: np.ndarray, polarity: np.ndarray, x: np.ndarray) -> int:
    # single-point reference semantics; batch paths go through the kernels
    if cls == MAJORITY:
        k = int(include.sum())
        if k == 0:
            raise ConfigError("majority over an empty set is undefined")
        plus = int(np.count_nonzero((x == 1) & (include == 1)))
        return 1 if 2 * plus >= k else -1
    if cls == PARITY:
        plus = int(np.count_nonzero((x == 1) & (include == 1)))
        return 1 if plus % 2 == 1 else -1
    if int(include.sum()) == 0:
        return -1  # empty hypothesis is false on all inputs, conjunctions included
    desired = np.where(polarity == 1, -1, 1)
    sat = (x == desired) & (include == 1)
    if cls in (MONOTONE_CONJUNCTION, GENERAL_CONJUNCTION):
        return 1 if int(sat.sum()) == int(include.sum()) else -1
    return 1 if np.any(sat) else -1


def eval_target(f: TargetFunction, x) -> int:
    """Evaluate a target on one assignment; returns +1 or -1."""
    x = _check_assignment(x, f.n)
    return _eval_masks(f.cls, f.include, f.polarity, x)


def eval_hypothesis(r: Hypothesis, cls: str, x) -> int:
    """Evaluate a hypothesis on one assignment under its class semantics."""
    check_class(cls)
    if cls == MAJORITY:
        if not isinstance(r, MajoritySubset):
            raise ReprMismatch(f"majority expects a MajoritySubset, got {type(r).__name__}")
        x = _check_assignment(x, r.n)
        return _eval_masks(cls, r.members, r.members, x)
    if not isinstance(r, LiteralVector):
        raise ReprMismatch(f"{cls} expects a LiteralVector, got {type(r).__name__}")
    x = _check_assignment(x, r.n)
    return _eval_masks(cls, r.include, r.polarity, x)


def target_values(f: TargetFunction, X: np.ndarray) -> np.ndarray:
    """Kernel-backed evaluation of a target on an (s, n) batch; (s,) int8."""
    if X.shape[1] != f.n:
        raise DimensionMismatch(f"batch has n={X.shape[1]}, target has n={f.n}")
    if f.cls == MAJORITY:
        return kernels.majority_eval(X, f.include[None, :])[0]
    return kernels.literal_eval(X, f.include[None, :], f.polarity[None, :], _KERNEL_OPS[f.cls])[0]


def hypothesis_values(r: Hypothesis, cls: str, X: np.ndarray) -> np.ndarray:
    """Kernel-backed evaluation of a hypothesis on an (s, n) batch; (s,) int8."""
    check_class(cls)
    if cls == MAJORITY:
        if not isinstance(r, MajoritySubset):
            raise ReprMismatch(f"majority expects a MajoritySubset, got {type(r).__name__}")
        if X.shape[1] != r.n:
            raise DimensionMismatch(f"batch has n={X.shape[1]}, hypothesis has n={r.n}")
        return kernels.majority_eval(X, r.members[None, :])[0]
    if not isinstance(r, LiteralVector):
        raise ReprMismatch(f"{cls} expects a LiteralVector, got {type(r).__name__}")
    if X.shape[1] != r.n:
        raise DimensionMismatch(f"batch has n={X.shape[1]}, hypothesis has n={r.n}")
    return kernels.literal_eval(X, r.include[None, :], r.polarity[None, :], _KERNEL_OPS[cls])[0]


SUPPORT_LAWS = ("subset", "sized")


def sample_target(
    cls: str, n: int, rng: np.random.Generator, support_law: str = "subset"
) -> TargetFunction:
    """Draw a random target.

    Under the default ``subset`` law every variable joins the support
    independently with probability 1/2, resampled until nonempty (a uniform
    nonempty subset). The ``sized`` law draws the support size uniformly on
    {1..n} first, which makes very small supports common at every dimension.
    General classes flip each support literal's polarity with probability
    1/2. Majority always spans all n variables.
    """
    check_class(cls)
    if n < 1:
        raise ConfigError(f"dimension must be >= 1, got {n}")
    if support_law not in SUPPORT_LAWS:
        raise ConfigError(f"unknown support law {support_law!r}; valid: {', '.join(SUPPORT_LAWS)}")
    include = np.zeros(n, dtype=np.uint8)
    polarity = np.zeros(n, dtype=np.uint8)
    if cls == MAJORITY:
        include[:] = 1
    elif support_law == "subset":
        while True:
            include = rng.integers(0, 2, size=n).astype(np.uint8)
            if include.sum() > 0:
                break
    else:
        size = int(rng.integers(1, n + 1))
        include[rng.choice(n, size=size, replace=False)] = 1
    if cls in GENERAL_CLASSES:
        polarity = rng.integers(0, 2, size=n).astype(np.uint8) & include
    return TargetFunction(cls, n, include, polarity)


def initial_hypothesis(
    cls: str,
    n: int,
    mode: str,
    rng: np.random.Generator,
    subset_size: int = 10,
) -> Hypothesis:
    """Draw or build the starting hypothesis.

    ``random`` draws every include (and, for general classes, polarity) bit
    uniformly; ``fixed_empty`` is the all-zero literal vector; ``fixed_subset``
    is the majority over variables {1..subset_size}.
    """
    check_class(cls)
    if n < 1:
        raise ConfigError(f"dimension must be >= 1, got {n}")
    if mode not in ("random", "fixed_empty", "fixed_subset"):
        raise ConfigError(f"unknown init mode {mode!r}")
    if cls == MAJORITY:
        if mode == "fixed_empty":
            raise ConfigError("fixed_empty init is invalid for majority")
        if mode == "fixed_subset":
            if not 1 <= subset_size <= n:
                raise ConfigError(f"fixed_subset size {subset_size} not in [1, {n}]")
            members = np.zeros(n, dtype=np.uint8)
            members[:subset_size] = 1
            return MajoritySubset(members)
        while True:  # random member mask, rejected until nonempty
            members = rng.integers(0, 2, size=n).astype(np.uint8)
            if members.sum() > 0:
                return MajoritySubset(members)
    if mode == "fixed_subset":
        raise ConfigError(f"fixed_subset init is only valid for majority, not {cls}")
    if mode == "fixed_empty":
        return literal_vector(np.zeros(n, dtype=np.uint8))
    include = rng.integers(0, 2, size=n).astype(np.uint8)
    polarity = rng.integers(0, 2, size=n).astype(np.uint8)
    if cls not in GENERAL_CLASSES:
        polarity[:] = 0
    return literal_vector(include, polarity)


def near_target_hypothesis(f: TargetFunction, rng: np.random.Generator) -> Hypothesis:
    """Target's own encoding with one random single-variable edit applied.

    An off-contract convenience for probing initialization sensitivity; no
    experimental defaults use it.
    """
    if f.cls == MAJORITY:
        members = f.include.copy()
        if f.n > 1:
            members[int(rng.integers(f.n))] = 0
            if members.sum() == 0:
                members[:] = f.include
        return MajoritySubset(members)
    include = f.include.copy()
    include[int(rng.integers(f.n))] ^= 1
    return literal_vector(include, f.polarity)


def _bits(mask: np.ndarray) -> str:
    return "".join("1" if b else "0" for b in mask)


def format_target(f: TargetFunction) -> str:
    """Canonical log form, e.g. ``genconj n=5 inc=10101 pol=00100``."""
    if f.cls == MAJORITY:
        members = ",".join(str(i + 1) for i in np.flatnonzero(f.include))
        return f"majority n={f.n} members={members}"
    return f"{SHORT_NAMES[f.cls]} n={f.n} inc={_bits(f.include)} pol={_bits(f.polarity)}"


def format_hypothesis(r: Hypothesis, cls: str, n: int) -> str:
    """Canonical log form of a hypothesis, mirroring format_target."""
    check_class(cls)
    if cls == MAJORITY:
        members = ",".join(str(i + 1) for i in np.flatnonzero(r.members))
        return f"majority n={n} members={members}"
    return f"{SHORT_NAMES[cls]} n={n} inc={_bits(r.include)} pol={_bits(r.polarity)}"
