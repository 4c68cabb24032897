"""Neighborhood generation, beneficial/neutral classification, and selection.

The mutator sees only the empirical performance of each candidate: anything
at least the tolerance above the incumbent is beneficial, anything within
the tolerance below is neutral, and everything else is never selected. The
incumbent is always its own first candidate, so a neutral-allowed step can
never run out of choices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .boolfn import (
    GENERAL_CLASSES,
    MAJORITY,
    Hypothesis,
    LiteralVector,
    MajoritySubset,
    check_class,
    literal_vector,
)
from .errors import ConfigError, ReprMismatch

NEUTRAL_ALLOWED = "neutral_allowed"
BENEFICIAL_ONLY = "beneficial_only"

KIND_BENEFICIAL = "beneficial"
KIND_NEUTRAL = "neutral"
KIND_TERMINATED = "terminated"


@dataclass
class Classification:
    bene: list[int]
    neut: list[int]
    base_perf: float


def neighborhood(r: Hypothesis, cls: str) -> list[Hypothesis]:
    """All single-edit mutants of r, with r itself first.

    Literal-vector classes get one include-bit toggle per variable, plus one
    polarity flip per included variable for the general classes. Majority
    subsets get add-one, remove-one (never the last member), and swap-one
    moves. Every candidate is in canonical form.
    """
    check_class(cls)
    if cls == MAJORITY:
        if not isinstance(r, MajoritySubset):
            raise ReprMismatch(f"majority expects a MajoritySubset, got {type(r).__name__}")
        out: list[Hypothesis] = [r]
        members = np.flatnonzero(r.members)
        non_members = np.flatnonzero(r.members == 0)
        for j in non_members:
            m = r.members.copy()
            m[j] = 1
            out.append(MajoritySubset(m))
        if members.size > 1:
            for i in members:
                m = r.members.copy()
                m[i] = 0
                out.append(MajoritySubset(m))
        for i in members:
            for j in non_members:
                m = r.members.copy()
                m[i] = 0
                m[j] = 1
                out.append(MajoritySubset(m))
        return out
    if not isinstance(r, LiteralVector):
        raise ReprMismatch(f"{cls} expects a LiteralVector, got {type(r).__name__}")
    out = [r]
    for j in range(r.n):
        inc = r.include.copy()
        inc[j] ^= 1
        out.append(literal_vector(inc, r.polarity))
    if cls in GENERAL_CLASSES:
        for j in np.flatnonzero(r.include):
            pol = r.polarity.copy()
            pol[j] ^= 1
            out.append(literal_vector(r.include.copy(), pol))
    return out


def max_neighborhood_size(cls: str, n: int, k: int | None = None) -> int:
    """Per-class candidate-count bound for a dimension-n hypothesis.

    Majority depends on the current subset size k; pass None for the bound's
    maximum over k.
    """
    check_class(cls)
    if cls == MAJORITY:
        if k is None:
            k = n // 2
        return k * (n - k) + n + 1
    if cls in GENERAL_CLASSES:
        return 2 * n + 1
    return n + 1


def classify(base_perf: float, candidate_perfs, t: float) -> Classification:
    """Partition candidate indices by the two tolerance thresholds.

    Comparisons are exact: a candidate is beneficial iff its value reaches
    base + t and neutral iff it reaches base - t without being beneficial.
    """
    if t <= 0:
        raise ConfigError(f"tolerance must be positive, got {t}")
    bene: list[int] = []
    neut: list[int] = []
    for i, v in enumerate(candidate_perfs):
        if v >= base_perf + t:
            bene.append(i)
        elif v >= base_perf - t:
            neut.append(i)
    return Classification(bene, neut, float(base_perf))


def select_next(
    classification: Classification,
    candidates: list[Hypothesis],
    regime: str,
    rng: np.random.Generator,
):
    """Apply the mutator's selection rule.

    Returns (hypothesis, kind, index). Beneficial candidates win when any
    exist; otherwise neutral ones are eligible only under neutral_allowed.
    With nothing eligible the step is terminated and the hypothesis is None.
    """
    if regime not in (NEUTRAL_ALLOWED, BENEFICIAL_ONLY):
        raise ConfigError(f"unknown selection regime {regime!r}")
    if classification.bene:
        i = classification.bene[int(rng.integers(len(classification.bene)))]
        return candidates[i], KIND_BENEFICIAL, i
    if regime == NEUTRAL_ALLOWED and classification.neut:
        i = classification.neut[int(rng.integers(len(classification.neut)))]
        return candidates[i], KIND_NEUTRAL, i
    return None, KIND_TERMINATED, None
