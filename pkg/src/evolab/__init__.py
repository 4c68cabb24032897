"""Seeded simulator for aggregate-fitness evolution of Boolean function classes."""

from .boolfn import (
    CLASSES,
    GENERAL_CONJUNCTION,
    GENERAL_DISJUNCTION,
    MAJORITY,
    MONOTONE_CONJUNCTION,
    MONOTONE_DISJUNCTION,
    PARITY,
    LiteralVector,
    MajoritySubset,
    TargetFunction,
    eval_hypothesis,
    eval_target,
    initial_hypothesis,
    sample_target,
)
from .engine import TrialConfig, TrialResult, evolvable_verdict, run_trial
from .harness import ExperimentConfig, SummaryRow, emit_plot_data, run_experiment, summarize
from .kernels import BACKEND
from .mutation import classify, neighborhood, select_next
from .perf import empirical_perf, exact_perf
from .sampling import DistributionSpec, bit_probability, parse_dist, sample_batch

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CLASSES",
    "DistributionSpec",
    "ExperimentConfig",
    "GENERAL_CONJUNCTION",
    "GENERAL_DISJUNCTION",
    "LiteralVector",
    "MAJORITY",
    "MONOTONE_CONJUNCTION",
    "MONOTONE_DISJUNCTION",
    "MajoritySubset",
    "PARITY",
    "SummaryRow",
    "TargetFunction",
    "TrialConfig",
    "TrialResult",
    "bit_probability",
    "classify",
    "empirical_perf",
    "emit_plot_data",
    "eval_hypothesis",
    "eval_target",
    "evolvable_verdict",
    "exact_perf",
    "initial_hypothesis",
    "neighborhood",
    "parse_dist",
    "run_experiment",
    "run_trial",
    "sample_batch",
    "sample_target",
    "select_next",
    "summarize",
    "__version__",
]
