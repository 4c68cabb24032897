"""Single-trial evolutionary loop.

One trial draws a hidden target and a starting hypothesis, then repeats the
mutate/evaluate/select cycle: sample a fresh batch, score the incumbent and
every neighborhood candidate on that same batch, classify against the
incumbent's recomputed base performance, select by regime, and check the
chosen hypothesis against the validation threshold. The trial stops at the
first validation pass (success), when a beneficial-only step has no
candidate (terminated early), or at the generation cap (failure).

Everything is a deterministic function of the config, including the seed.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import kernels
from .boolfn import (
    _KERNEL_OPS,
    MAJORITY,
    SUPPORT_LAWS,
    check_class,
    format_hypothesis,
    format_target,
    hypothesis_values,
    initial_hypothesis,
    near_target_hypothesis,
    sample_target,
    target_values,
)
from .errors import ConfigError
from .mutation import (
    BENEFICIAL_ONLY,
    KIND_TERMINATED,
    NEUTRAL_ALLOWED,
    classify,
    neighborhood,
    select_next,
)
from .sampling import UNIFORM, DistributionSpec, parse_dist, sample_batch

REGIME_STANDARD = "standard"
REGIME_SMART_INIT = "smart_init"
REGIME_NO_NEUTRAL = "no_neutral"
REGIMES = (REGIME_STANDARD, REGIME_SMART_INIT, REGIME_NO_NEUTRAL)

OUTCOME_SUCCESS = "success"
OUTCOME_FAILURE = "failure"
OUTCOME_TERMINATED = "terminated_early"

SMART_SUBSET_SIZE = 10


@dataclass
class TrialConfig:
    cls: str
    n: int
    dist: DistributionSpec = UNIFORM
    regime: str = REGIME_STANDARD
    init_mode: str | None = None  # None derives the regime's default
    init_subset_size: int = SMART_SUBSET_SIZE
    samples: int = 1000
    validation_size: int = 5000
    tolerance: float = 0.01
    epsilon: float = 0.05
    max_generations: int = 500
    seed: int = 0
    validation_redraw: bool = False
    support_law: str = "subset"

    def validate(self) -> None:
        check_class(self.cls)
        if self.support_law not in SUPPORT_LAWS:
            raise ConfigError(
                f"unknown support law {self.support_law!r}; valid: {', '.join(SUPPORT_LAWS)}"
            )
        if self.n < 1:
            raise ConfigError(f"dimension must be >= 1, got {self.n}")
        if self.regime not in REGIMES:
            raise ConfigError(f"unknown regime {self.regime!r}; valid: {', '.join(REGIMES)}")
        if self.samples < 1:
            raise ConfigError(f"samples must be >= 1, got {self.samples}")
        if self.validation_size < 1:
            raise ConfigError(f"validation_size must be >= 1, got {self.validation_size}")
        if not 0.0 < self.epsilon < 1.0:
            raise ConfigError(f"epsilon must be in (0, 1), got {self.epsilon}")
        if self.tolerance <= 0.0:
            raise ConfigError(f"tolerance must be positive, got {self.tolerance}")
        if self.max_generations < 1:
            raise ConfigError(f"max_generations must be >= 1, got {self.max_generations}")
        self.resolved_init()

    def resolved_init(self) -> tuple[str, int]:
        """Concrete (mode, subset_size) after applying the regime's default.

        smart_init pins its documented starting points (the empty hypothesis,
        or the first min(10, n) variables for majority) and rejects
        conflicting overrides; the other regimes default to random.
        """
        if self.regime == REGIME_SMART_INIT:
            forced = "fixed_subset" if self.cls == MAJORITY else "fixed_empty"
            if self.init_mode not in (None, forced):
                raise ConfigError(
                    f"smart_init forces init {forced!r} for {self.cls}, got {self.init_mode!r}"
                )
            # the documented 10-variable subset clamps to n at small dimensions
            size = min(self.init_subset_size, self.n) if forced == "fixed_subset" else self.init_subset_size
            return forced, size
        mode = self.init_mode or "random"
        if mode not in ("random", "fixed_empty", "fixed_subset", "near_target"):
            raise ConfigError(f"unknown init mode {mode!r}")
        return mode, self.init_subset_size


@dataclass
class GenerationRecord:
    gen: int
    base_perf: float
    train_perf: float
    val_perf: float
    bene: int
    neut: int
    kind: str


@dataclass
class TrialResult:
    config: TrialConfig
    outcome: str
    generations_used: int
    final_validation_perf: float
    records: list[GenerationRecord] = field(default_factory=list)
    target_text: str = ""
    hypothesis_text: str = ""


def run_trial(cfg: TrialConfig) -> TrialResult:
    """Run one evolutionary trial end to end. See the module docstring."""
    cfg.validate()
    rng = np.random.default_rng(cfg.seed)
    f = sample_target(cfg.cls, cfg.n, rng, support_law=cfg.support_law)
    mode, subset_size = cfg.resolved_init()
    if mode == "near_target":
        r = near_target_hypothesis(f, rng)
    else:
        r = initial_hypothesis(cfg.cls, cfg.n, mode, rng, subset_size=subset_size)
    sel_regime = BENEFICIAL_ONLY if cfg.regime == REGIME_NO_NEUTRAL else NEUTRAL_ALLOWED
    threshold = 1.0 - cfg.epsilon

    val_X = val_f = None
    if not cfg.validation_redraw:
        val_X = sample_batch(cfg.dist, cfg.n, cfg.validation_size, rng)
        val_f = target_values(f, val_X).astype(np.int64)

    def validation_perf(hyp) -> float:
        rv = hypothesis_values(hyp, cfg.cls, val_X).astype(np.int64)
        return int(val_f @ rv) / cfg.validation_size

    records: list[GenerationRecord] = []
    outcome = OUTCOME_FAILURE
    for gen in range(cfg.max_generations):
        X = sample_batch(cfg.dist, cfg.n, cfg.samples, rng)
        fv = target_values(f, X).astype(np.int64)
        candidates = neighborhood(r, cfg.cls)
        vals = _candidate_values(candidates, cfg.cls, X)
        perfs = (vals @ fv) / cfg.samples
        base = float(perfs[0])
        cl = classify(base, perfs, cfg.tolerance)
        chosen, kind, idx = select_next(cl, candidates, sel_regime, rng)
        if cfg.validation_redraw:
            val_X = sample_batch(cfg.dist, cfg.n, cfg.validation_size, rng)
            val_f = target_values(f, val_X).astype(np.int64)
        if chosen is None:
            # no acceptable mutation: log the stalled incumbent and stop
            val = validation_perf(r)
            records.append(GenerationRecord(gen, base, base, val, len(cl.bene), len(cl.neut), KIND_TERMINATED))
            outcome = OUTCOME_TERMINATED
            break
        r = chosen
        train = float(perfs[idx])
        val = validation_perf(r)
        records.append(GenerationRecord(gen, base, train, val, len(cl.bene), len(cl.neut), kind))
        if val > threshold:
            outcome = OUTCOME_SUCCESS
            break
    return TrialResult(
        config=cfg,
        outcome=outcome,
        generations_used=len(records),
        final_validation_perf=records[-1].val_perf,
        records=records,
        target_text=format_target(f),
        hypothesis_text=format_hypothesis(r, cfg.cls, cfg.n),
    )


def _candidate_values(candidates, cls, X):
    if cls == MAJORITY:
        members = np.stack([c.members for c in candidates])
        return kernels.majority_eval(X, members).astype(np.int64)
    include = np.stack([c.include for c in candidates])
    polarity = np.stack([c.polarity for c in candidates])
    return kernels.literal_eval(X, include, polarity, _KERNEL_OPS[cls]).astype(np.int64)


def evolvable_verdict(results, min_successes: int | None = None, trials: int | None = None) -> bool:
    """True when enough trials succeeded.

    The default bar is ceil(0.6 * trials), which is 3 of 5 for the usual
    variant cell size.
    """
    if trials is None:
        trials = len(results)
    if trials != len(results):
        raise ConfigError(f"got {len(results)} results for {trials} trials")
    if min_successes is None:
        min_successes = math.ceil(0.6 * trials)
    return sum(1 for r in results if r.outcome == OUTCOME_SUCCESS) >= min_successes


# --- serialization ---------------------------------------------------------

def config_to_dict(cfg: TrialConfig) -> dict:
    return {
        "class": cfg.cls,
        "n": cfg.n,
        "dist": cfg.dist.canonical(),
        "regime": cfg.regime,
        "init_mode": cfg.init_mode,
        "init_subset_size": cfg.init_subset_size,
        "samples": cfg.samples,
        "validation_size": cfg.validation_size,
        "tolerance": cfg.tolerance,
        "epsilon": cfg.epsilon,
        "max_generations": cfg.max_generations,
        "seed": cfg.seed,
        "validation_redraw": cfg.validation_redraw,
        "support_law": cfg.support_law,
    }


def config_from_dict(d: dict) -> TrialConfig:
    return TrialConfig(
        cls=d["class"],
        n=d["n"],
        dist=parse_dist(d["dist"]),
        regime=d["regime"],
        init_mode=d.get("init_mode"),
        init_subset_size=d.get("init_subset_size", SMART_SUBSET_SIZE),
        samples=d["samples"],
        validation_size=d["validation_size"],
        tolerance=d["tolerance"],
        epsilon=d["epsilon"],
        max_generations=d["max_generations"],
        seed=d["seed"],
        validation_redraw=d.get("validation_redraw", False),
        support_law=d.get("support_law", "subset"),
    )


def record_to_jsonl_dict(rec: GenerationRecord) -> dict:
    # the streaming log schema: gen, train_perf, val_perf, bene, neut, kind
    return {
        "gen": rec.gen,
        "train_perf": rec.train_perf,
        "val_perf": rec.val_perf,
        "bene": rec.bene,
        "neut": rec.neut,
        "kind": rec.kind,
    }


def result_to_dict(res: TrialResult) -> dict:
    return {
        "config": config_to_dict(res.config),
        "outcome": res.outcome,
        "generations_used": res.generations_used,
        "final_validation_perf": res.final_validation_perf,
        "target": res.target_text,
        "final_hypothesis": res.hypothesis_text,
        "records": [
            {
                "gen": r.gen,
                "base_perf": r.base_perf,
                "train_perf": r.train_perf,
                "val_perf": r.val_perf,
                "bene": r.bene,
                "neut": r.neut,
                "kind": r.kind,
            }
            for r in res.records
        ],
    }


def result_from_dict(d: dict) -> TrialResult:
    return TrialResult(
        config=config_from_dict(d["config"]),
        outcome=d["outcome"],
        generations_used=d["generations_used"],
        final_validation_perf=d["final_validation_perf"],
        records=[
            GenerationRecord(
                gen=r["gen"],
                base_perf=r["base_perf"],
                train_perf=r["train_perf"],
                val_perf=r["val_perf"],
                bene=r["bene"],
                neut=r["neut"],
                kind=r["kind"],
            )
            for r in d["records"]
        ],
        target_text=d["target"],
        hypothesis_text=d["final_hypothesis"],
    )


def result_to_json(res: TrialResult) -> str:
    return json.dumps(result_to_dict(res), indent=2) + "\n"


def records_to_jsonl(res: TrialResult) -> str:
    return "".join(json.dumps(record_to_jsonl_dict(r)) + "\n" for r in res.records)


def derived_config(cfg: TrialConfig, **overrides) -> TrialConfig:
    """Copy with field overrides; convenience for sweep cells."""
    return replace(cfg, **overrides)
