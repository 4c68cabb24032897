"""Experiment sweeps over (regime x class x n x distribution) cells.

Each cell runs its trials with per-trial seeds derived from the master seed
by a stable hash, so artifacts are byte-identical no matter how trials are
scheduled across workers. Persisted layout:

    <out>/<regime>/<class>/n<k>/<dist>/trial<i>.jsonl   per-generation log
    <out>/<regime>/<class>/n<k>/<dist>/trial<i>.json    full trial result
    <out>/summary.csv                                   one row per cell
    <out>/plots/<Layout>.csv                            tidy plot series
"""

from __future__ import annotations

import csv
import hashlib
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .boolfn import CLASSES
from .engine import (
    OUTCOME_SUCCESS,
    REGIME_STANDARD,
    REGIMES,
    TrialConfig,
    TrialResult,
    evolvable_verdict,
    records_to_jsonl,
    result_from_dict,
    result_to_dict,
    result_to_json,
    run_trial,
)
from .errors import ConfigError
from .sampling import UNIFORM, DistributionSpec

DEFAULT_DIMS = (5, 10, 20, 30, 50)
DEFAULT_TRIALS_STANDARD = 30
DEFAULT_TRIALS_VARIANT = 5

SUMMARY_FIELDS = (
    "regime",
    "class",
    "n",
    "dist",
    "trials",
    "successes",
    "success_rate",
    "avg_generations_success",
    "avg_bene_per_gen",
    "avg_neut_per_gen",
    "evolvable",
)

LAYOUTS = {
    "summary_grid": "SummaryGrid",
    "fitness_grid": "FitnessGrid",
    "per_class_dist_grid": "PerClassDistGrid",
}
SUMMARY_PANELS = ("success_rate", "avg_generations", "bene_per_gen", "neut_per_gen")


@dataclass
class ExperimentConfig:
    out: str | Path
    regimes: tuple[str, ...] = (REGIME_STANDARD,)
    classes: tuple[str, ...] = CLASSES
    dims: tuple[int, ...] = DEFAULT_DIMS
    dists: tuple[DistributionSpec, ...] = (UNIFORM,)
    trials: int | None = None  # None: 30 for standard, 5 for variants
    master_seed: int = 0
    samples: int = 1000
    validation_size: int = 5000
    tolerance: float = 0.01
    epsilon: float = 0.05
    max_generations: int = 500
    workers: int | None = None
    support_law: str = "subset"

    def validate(self) -> None:
        for name, values in (("regimes", self.regimes), ("classes", self.classes),
                             ("dims", self.dims), ("dists", self.dists)):
            if not values:
                raise ConfigError(f"{name} must be nonempty")
        for regime in self.regimes:
            if regime not in REGIMES:
                raise ConfigError(f"unknown regime {regime!r}; valid: {', '.join(REGIMES)}")
        for cls in self.classes:
            if cls not in CLASSES:
                raise ConfigError(f"unknown class {cls!r}; valid: {', '.join(CLASSES)}")
        for n in self.dims:
            if n < 1:
                raise ConfigError(f"dims entries must be >= 1, got {n}")
        if self.trials is not None and self.trials < 1:
            raise ConfigError(f"trials must be >= 1, got {self.trials}")

    def trials_for(self, regime: str) -> int:
        if self.trials is not None:
            return self.trials
        return DEFAULT_TRIALS_STANDARD if regime == REGIME_STANDARD else DEFAULT_TRIALS_VARIANT


@dataclass
class SummaryRow:
    regime: str
    cls: str
    n: int
    dist: str  # distribution slug
    trials: int
    successes: int
    success_rate: float
    avg_generations_success: float | None
    avg_bene_per_gen: float
    avg_neut_per_gen: float
    evolvable: bool


@dataclass
class ExperimentReport:
    summaries: list[SummaryRow]
    errors: list[dict]
    outdir: Path


def trial_seed(master_seed: int, regime: str, cls: str, n: int, dist: DistributionSpec, index: int) -> int:
    """Stable 64-bit per-trial seed; independent of scheduling and ordering."""
    key = f"evolab|{master_seed}|{regime}|{cls}|{n}|{dist.canonical()}|{index}"
    return int.from_bytes(hashlib.sha256(key.encode()).digest()[:8], "big")


def _cell_dir(outdir: Path, regime: str, cls: str, n: int, dist: DistributionSpec) -> Path:
    return outdir / regime / cls / f"n{n}" / dist.slug()


def _cells(cfg: ExperimentConfig):
    cells = [
        (regime, cls, n, dist)
        for regime in cfg.regimes
        for cls in cfg.classes
        for n in cfg.dims
        for dist in cfg.dists
    ]
    cells.sort(key=lambda c: (c[0], c[1], c[2], c[3].slug()))
    return cells


def _trial_config(cfg: ExperimentConfig, regime: str, cls: str, n: int, dist: DistributionSpec, i: int) -> TrialConfig:
    return TrialConfig(
        cls=cls,
        n=n,
        dist=dist,
        regime=regime,
        samples=cfg.samples,
        validation_size=cfg.validation_size,
        tolerance=cfg.tolerance,
        epsilon=cfg.epsilon,
        max_generations=cfg.max_generations,
        seed=trial_seed(cfg.master_seed, regime, cls, n, dist, i),
        support_law=cfg.support_law,
    )


def _run_one(task):
    # worker-side isolation: a failing trial becomes an error marker, never
    # a lost future
    key, i, trial_cfg = task
    try:
        return key, i, run_trial(trial_cfg), None
    except Exception as exc:  # noqa: BLE001
        return key, i, None, f"{type(exc).__name__}: {exc}"


def run_experiment(cfg: ExperimentConfig, log=None) -> ExperimentReport:
    """Run every cell's trials, persist artifacts, and summarize.

    Output is a pure function of the config: per-trial seeds come from the
    master seed, trials are written in index order, and summary rows are
    sorted by cell key.
    """
    cfg.validate()
    outdir = Path(cfg.out)
    try:
        outdir.mkdir(parents=True, exist_ok=True)
        probe = outdir / ".write_probe"
        probe.write_text("")
        probe.unlink()
    except OSError as exc:
        raise ConfigError(f"output directory {outdir} is not writable: {exc}") from exc

    cells = _cells(cfg)
    tasks = []
    for regime, cls, n, dist in cells:
        key = (regime, cls, n, dist.slug())
        for i in range(cfg.trials_for(regime)):
            tasks.append((key, i, _trial_config(cfg, regime, cls, n, dist, i)))

    workers = cfg.workers or os.cpu_count() or 1
    workers = max(1, min(workers, len(tasks)))
    outcomes = []
    if workers == 1:
        for task in tasks:
            outcomes.append(_run_one(task))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_run_one, tasks, chunksize=1))

    by_cell: dict[tuple, dict[int, TrialResult]] = {}
    errors: list[dict] = []
    for key, i, result, err in outcomes:
        if err is not None:
            regime, cls, n, dist_slug = key
            errors.append(
                {"regime": regime, "class": cls, "n": n, "dist": dist_slug, "trial": i, "error": err}
            )
            continue
        by_cell.setdefault(key, {})[i] = result

    rows: list[SummaryRow] = []
    for regime, cls, n, dist in cells:
        key = (regime, cls, n, dist.slug())
        cell_results = [by_cell.get(key, {})[i] for i in sorted(by_cell.get(key, {}))]
        cell_dir = _cell_dir(outdir, regime, cls, n, dist)
        cell_dir.mkdir(parents=True, exist_ok=True)
        for i, res in zip(sorted(by_cell.get(key, {})), cell_results):
            (cell_dir / f"trial{i:03d}.jsonl").write_text(records_to_jsonl(res))
            (cell_dir / f"trial{i:03d}.json").write_text(result_to_json(res))
        if cell_results:
            rows.append(summarize(cell_results))
        if log:
            done = len(cell_results)
            total = cfg.trials_for(regime)
            log(f"cell {regime}/{cls}/n{n}/{dist.slug()}: {done}/{total} trials done")

    write_summary_csv(rows, outdir / "summary.csv")
    (outdir / "config.json").write_text(json.dumps(_config_echo(cfg), indent=2) + "\n")
    if errors:
        (outdir / "errors.json").write_text(json.dumps(errors, indent=2) + "\n")
    return ExperimentReport(summaries=rows, errors=errors, outdir=outdir)


def _config_echo(cfg: ExperimentConfig) -> dict:
    return {
        "regimes": list(cfg.regimes),
        "classes": list(cfg.classes),
        "dims": list(cfg.dims),
        "dists": [d.canonical() for d in cfg.dists],
        "trials": cfg.trials,
        "master_seed": cfg.master_seed,
        "samples": cfg.samples,
        "validation_size": cfg.validation_size,
        "tolerance": cfg.tolerance,
        "epsilon": cfg.epsilon,
        "max_generations": cfg.max_generations,
        "support_law": cfg.support_law,
    }


def summarize(results: list[TrialResult]) -> SummaryRow:
    """Aggregate one cell: exact success fraction, pooled per-generation
    mutation counts, and mean generations over successful trials only."""
    if not results:
        raise ConfigError("cannot summarize an empty cell")
    cfg = results[0].config
    successes = sum(1 for r in results if r.outcome == OUTCOME_SUCCESS)
    total_gens = sum(len(r.records) for r in results)
    total_bene = sum(rec.bene for r in results for rec in r.records)
    total_neut = sum(rec.neut for r in results for rec in r.records)
    success_gens = [r.generations_used for r in results if r.outcome == OUTCOME_SUCCESS]
    return SummaryRow(
        regime=cfg.regime,
        cls=cfg.cls,
        n=cfg.n,
        dist=cfg.dist.slug(),
        trials=len(results),
        successes=successes,
        success_rate=successes / len(results),
        avg_generations_success=(sum(success_gens) / len(success_gens)) if success_gens else None,
        avg_bene_per_gen=total_bene / total_gens,
        avg_neut_per_gen=total_neut / total_gens,
        evolvable=evolvable_verdict(results),
    )


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def write_summary_csv(rows: list[SummaryRow], path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(SUMMARY_FIELDS)
        for r in sorted(rows, key=lambda r: (r.regime, r.cls, r.n, r.dist)):
            w.writerow(
                [
                    r.regime,
                    r.cls,
                    _fmt(r.n),
                    r.dist,
                    _fmt(r.trials),
                    _fmt(r.successes),
                    _fmt(r.success_rate),
                    _fmt(r.avg_generations_success),
                    _fmt(r.avg_bene_per_gen),
                    _fmt(r.avg_neut_per_gen),
                    _fmt(r.evolvable),
                ]
            )
    return path


def load_cells(outdir: str | Path) -> dict[tuple, list[TrialResult]]:
    """Rebuild per-cell trial results from persisted trial .json files."""
    outdir = Path(outdir)
    cells: dict[tuple, list[tuple[str, TrialResult]]] = {}
    for path in sorted(outdir.rglob("trial*.json")):
        res = result_from_dict(json.loads(path.read_text()))
        cfg = res.config
        key = (cfg.regime, cfg.cls, cfg.n, cfg.dist.slug())
        cells.setdefault(key, []).append((path.name, res))
    if not cells:
        raise ConfigError(f"no trial artifacts found under {outdir}")
    return {key: [res for _, res in sorted(pairs)] for key, pairs in cells.items()}


def summarize_directory(outdir: str | Path) -> list[SummaryRow]:
    """Recompute summary rows from raw trial files alone."""
    return [summarize(results) for _, results in sorted(load_cells(outdir).items())]


def trajectories_from_cells(cells: dict[tuple, list[TrialResult]]) -> dict[tuple, list[list[float]]]:
    """Per-cell validation-fitness series, one list per trial in index order."""
    return {
        key: [[rec.val_perf for rec in res.records] for res in results]
        for key, results in cells.items()
    }


def _series_name(parts: list[str]) -> str:
    return "/".join(parts)


def emit_plot_data(
    summaries: list[SummaryRow],
    trajectories: dict[tuple, list[list[float]]],
    layout: str,
    outdir: str | Path,
) -> Path:
    """Write one tidy (panel, series, x, y) CSV for the requested layout.

    summary_grid panels are the four cell metrics against n with one series
    per class; fitness_grid panels are classes with one mean-fitness series
    per dimension (trials padded with their final value); per_class_dist_grid
    panels are classes with one success-rate series per distribution. Series
    names gain regime/distribution qualifiers only when the data mixes more
    than one. Missing values (a cell with no successes) emit an empty y as an
    explicit gap marker.
    """
    if layout not in LAYOUTS:
        raise ConfigError(f"unknown layout {layout!r}; valid: {', '.join(sorted(LAYOUTS))}")
    rows: list[tuple[str, str, str, str]] = []
    if layout == "summary_grid":
        if not summaries:
            raise ConfigError("no summary rows to plot")
        multi_regime = len({s.regime for s in summaries}) > 1
        multi_dist = len({s.dist for s in summaries}) > 1
        for panel in SUMMARY_PANELS:
            for s in sorted(summaries, key=lambda s: (s.regime, s.cls, s.dist, s.n)):
                parts = ([s.regime] if multi_regime else []) + ([s.dist] if multi_dist else []) + [s.cls]
                value = {
                    "success_rate": s.success_rate,
                    "avg_generations": s.avg_generations_success,
                    "bene_per_gen": s.avg_bene_per_gen,
                    "neut_per_gen": s.avg_neut_per_gen,
                }[panel]
                rows.append((panel, _series_name(parts), str(s.n), _fmt(value)))
    elif layout == "fitness_grid":
        if not trajectories:
            raise ConfigError("no trajectories to plot")
        multi_regime = len({k[0] for k in trajectories}) > 1
        multi_dist = len({k[3] for k in trajectories}) > 1
        for key in sorted(trajectories):
            regime, cls, n, dist = key
            series_list = trajectories[key]
            if not series_list or all(len(s) == 0 for s in series_list):
                continue
            span = max(len(s) for s in series_list)
            padded = [s + [s[-1]] * (span - len(s)) for s in series_list]
            parts = ([regime] if multi_regime else []) + ([dist] if multi_dist else []) + [f"n{n}"]
            name = _series_name(parts)
            for g in range(span):
                mean = sum(p[g] for p in padded) / len(padded)
                rows.append((cls, name, str(g), _fmt(mean)))
    else:  # per_class_dist_grid
        if not summaries:
            raise ConfigError("no summary rows to plot")
        multi_regime = len({s.regime for s in summaries}) > 1
        for s in sorted(summaries, key=lambda s: (s.cls, s.regime, s.dist, s.n)):
            parts = ([s.regime] if multi_regime else []) + [s.dist]
            rows.append((s.cls, _series_name(parts), str(s.n), _fmt(s.success_rate)))

    plots_dir = Path(outdir) / "plots"
    plots_dir.mkdir(parents=True, exist_ok=True)
    path = plots_dir / f"{LAYOUTS[layout]}.csv"
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["panel", "series", "x", "y"])
        w.writerows(rows)
    return path
