"""Command-line interface.

Subcommands: ``run`` (one trial, JSON result on stdout), ``sweep`` (full
experiment grid), ``summarize`` and ``plot-data`` (regenerate CSVs from a
finished sweep's raw files). Exit codes: 0 success, 1 usage or
configuration error, 2 the experiment ran but did not meet its success
condition.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .boolfn import CLASSES
from .engine import (
    OUTCOME_SUCCESS,
    REGIMES,
    TrialConfig,
    result_to_json,
    run_trial,
)
from .errors import ConfigError
from .harness import (
    DEFAULT_DIMS,
    LAYOUTS,
    ExperimentConfig,
    emit_plot_data,
    load_cells,
    run_experiment,
    summarize_directory,
    trajectories_from_cells,
    write_summary_csv,
)
from .sampling import parse_dist

SEED_ENV = "EVOLAB_SEED"


class _Parser(argparse.ArgumentParser):
    # usage errors exit 1; argparse's default of 2 would collide with the
    # "ran but failed" code
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(f"{self.prog}: error: {message}")


class _UsageError(Exception):
    pass


def _add_engine_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--samples", type=int, default=1000, help="per-generation sample size s")
    p.add_argument("--tolerance", type=float, default=0.01, help="mutation tolerance t")
    p.add_argument("--epsilon", type=float, default=0.05, help="error parameter; success needs perf > 1 - epsilon")
    p.add_argument("--validation-size", type=int, default=5000, help="validation set size")
    p.add_argument("--max-gens", type=int, default=500, help="generation cap")


def build_parser() -> _Parser:
    parser = _Parser(prog="evolab", description=__doc__, formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser(
        "run",
        help="run one trial and print its JSON result",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    run_p.add_argument("--class", dest="cls", required=True, choices=CLASSES, help="function class")
    run_p.add_argument("--n", type=int, required=True, help="input dimension")
    run_p.add_argument("--dist", default="uniform", help="distribution, e.g. uniform | binomial:p=0.25 | beta:a=2,b=5,t=0.5 | bernoulli:p=0.75")
    run_p.add_argument("--regime", default="standard", choices=REGIMES, help="experimental regime")
    run_p.add_argument("--init", default=None, help="initial hypothesis: random | empty | subset:<k> | near_target (default: regime's choice)")
    run_p.add_argument("--seed", type=int, default=None, help=f"trial seed (falls back to ${SEED_ENV}, then 0)")
    _add_engine_flags(run_p)

    sweep_p = sub.add_parser(
        "sweep",
        help="run a full experiment grid and persist artifacts",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    sweep_p.add_argument("--config", default=None, help="JSON experiment config; flags override file values")
    sweep_p.add_argument("--out", default=None, help="output directory (required here or in the config)")
    sweep_p.add_argument("--class", dest="cls", default=None, help="comma-separated class list")
    sweep_p.add_argument("--regime", default=None, help="comma-separated regime list")
    sweep_p.add_argument("--dims", default=None, help="comma-separated dimension list")
    sweep_p.add_argument("--dist", default=None, help="comma-separated distribution list")
    sweep_p.add_argument("--trials", type=int, default=None, help="trials per cell (default: 30 standard, 5 otherwise)")
    sweep_p.add_argument("--seed", type=int, default=None, help=f"master seed (falls back to ${SEED_ENV}, then 0)")
    sweep_p.add_argument("--workers", type=int, default=None, help="parallel trial workers (default: available cores)")
    _add_engine_flags(sweep_p)

    sum_p = sub.add_parser("summarize", help="regenerate summary.csv from a sweep directory")
    sum_p.add_argument("--in", dest="indir", required=True, help="sweep output directory")
    sum_p.add_argument("--out", default=None, help="summary path (default: <in>/summary.csv)")

    plot_p = sub.add_parser("plot-data", help="emit tidy plot CSVs from a sweep directory")
    plot_p.add_argument("--in", dest="indir", required=True, help="sweep output directory")
    plot_p.add_argument("--layout", required=True, help=f"one of: {', '.join(sorted(LAYOUTS))}")

    return parser


def _env_seed() -> int:
    raw = os.environ.get(SEED_ENV, "").strip()
    if not raw:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"${SEED_ENV} must be an integer, got {raw!r}") from None


def _parse_init(text: str | None) -> tuple[str | None, int | None]:
    if text is None:
        return None, None
    text = text.strip().lower()
    if text in ("random", "near_target"):
        return text, None
    if text == "empty":
        return "fixed_empty", None
    if text.startswith("subset"):
        _, _, k = text.partition(":")
        try:
            return "fixed_subset", int(k) if k else 10
        except ValueError:
            raise ConfigError(f"bad subset size in --init {text!r}") from None
    raise ConfigError(f"unknown init {text!r}; valid: random, empty, subset:<k>, near_target")


def cmd_run(args) -> int:
    init_mode, subset = _parse_init(args.init)
    cfg = TrialConfig(
        cls=args.cls,
        n=args.n,
        dist=parse_dist(args.dist),
        regime=args.regime,
        init_mode=init_mode,
        init_subset_size=subset if subset is not None else 10,
        samples=args.samples,
        validation_size=args.validation_size,
        tolerance=args.tolerance,
        epsilon=args.epsilon,
        max_generations=args.max_gens,
        seed=args.seed if args.seed is not None else _env_seed(),
    )
    cfg.validate()
    result = run_trial(cfg)
    sys.stdout.write(result_to_json(result))
    return 0 if result.outcome == OUTCOME_SUCCESS else 2


def _split(text: str) -> list[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


def _sweep_config(args) -> ExperimentConfig:
    file_cfg: dict = {}
    if args.config:
        path = Path(args.config)
        try:
            file_cfg = json.loads(path.read_text())
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
        if not isinstance(file_cfg, dict):
            raise ConfigError(f"config {path} must hold a JSON object")

    def pick(flag, key, fallback):
        if flag is not None:
            return flag
        return file_cfg.get(key, fallback)

    out = args.out or file_cfg.get("out")
    if not out:
        raise ConfigError("an output directory is required (--out or config 'out')")
    classes = _split(args.cls) if args.cls else list(file_cfg.get("classes", CLASSES))
    regimes = _split(args.regime) if args.regime else list(file_cfg.get("regimes", ["standard"]))
    if args.dims is not None:
        dims = [int(v) for v in _split(args.dims)]
    else:
        dims = [int(v) for v in file_cfg.get("dims", DEFAULT_DIMS)]
    dist_texts = _split(args.dist) if args.dist else list(file_cfg.get("dists", ["uniform"]))
    seed = args.seed if args.seed is not None else file_cfg.get("master_seed")
    return ExperimentConfig(
        out=out,
        regimes=tuple(regimes),
        classes=tuple(classes),
        dims=tuple(dims),
        dists=tuple(parse_dist(t) for t in dist_texts),
        trials=pick(args.trials, "trials", None),
        master_seed=seed if seed is not None else _env_seed(),
        samples=pick(args.samples if args.samples != 1000 else None, "samples", 1000),
        validation_size=pick(
            args.validation_size if args.validation_size != 5000 else None, "validation_size", 5000
        ),
        tolerance=pick(args.tolerance if args.tolerance != 0.01 else None, "tolerance", 0.01),
        epsilon=pick(args.epsilon if args.epsilon != 0.05 else None, "epsilon", 0.05),
        max_generations=pick(args.max_gens if args.max_gens != 500 else None, "max_generations", 500),
        workers=pick(args.workers, "workers", None),
        support_law=file_cfg.get("support_law", "subset"),
    )


def cmd_sweep(args) -> int:
    cfg = _sweep_config(args)
    report = run_experiment(cfg, log=lambda line: print(line, file=sys.stderr))
    if report.errors:
        print(f"{len(report.errors)} trial(s) errored; see errors.json", file=sys.stderr)
        return 2
    return 0


def cmd_summarize(args) -> int:
    rows = summarize_directory(args.indir)
    out = Path(args.out) if args.out else Path(args.indir) / "summary.csv"
    write_summary_csv(rows, out)
    print(f"wrote {out}", file=sys.stderr)
    return 0


def cmd_plot_data(args) -> int:
    layout = args.layout.strip().lower()
    if layout not in LAYOUTS:
        raise ConfigError(f"unknown layout {args.layout!r}; valid: {', '.join(sorted(LAYOUTS))}")
    cells = load_cells(args.indir)
    summaries = summarize_directory(args.indir)
    trajectories = trajectories_from_cells(cells)
    path = emit_plot_data(summaries, trajectories, layout, args.indir)
    print(f"wrote {path}", file=sys.stderr)
    return 0


_COMMANDS = {
    "run": cmd_run,
    "sweep": cmd_sweep,
    "summarize": cmd_summarize,
    "plot-data": cmd_plot_data,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except ConfigError as exc:
        print(f"evolab: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
