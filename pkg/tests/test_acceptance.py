"""End-to-end acceptance criteria.

One test per criterion; each prints an [ACCEPTANCE] PASS/FAIL line (run with
-s to stream them) and then asserts the criterion exactly as stated, with
tolerances pinned here. All experiment criteria run at fixed master seeds,
so every outcome below is reproducible bit for bit.

Criteria 4 and 5 assert zero success rates for parity (n=10) and the
no-neutral constrained cells. Under this engine's dynamics those rates are
not actually zero (neutral drift finds small parity targets, and empirical
noise lets greedy majority runs cross plateaus), so parts of those
assertions fail by design rather than be weakened; docs/notes explain the
measured rates.
"""

import time

import numpy as np
import pytest

from evolab.boolfn import CLASSES
from evolab.engine import TrialConfig, run_trial
from evolab.harness import (
    ExperimentConfig,
    load_cells,
    run_experiment,
    summarize_directory,
)
from evolab.mutation import classify
from evolab.perf import empirical_perf, exact_perf
from evolab.sampling import UNIFORM, bit_probability, parse_dist, sample_batch
from evolab.boolfn import (
    MONOTONE_CONJUNCTION,
    TargetFunction,
    literal_vector,
    sample_target,
)

from conftest import random_hypothesis

SEED_PRIMARY = 20260809
SEED_RETRY = 20260810


def report(num: int, name: str, ok: bool, detail: str = ""):
    line = f"[ACCEPTANCE] criterion {num:02d} {'PASS' if ok else 'FAIL'}: {name}"
    if detail:
        line += f" ({detail})"
    print(line)
    assert ok, line


@pytest.fixture(scope="session")
def c3_sweep(tmp_path_factory):
    out = tmp_path_factory.mktemp("c3")
    cfg = ExperimentConfig(
        out=out,
        regimes=("standard",),
        classes=("monotone_conjunction", "monotone_disjunction"),
        dims=(5, 10, 20, 30, 50),
        dists=(UNIFORM,),
        trials=10,
        master_seed=1003,
    )
    report_obj = run_experiment(cfg)
    return out, report_obj.summaries


@pytest.fixture(scope="session")
def c4_sweep(tmp_path_factory):
    out = tmp_path_factory.mktemp("c4")
    cfg = ExperimentConfig(
        out=out,
        regimes=("standard",),
        classes=("parity",),
        dims=(10, 20),
        dists=(UNIFORM,),
        trials=10,
        master_seed=1004,
    )
    report_obj = run_experiment(cfg)
    return out, report_obj.summaries


@pytest.fixture(scope="session")
def c5_sweep(tmp_path_factory):
    out = tmp_path_factory.mktemp("c5")
    cfg = ExperimentConfig(
        out=out,
        regimes=("no_neutral",),
        classes=("majority", "parity"),
        dims=(5, 10, 20, 30, 50),
        dists=(UNIFORM,),
        trials=5,
        master_seed=1005,
    )
    report_obj = run_experiment(cfg)
    return out, report_obj.summaries


def test_criterion_01_exact_perf_oracle():
    t0 = time.perf_counter()
    f = TargetFunction(MONOTONE_CONJUNCTION, 2, np.array([1, 0], np.uint8), np.zeros(2, np.uint8))
    r = literal_vector([1, 1])
    value = exact_perf(f, r, MONOTONE_CONJUNCTION, UNIFORM)
    report(1, "exact-perf oracle", abs(value - 0.5) <= 1e-12,
           f"value={value}, {time.perf_counter() - t0:.2f}s")


def test_criterion_02_empirical_concentration():
    t0 = time.perf_counter()

    def violations(seed):
        rng = np.random.default_rng(seed)
        bad = 0
        for i in range(20):
            cls = CLASSES[i % len(CLASSES)]
            f = sample_target(cls, 10, rng)
            r = random_hypothesis(cls, 10, rng)
            X = sample_batch(UNIFORM, 10, 10_000, rng)
            bad += abs(empirical_perf(f, r, cls, X) - exact_perf(f, r, cls, UNIFORM)) > 0.04
        return bad

    bad = violations(SEED_PRIMARY)
    if bad > 1:  # documented repeat-once rule
        bad = violations(SEED_RETRY)
    report(2, "empirical concentration 4/sqrt(s)", bad <= 1,
           f"violations={bad}/20, {time.perf_counter() - t0:.2f}s")


def test_criterion_03_monotone_trivially_evolvable(c3_sweep):
    _, rows = c3_sweep
    bad = [
        f"{r.cls}/n{r.n}: rate={r.success_rate} avg={r.avg_generations_success}"
        for r in rows
        if r.success_rate != 1.0 or r.avg_generations_success is None or r.avg_generations_success > 5
    ]
    report(3, "monotone classes trivially evolvable", not bad, "; ".join(bad) or "10 cells clean")


def test_criterion_04_parity_not_evolvable(c4_sweep):
    _, rows = c4_sweep
    rates = {f"n{r.n}": r.success_rate for r in rows}
    report(4, "parity non-evolvable at n=10,20", all(v == 0.0 for v in rates.values()), f"rates={rates}")


def test_criterion_05_neutral_drift_necessity(c5_sweep):
    _, rows = c5_sweep
    checked = {}
    for r in rows:
        if r.cls == "majority" and r.n in (20, 30):
            checked[f"majority/n{r.n}"] = r.success_rate
        if r.cls == "parity":
            checked[f"parity/n{r.n}"] = r.success_rate
    report(5, "no-neutral regime fails on majority(20,30) and parity(all)",
           all(v == 0.0 for v in checked.values()),
           ", ".join(f"{k}={v}" for k, v in checked.items() if v != 0.0) or "7 cells at zero")


def test_criterion_06_no_neutral_monotonicity(c5_sweep):
    out, _ = c5_sweep
    cells = load_cells(out)
    steps = violations = 0
    for results in cells.values():
        for res in results:
            for rec in res.records:
                if rec.kind == "beneficial":
                    steps += 1
                    violations += not (rec.train_perf >= rec.base_perf + res.config.tolerance)
    report(6, "accepted no-neutral steps gain >= t", steps > 0 and violations == 0,
           f"{steps} accepted steps, {violations} below tolerance")


def test_criterion_07_sampler_marginals():
    t0 = time.perf_counter()
    specs = [
        parse_dist("uniform"),
        parse_dist("binomial:p=0.25"),
        parse_dist("beta:a=2,b=5,t=0.5"),
        parse_dist("bernoulli:p=0.75"),
    ]

    def deviations(seed):
        out = []
        for d in specs:
            q = bit_probability(d)
            X = sample_batch(d, 100, 1000, np.random.default_rng(seed))
            sigma = np.sqrt(q * (1 - q) / X.size)
            out.append(abs(float(np.mean(X == 1)) - q) / sigma)
        return out

    devs = deviations(SEED_PRIMARY)
    if max(devs) > 3:
        devs = deviations(SEED_RETRY)
    report(7, "per-bit marginals within 3 sigma over 1e5 bits", max(devs) <= 3,
           f"max={max(devs):.2f} sigma, {time.perf_counter() - t0:.2f}s")


def test_criterion_08_determinism_and_scheduling(tmp_path_factory):
    import hashlib

    t0 = time.perf_counter()

    def digest_tree(root):
        return {
            str(p.relative_to(root)): hashlib.sha256(p.read_bytes()).hexdigest()
            for p in sorted(root.rglob("*"))
            if p.is_file()
        }

    def sweep(dirname, workers):
        out = tmp_path_factory.mktemp(dirname)
        run_experiment(
            ExperimentConfig(
                out=out,
                regimes=("standard",),
                classes=("monotone_conjunction", "parity"),
                dims=(5, 10),
                dists=(UNIFORM,),
                trials=3,
                master_seed=42,
                workers=workers,
            )
        )
        return digest_tree(out)

    same = sweep("c8_serial", 1) == sweep("c8_parallel", 8)
    report(8, "byte-identical artifacts across reruns and worker counts", same,
           f"{time.perf_counter() - t0:.2f}s")


def test_criterion_09_classification_oracle():
    rng = np.random.default_rng(SEED_PRIMARY)
    mismatches = 0
    for _ in range(1000):
        base = float(rng.uniform(-1, 1))
        perfs = rng.uniform(-1, 1, size=int(rng.integers(1, 64)))
        t = float(rng.uniform(1e-4, 0.3))
        cl = classify(base, perfs, t)
        bene = [i for i, v in enumerate(perfs) if v >= base + t]
        neut = [i for i, v in enumerate(perfs) if v >= base - t and v < base + t]
        mismatches += (cl.bene, cl.neut) != (bene, neut)
    report(9, "classification agrees with naive oracle", mismatches == 0,
           f"{mismatches} mismatches in 1000")


def test_criterion_10_self_membership_liveness(c3_sweep, c4_sweep):
    terminated = total = 0
    for out, _ in (c3_sweep, c4_sweep):
        for results in load_cells(out).values():
            for res in results:
                for rec in res.records:
                    total += 1
                    terminated += rec.kind == "terminated"
    report(10, "neutral-allowed runs never terminate", total > 0 and terminated == 0,
           f"{terminated} terminated of {total} records")
