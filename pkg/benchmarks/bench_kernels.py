"""Benchmark the compiled kernels against the NumPy fallback.

Times the two batch-evaluation entry points on generation-shaped workloads
(one neighborhood stack against one sample batch) plus a full parity trial
through each backend. Run:

    python3 benchmarks/bench_kernels.py
"""

import os
import statistics
import sys
import time

import numpy as np

from evolab import _kernels_py

try:
    from evolab import _speedups
except ImportError:
    _speedups = None

BACKENDS = {"python": _kernels_py}
if _speedups is not None:
    BACKENDS["compiled"] = _speedups


def timeit(fn, repeats=30):
    best = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best.append(time.perf_counter() - t0)
    return statistics.median(best)


def literal_workload(n, candidates, s=1000, op=0, seed=0):
    rng = np.random.default_rng(seed)
    X = np.where(rng.random((s, n)) < 0.5, 1, -1).astype(np.int8)
    include = rng.integers(0, 2, size=(candidates, n)).astype(np.uint8)
    polarity = rng.integers(0, 2, size=(candidates, n)).astype(np.uint8) & include
    return X, include, polarity, op


def majority_workload(n, k, s=1000, seed=0):
    rng = np.random.default_rng(seed)
    X = np.where(rng.random((s, n)) < 0.5, 1, -1).astype(np.int8)
    base = np.zeros(n, dtype=np.uint8)
    base[:k] = 1
    stacks = [base]
    for i in range(k):
        for j in range(k, n):
            m = base.copy()
            m[i] = 0
            m[j] = 1
            stacks.append(m)
    return X, np.array(stacks, dtype=np.uint8)


def check_agreement():
    X, inc, pol, _ = literal_workload(20, 41, seed=3)
    for op in (0, 1, 2):
        ref = _kernels_py.literal_eval(X, inc, pol, op)
        for name, impl in BACKENDS.items():
            assert np.array_equal(impl.literal_eval(X, inc, pol, op), ref), name
    Xm, members = majority_workload(20, 10, seed=3)
    ref = _kernels_py.majority_eval(Xm, members)
    for name, impl in BACKENDS.items():
        assert np.array_equal(impl.majority_eval(Xm, members), ref), name


def trial_benchmark(backend_name):
    # full 500-generation parity trial, the engine's worst case per generation
    env = os.environ.get("EVOLAB_KERNELS")
    os.environ["EVOLAB_KERNELS"] = backend_name
    for mod in list(sys.modules):
        if mod.startswith("evolab"):
            del sys.modules[mod]
    from evolab.engine import TrialConfig, run_trial

    t0 = time.perf_counter()
    run_trial(TrialConfig(cls="parity", n=20, seed=123, max_generations=500))
    elapsed = time.perf_counter() - t0
    if env is None:
        del os.environ["EVOLAB_KERNELS"]
    else:
        os.environ["EVOLAB_KERNELS"] = env
    return elapsed


def main():
    check_agreement()
    cases = [
        ("conjunction n=20 c=41", "literal_eval", literal_workload(20, 41, op=0)),
        ("disjunction n=50 c=101", "literal_eval", literal_workload(50, 101, op=1)),
        ("parity      n=20 c=21", "literal_eval", literal_workload(20, 21, op=2)),
        ("majority    n=20 c=121", "majority_eval", majority_workload(20, 10)),
        ("majority    n=50 c=626", "majority_eval", majority_workload(50, 25)),
    ]
    print(f"available backends: {', '.join(BACKENDS)}")
    print(f"{'workload':<24} " + " ".join(f"{n:>12}" for n in BACKENDS) + "   speedup")
    for label, entry, args in cases:
        times = {}
        for name, impl in BACKENDS.items():
            fn = getattr(impl, entry)
            times[name] = timeit(lambda: fn(*args))
        row = f"{label:<24} " + " ".join(f"{times[n] * 1e3:>10.3f}ms" for n in BACKENDS)
        if "compiled" in times:
            row += f"   {times['python'] / times['compiled']:>6.2f}x"
        print(row)
    print()
    for name in BACKENDS:
        print(f"full parity trial (n=20, 500 gens) via {name}: {trial_benchmark(name):.2f}s")


if __name__ == "__main__":
    main()
