"""Benchmark the JIT kernels against the pure-NumPy reference backend.

Runs each hot kernel on a fixed workload with both implementations and
prints a timing table.  Usage:

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import random
import time

import numpy as np

from indexcode._kernels import _numba, _numpy
from indexcode.oracle import _rref_blocks


def workload_rank_masks(rng):
    mats = [
        np.array([rng.getrandbits(48) for _ in range(16)], dtype=np.int64)
        for _ in range(4000)
    ]

    def run(impl):
        acc = 0
        for mat in mats:
            acc += impl.rank_masks(mat)
        return acc

    return run


def workload_in_span(rng):
    basis = np.array([rng.getrandbits(40) for _ in range(14)], dtype=np.int64)
    vecs = [rng.getrandbits(40) for _ in range(8000)]

    def run(impl):
        acc = 0
        for v in vecs:
            acc += impl.in_span_masks(v, basis)
        return acc

    return run


def workload_rank_dense(rng):
    mats = [
        np.array(
            [[rng.randint(0, 1) for _ in range(80)] for _ in range(24)],
            dtype=np.uint8,
        )
        for _ in range(60)
    ]

    def run(impl):
        acc = 0
        for mat in mats:
            acc += impl.rank_dense(mat.copy())
        return acc

    return run


def workload_fitting_search(rng):
    # one dense strongly connected component, the solver's hot loop;
    # low targets are infeasible and force a full pruned traversal
    n = 7
    cands, starts, counts = [], [], []
    for i in range(n):
        allowed = [j for j in range(n) if j != i and rng.random() < 0.6]
        starts.append(len(cands))
        counts.append(1 << len(allowed))
        for pick in range(1 << len(allowed)):
            mask = 1 << i
            for k, col in enumerate(allowed):
                if (pick >> k) & 1:
                    mask ^= 1 << col
            cands.append(mask)
    args = (
        np.array(cands, dtype=np.int64),
        np.array(starts, dtype=np.int64),
        np.array(counts, dtype=np.int64),
    )

    def run(impl):
        acc = 0
        for target in range(n - 3, n):
            acc += impl.fitting_search(*args, n, target).size
        return acc

    return run


def workload_oracle_scan(rng):
    # oracle inner loop over all dim-2 sender blocks; no side info, so
    # four rows can never serve six receivers and the scan runs in full
    m = 6
    a = _rref_blocks(tuple(range(5)), 2)
    b = _rref_blocks(tuple(range(1, 6)), 2)
    side = np.zeros(m, dtype=np.int64)
    own = np.array([1 << i for i in range(m)], dtype=np.int64)

    def run(impl):
        return int(impl.oracle_scan2(a, b, side, own)[0])

    return run


def workload_first_undecodable(rng):
    m = 18
    rows = np.array([rng.getrandbits(m) for _ in range(10)], dtype=np.int64)
    side = np.array(
        [rng.getrandbits(m) & ~(1 << i) for i in range(m)], dtype=np.int64
    )
    own = np.array([1 << i for i in range(m)], dtype=np.int64)

    def run(impl):
        acc = 0
        for _ in range(5000):
            acc += impl.first_undecodable(rows, side, own)
        return acc

    return run


WORKLOADS = [
    ("rank_masks (4000 x 16x48)", workload_rank_masks),
    ("in_span_masks (8000 probes)", workload_in_span),
    ("rank_dense (60 x 24x80)", workload_rank_dense),
    ("fitting_search (7-vertex component)", workload_fitting_search),
    ("oracle_scan2 (155x155 blocks)", workload_oracle_scan),
    ("first_undecodable (5000 codes)", workload_first_undecodable),
]


def measure(run, impl, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = run(impl)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    rng = random.Random(12345)
    rows = []
    for name, factory in WORKLOADS:
        run = factory(rng)
        run(_numba)  # JIT warmup outside the timed region
        t_nb, r_nb = measure(run, _numba, args.repeat)
        t_np, r_np = measure(run, _numpy, args.repeat)
        if r_nb != r_np:
            raise SystemExit(f"backend disagreement in {name}: {r_nb} vs {r_np}")
        rows.append((name, t_nb, t_np))

    width = max(len(name) for name, _, _ in rows)
    print(f"{'kernel':<{width}}  {'numba':>10}  {'numpy':>10}  {'speedup':>8}")
    for name, t_nb, t_np in rows:
        print(
            f"{name:<{width}}  {t_nb * 1e3:>8.2f}ms  {t_np * 1e3:>8.2f}ms  "
            f"{t_np / t_nb:>7.1f}x"
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
