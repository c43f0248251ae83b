#!/usr/bin/env python3
"""Benchmark: compiled directed-rounding kernels vs the pure-Python twin.

Times three workloads under each backend:

* raw kernel throughput (scalar directed ops),
* interval arithmetic throughput (composite kernels through Interval),
* the full certification pipeline (chain build + coverings + cones).

Run from the repository root:  python benchmarks/bench_kernels.py
"""

import os
import subprocess
import sys
import time

HERE = os.path.dirname(os.path.abspath(__file__))
SRC = os.path.join(HERE, os.pardir, "src")


def _run_workloads():
    sys.path.insert(0, SRC)
    from tangency.kernels import BACKEND, add_down, imul, mul_up

    rows = {"backend": BACKEND}

    n = 200_000
    t0 = time.perf_counter()
    acc = 0.0
    for i in range(n):
        acc = add_down(acc, 1e-9)
        mul_up(acc, 1.000001)
    rows["scalar_kernels_s"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    lo, hi = 1.0, 1.0 + 1e-12
    for i in range(n // 2):
        lo, hi = imul(lo, hi, 0.9999999, 1.0000001)
    rows["interval_mul_s"] = time.perf_counter() - t0

    from tangency.covering import check_chain
    from tangency.henon import build_chain, henon_family
    from tangency.projective import ChartMap, ChartPoint
    from tangency.cones import check_cone_chain

    t0 = time.perf_counter()
    chain = build_chain()
    chart = ChartMap(henon_family(), "forward")
    check_chain(list(chain.sets), chart.as_vec_map(), grid=1)
    check_cone_chain(
        list(chain.sets),
        list(chain.forms),
        lambda box: chart.derivative(ChartPoint.from_vector(box)),
    )
    rows["proof_pipeline_s"] = time.perf_counter() - t0
    return rows


def main():
    if os.environ.get("_BENCH_CHILD"):
        rows = _run_workloads()
        print("|".join(f"{k}={v}" for k, v in rows.items()))
        return

    results = []
    for pure in ("0", "1"):
        env = dict(os.environ, _BENCH_CHILD="1", TANGENCY_PURE_PYTHON=pure)
        if pure == "0":
            env.pop("TANGENCY_PURE_PYTHON")
        out = subprocess.run(
            [sys.executable, os.path.abspath(__file__)],
            env=env,
            capture_output=True,
            text=True,
            check=True,
        )
        line = out.stdout.strip().splitlines()[-1]
        results.append(dict(kv.split("=", 1) for kv in line.split("|")))

    print(f"{'workload':<22} {results[0]['backend']:>12} {results[1]['backend']:>12} {'speedup':>9}")
    for key in ("scalar_kernels_s", "interval_mul_s", "proof_pipeline_s"):
        fast = float(results[0][key])
        slow = float(results[1][key])
        ratio = slow / fast if fast > 0 else float("inf")
        print(f"{key:<22} {fast:>11.4f}s {slow:>11.4f}s {ratio:>8.2f}x")
    if results[0]["backend"] == results[1]["backend"]:
        print("note: compiled backend unavailable; both runs used pure Python")


if __name__ == "__main__":
    main()
