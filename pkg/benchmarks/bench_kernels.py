#!/usr/bin/env python3
"""Compare the compiled enumeration kernel against the pure-Python fallback.

Workloads: exhaustive solving of random 3-CNF at growing variable counts,
extension checking across the whole gadget catalogue, and the explicit
witness refutations.  Forcing a backend for a subprocess:

    MONO3SAT_BACKEND=python python benchmarks/bench_kernels.py --inner
"""

from __future__ import annotations

import argparse
import json
import os
import random
import subprocess
import sys
import time


def _workloads():
    from mono3sat import gadgets, oracle, witnesses
    from mono3sat.formulas import SAT, Clause, CnfInstance, Literal

    def random_cnf(n, m, seed):
        rng = random.Random(seed)
        cls = []
        for _ in range(m):
            vs = rng.sample(range(n), 3)
            cls.append(Clause(tuple(Literal(v, rng.random() < 0.5) for v in vs)))
        return CnfInstance(n, tuple(cls), SAT)

    results = {}

    for n in (16, 20, 22):
        insts = [random_cnf(n, int(4.3 * n), seed) for seed in range(5)]
        t0 = time.perf_counter()
        for inst in insts:
            oracle.solve_exhaustive(inst)
        results[f"exhaustive n={n} (5 instances)"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    for _ in range(20):
        for kind in gadgets.GADGET_NAMES:
            assert gadgets.verify_gadget(kind).ok
    results["gadget catalogue x20"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    for name in ("nine_var", "ss_bar", "hitting27"):
        for _ in range(30):
            assert oracle.solve_exhaustive(witnesses.known_unsat(name)).status == "unsat"
    results["witness refutations x30"] = time.perf_counter() - t0

    return results


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--inner", action="store_true", help=argparse.SUPPRESS)
    args = parser.parse_args()

    if args.inner:
        from mono3sat import oracle

        print(json.dumps({"backend": oracle.backend_name(), "results": _workloads()}))
        return

    rows = {}
    for backend in ("cython", "python"):
        env = dict(os.environ, MONO3SAT_BACKEND=backend)
        proc = subprocess.run(
            [sys.executable, os.path.abspath(__file__), "--inner"],
            env=env, capture_output=True, text=True,
        )
        if proc.returncode != 0:
            print(f"{backend}: failed\n{proc.stderr}", file=sys.stderr)
            continue
        payload = json.loads(proc.stdout)
        assert payload["backend"] == backend
        rows[backend] = payload["results"]

    if not rows:
        sys.exit(1)
    names = list(next(iter(rows.values())))
    width = max(len(n) for n in names)
    header = f"{'workload':<{width}}  " + "  ".join(f"{b:>10}" for b in rows)
    print(header)
    print("-" * len(header))
    for name in names:
        cells = "  ".join(f"{rows[b][name]:>9.3f}s" for b in rows)
        print(f"{name:<{width}}  {cells}")
    if len(rows) == 2:
        print()
        for name in names:
            ratio = rows["python"][name] / max(rows["cython"][name], 1e-9)
            print(f"{name:<{width}}  python/cython = {ratio:.2f}x")


if __name__ == "__main__":
    main()
