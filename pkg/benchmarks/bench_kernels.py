"""Compare the compiled and pure-Python search kernels on fixed workloads.

    python benchmarks/bench_kernels.py [--repeat N] [--quick]

Both kernels must return identical reports; the script exits 1 if not.
"""
from __future__ import annotations

import argparse
import statistics
import sys
import time

from gallai_lab.generators import GeneratorSpec, complete_graph, generate, spider_graph
from gallai_lab.graph import Graph
from gallai_lab.paths import KERNELS, enumerate_longest_paths


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + inner + [(i, i + 5) for i in range(5)])


def workloads(quick: bool) -> list[tuple[str, Graph]]:
    def rc(order: int, seed: int) -> Graph:
        return generate(GeneratorSpec("random_connected",
                                      {"order": order, "p_num": 1, "p_den": 4}, seed))

    items = [
        ("petersen", petersen()),
        ("K8", complete_graph(8)),
        ("spider 5x4", spider_graph(5, 4)),
        ("G(14, 1/4) seed 3", rc(14, 3)),
        ("G(18, 1/4) seed 7", rc(18, 7)),
    ]
    if not quick:
        items.append(("G(18, 1/4) seed 1", rc(18, 1)))
    return items


def timed(g: Graph, kernel: str, repeat: int):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        report = enumerate_longest_paths(g, kernel=kernel)
        times.append(time.perf_counter() - start)
    return report, statistics.median(times)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--quick", action="store_true", help="skip the largest workload")
    args = parser.parse_args(argv)
    if "cython" not in KERNELS:
        print("compiled kernel not built; run `pip install -e . --no-build-isolation`")
        return 1

    header = f"{'workload':<20}{'nodes':>12}{'paths':>9}{'cython ms':>12}{'python ms':>12}{'speedup':>9}"
    print(header)
    print("-" * len(header))
    ok = True
    for name, g in workloads(args.quick):
        fast, t_fast = timed(g, "cython", args.repeat)
        slow, t_slow = timed(g, "python", args.repeat)
        ok &= fast == slow
        print(f"{name:<20}{fast.explored_nodes:>12,}{fast.path_count:>9,}"
              f"{t_fast * 1e3:>12.2f}{t_slow * 1e3:>12.1f}{t_slow / t_fast:>8.0f}x"
              + ("" if fast == slow else "  MISMATCH"))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
