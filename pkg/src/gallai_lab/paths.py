"""Exact longest paths: order, full enumeration, and a brute-force oracle.

Paths are tuples of vertex indices. "Order" always means the number of
vertices on a path, never the number of edges.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import permutations
from typing import Sequence

from . import _enum_py
from .errors import EmptyGraph, OrderTooLargeForOracle
from .graph import Graph

try:
    if os.environ.get("GALLAI_LAB_PURE") == "1":
        raise ImportError("pure-Python kernel forced by GALLAI_LAB_PURE")
    from . import _enum as _enum_c
except ImportError:
    _enum_c = None

#: Name of the kernel used by default: ``"cython"`` or ``"python"``.
KERNEL = "cython" if _enum_c is not None else "python"
KERNELS = {"python": _enum_py.enumerate_paths}
if _enum_c is not None:
    KERNELS["cython"] = _enum_c.enumerate_paths

DEFAULT_PATH_CAP = 200_000
UNLIMITED = (1 << 62)
ORACLE_MAX_ORDER = 10

VertexPath = tuple[int, ...]


def canonical(seq: Sequence[int]) -> VertexPath:
    """The lexicographically smaller of ``seq`` and its reversal."""
    t = tuple(seq)
    r = t[::-1]
    return t if t <= r else r


def is_path(g: Graph, seq: Sequence[int]) -> bool:
    if not seq:
        return False
    if any(not (isinstance(v, int) and 0 <= v < g.order) for v in seq):
        return False
    if len(set(seq)) != len(seq):
        return False
    return all(b in g.adjacency[a] for a, b in zip(seq, seq[1:]))


@dataclass(frozen=True)
class LongestPathReport:
    order_L: int
    paths: tuple[VertexPath, ...]
    truncated: bool
    explored_nodes: int
    # total number of canonical longest paths, exact even when truncated
    path_count: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "paths", tuple(self.paths))


def _kernel(name: str | None):
    return KERNELS[name or KERNEL]


def _check(g: Graph) -> None:
    if g.order == 0:
        raise EmptyGraph("graph has no vertices")


def longest_path_order(g: Graph, *, node_budget: int | None = None,
                       kernel: str | None = None) -> int:
    """Maximum number of vertices on a simple path of ``g``."""
    _check(g)
    run = _kernel(kernel) if g.order <= 64 else _enum_py.enumerate_paths
    best, _, _, _ = run(g.masks, g.order, 0, True, node_budget or UNLIMITED, False)
    return best


def enumerate_longest_paths(g: Graph, cap: int = DEFAULT_PATH_CAP, *, prune: bool = True,
                            node_budget: int | None = None,
                            kernel: str | None = None) -> LongestPathReport:
    """All longest paths of ``g``, one per reversal pair, lexicographically sorted.

    At most ``cap`` paths are stored (the lexicographically first ones);
    ``order_L`` and ``path_count`` stay exact. ``node_budget`` bounds the
    number of search-tree nodes, raising
    :class:`~gallai_lab.errors.SearchBudgetExceeded` when exceeded.
    """
    _check(g)
    if cap < 1:
        raise ValueError("cap must be >= 1")
    run = _kernel(kernel) if g.order <= 64 else _enum_py.enumerate_paths
    best, paths, count, nodes = run(g.masks, g.order, cap, prune, node_budget or UNLIMITED)
    return LongestPathReport(best, tuple(paths), count > cap, nodes, count)


def brute_force_longest(g: Graph) -> LongestPathReport:
    """Oracle: try vertex sequences of every length, longest first.

    Shares no code with the search kernels. Factorial cost, so order <= 10.
    """
    _check(g)
    n = g.order
    if n > ORACLE_MAX_ORDER:
        raise OrderTooLargeForOracle(f"order {n} > {ORACLE_MAX_ORDER}")
    adj = g.adjacency
    tried = 0
    for r in range(n, 0, -1):
        found = []
        for seq in permutations(range(n), r):
            tried += 1
            if seq[0] > seq[-1]:
                continue
            if all(seq[i + 1] in adj[seq[i]] for i in range(r - 1)):
                found.append(seq)
        if found:
            return LongestPathReport(r, tuple(sorted(found)), False, tried, len(found))
    raise AssertionError("unreachable: a nonempty graph has a one-vertex path")
