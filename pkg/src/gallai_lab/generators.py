"""Deterministic graph families and a naive exhaustive enumerator.

All randomness comes from :class:`gallai_lab.rng.XorShift64Star`, so a
:class:`GeneratorSpec` maps to the same graph on every platform.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from typing import Mapping

from .errors import ConnectivityRetriesExhausted, InvalidParams
from .graph import Graph, is_connected
from .rng import XorShift64Star

FAMILIES = ("path", "cycle", "star", "spider", "complete", "random_tree", "random_connected")
MAX_CONNECT_RETRIES = 10_000


@dataclass(frozen=True)
class GeneratorSpec:
    """``family`` plus integer ``params`` plus a 64-bit ``seed``.

    Parameters per family:

    ========================  ==========================================
    path, cycle, complete     ``order``
    star                      ``leaves`` (or ``order`` = leaves + 1)
    spider                    ``legs``, ``leg_length``
    random_tree               ``order``
    random_connected          ``order``, ``p_num``, ``p_den`` (edge prob.)
    ========================  ==========================================
    """

    family: str
    params: Mapping[str, int] = field(default_factory=dict)
    seed: int = 0

    def __hash__(self) -> int:
        return hash((self.family, tuple(sorted(self.params.items())), self.seed))


def _param(spec: GeneratorSpec, name: str, minimum: int) -> int:
    try:
        value = spec.params[name]
    except KeyError:
        raise InvalidParams(f"{spec.family} requires parameter {name!r}") from None
    if not isinstance(value, int) or isinstance(value, bool):
        raise InvalidParams(f"{name} must be an integer, got {value!r}")
    if value < minimum:
        raise InvalidParams(f"{spec.family}: {name} must be >= {minimum}, got {value}")
    return value


def path_graph(order: int) -> Graph:
    return Graph.from_edges(order, [(i, i + 1) for i in range(order - 1)])


def cycle_graph(order: int) -> Graph:
    return Graph.from_edges(order, [(i, (i + 1) % order) for i in range(order)])


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_graph(order: int) -> Graph:
    return Graph.from_edges(order, [(i, j) for j in range(order) for i in range(j)])


def spider_graph(legs: int, leg_length: int) -> Graph:
    """Centre 0; leg ``i`` is the chain ``1+i*leg_length, ..., (i+1)*leg_length``."""
    edges = []
    for i in range(legs):
        start = 1 + i * leg_length
        edges.append((0, start))
        edges.extend((start + j, start + j + 1) for j in range(leg_length - 1))
    return Graph.from_edges(1 + legs * leg_length, edges)


def random_tree(order: int, rng: XorShift64Star) -> Graph:
    """Uniform labelled tree via a random Prüfer sequence."""
    if order <= 2:
        return path_graph(order)
    seq = [rng.below(order) for _ in range(order - 2)]
    degree = [1] * order
    for v in seq:
        degree[v] += 1
    edges = []
    for v in seq:
        leaf = next(u for u in range(order) if degree[u] == 1)
        edges.append((leaf, v))
        degree[leaf] -= 1
        degree[v] -= 1
    u, w = (x for x in range(order) if degree[x] == 1)
    edges.append((u, w))
    return Graph.from_edges(order, edges)


def random_connected(order: int, p: Fraction, rng: XorShift64Star) -> Graph:
    """Rejection-sample G(order, p) until connected."""
    pairs = [(i, j) for j in range(order) for i in range(j)]
    for _ in range(MAX_CONNECT_RETRIES):
        g = Graph.from_edges(
            order, [e for e in pairs if rng.chance(p.numerator, p.denominator)]
        )
        if is_connected(g):
            return g
    raise ConnectivityRetriesExhausted(
        f"no connected G({order}, {p}) in {MAX_CONNECT_RETRIES} samples"
    )


def generate(spec: GeneratorSpec) -> Graph:
    fam = spec.family
    if fam == "path":
        return path_graph(_param(spec, "order", 1))
    if fam == "cycle":
        return cycle_graph(_param(spec, "order", 3))
    if fam == "complete":
        return complete_graph(_param(spec, "order", 1))
    if fam == "star":
        if "leaves" in spec.params:
            return star_graph(_param(spec, "leaves", 1))
        return star_graph(_param(spec, "order", 2) - 1)
    if fam == "spider":
        return spider_graph(_param(spec, "legs", 3), _param(spec, "leg_length", 1))
    if not 0 <= spec.seed < 1 << 64:
        raise InvalidParams("seed must be a 64-bit unsigned integer")
    rng = XorShift64Star(spec.seed)
    if fam == "random_tree":
        return random_tree(_param(spec, "order", 1), rng)
    if fam == "random_connected":
        order = _param(spec, "order", 1)
        num = _param(spec, "p_num", 0)
        den = _param(spec, "p_den", 1)
        if num > den or (num == 0 and order > 1):
            raise InvalidParams(f"edge probability {num}/{den} unusable for order {order}")
        return random_connected(order, Fraction(num, den), rng)
    raise InvalidParams(f"unknown family {fam!r}; expected one of {', '.join(FAMILIES)}")


# -- exhaustive enumeration of small connected graphs -------------------------

def _refine(g: Graph) -> list[int]:
    colors = [len(nb) for nb in g.adjacency]
    while True:
        sigs = [(colors[v], tuple(sorted(colors[u] for u in g.adjacency[v])))
                for v in range(g.order)]
        ranking = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranking[s] for s in sigs]
        if len(ranking) == len(set(colors)):
            return new
        colors = new


def canonical_code(g: Graph) -> tuple[int, int]:
    """Isomorphism-invariant code: equal codes iff isomorphic graphs.

    Colour refinement fixes the cell structure; the best adjacency bitstring
    over all orderings that respect the cells is the code. Exponential in the
    cell sizes, intended for order <= 8.
    """
    colors = _refine(g)
    cells = [[v for v in range(g.order) if colors[v] == c] for c in sorted(set(colors))]
    best = -1
    for choice in product(*(permutations(cell) for cell in cells)):
        order = [v for part in choice for v in part]
        code = 0
        for j in range(1, g.order):
            nb = g.adjacency[order[j]]
            for i in range(j):
                code = (code << 1) | (order[i] in nb)
        if code > best:
            best = code
    return g.order, best


@lru_cache(maxsize=None)
def connected_graphs(order: int) -> tuple[Graph, ...]:
    """All connected graphs of ``order`` vertices, one per isomorphism class.

    Every connected graph has a non-cut vertex, so each class arises by adding
    a vertex with a nonempty neighbourhood to a connected graph one smaller.
    Output order is deterministic (by edge count, then canonical code).
    """
    if order < 1:
        return ()
    if order > 8:
        raise InvalidParams("naive enumerator supports order <= 8")
    if order == 1:
        return (Graph.from_edges(1, []),)
    seen: dict[tuple[int, int], Graph] = {}
    new = order - 1
    for base in connected_graphs(order - 1):
        for subset in range(1, 1 << new):
            edges = list(base.edges) + [(u, new) for u in range(new) if subset >> u & 1]
            g = Graph.from_edges(order, edges)
            code = canonical_code(g)
            if code not in seen:
                seen[code] = g
    return tuple(seen[c] for c in sorted(seen, key=lambda c: (seen[c].size, c)))
