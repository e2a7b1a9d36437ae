from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph on vertices ``0..order-1``.

    ``adjacency[v]`` is the frozenset of neighbours of ``v``. Construction
    checks symmetry, loop-freedom and index range.
    """

    order: int
    adjacency: tuple[frozenset[int], ...]
    _masks: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.order < 0:
            raise ValueError("order must be non-negative")
        adj = tuple(frozenset(nb) for nb in self.adjacency)
        if len(adj) != self.order:
            raise ValueError(f"adjacency has {len(adj)} rows for order {self.order}")
        for v, nb in enumerate(adj):
            for u in nb:
                if not 0 <= u < self.order:
                    raise ValueError(f"neighbour {u} of {v} out of range")
                if u == v:
                    raise ValueError(f"self-loop at {v}")
                if v not in adj[u]:
                    raise ValueError(f"asymmetric adjacency between {v} and {u}")
        object.__setattr__(self, "adjacency", adj)
        object.__setattr__(
            self, "_masks", tuple(sum(1 << u for u in nb) for nb in adj)
        )

    @classmethod
    def from_edges(cls, order: int, edges: Iterable[tuple[int, int]]) -> Graph:
        adj: list[set[int]] = [set() for _ in range(order)]
        for u, v in edges:
            if not (0 <= u < order and 0 <= v < order):
                raise ValueError(f"edge {u}-{v} out of range for order {order}")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            adj[u].add(v)
            adj[v].add(u)
        return cls(order, tuple(frozenset(s) for s in adj))

    @property
    def masks(self) -> tuple[int, ...]:
        """Neighbourhoods as integer bitsets (bit ``u`` set iff ``u`` adjacent)."""
        return self._masks

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """Sorted edge list with ``u < v``."""
        return tuple(
            (u, v) for u in range(self.order) for v in sorted(self.adjacency[u]) if u < v
        )

    @property
    def size(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.order and v in self.adjacency[u]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])


def is_connected(g: Graph) -> bool:
    """True iff every vertex is reachable from vertex 0.

    The single-vertex graph is connected; the empty graph is not.
    """
    if g.order == 0:
        return False
    masks = g.masks
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        while frontier:
            low = frontier & -frontier
            nxt |= masks[low.bit_length() - 1]
            frontier ^= low
        frontier = nxt & ~seen
        seen |= frontier
    return seen == (1 << g.order) - 1
