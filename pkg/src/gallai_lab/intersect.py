"""How the longest paths of a graph intersect.

Every check takes the graph plus an optional precomputed
:class:`~gallai_lab.paths.LongestPathReport` (campaigns enumerate once and run
many checks). Indices into paths are 1-based; vertex labels stay 0-based.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterator, Sequence

import numpy as np

from .errors import DisconnectedGraph, PathsFromDifferentGraphs, TruncatedReport
from .graph import Graph, is_connected
from .paths import (
    DEFAULT_PATH_CAP,
    LongestPathReport,
    VertexPath,
    enumerate_longest_paths,
    is_path,
)

DEFAULT_TRIPLE_CAP = 50_000
PARITY_CONVENTIONS = ("vertex_count", "edge_count")


@dataclass(frozen=True)
class PairIntersection:
    common: tuple[int, ...]
    positions_a: dict[int, int]
    positions_b: dict[int, int]


@dataclass(frozen=True)
class CheckVerdict:
    """Outcome of one property check on one graph.

    ``witness`` is a JSON-ready dict, present exactly when ``holds`` is false.
    ``vacuous`` marks checks whose precondition did not apply; ``capped`` marks
    scans stopped early by a cap (so ``holds`` is only partially verified).
    """

    property_name: str
    holds: bool
    witness: dict[str, Any] | None = None
    vacuous: bool = False
    capped: bool = False
    info: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.holds == (self.witness is not None):
            raise ValueError("witness must be present iff the property fails")


def _mask(p: Sequence[int]) -> int:
    m = 0
    for v in p:
        m |= 1 << v
    return m


def _vertices(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _prepare(g: Graph, report: LongestPathReport | None, cap: int = DEFAULT_PATH_CAP,
             *, need_complete: bool = True) -> LongestPathReport:
    if not is_connected(g):
        raise DisconnectedGraph("check requires a connected graph")
    if report is None:
        report = enumerate_longest_paths(g, cap)
    if need_complete and report.truncated:
        raise TruncatedReport(
            f"{report.path_count} longest paths but only {len(report.paths)} stored"
        )
    return report


class _MaskTable:
    """Distinct vertex sets of a path list, in first-occurrence order."""

    def __init__(self, paths: Sequence[VertexPath]):
        index: dict[int, int] = {}
        self.masks: list[int] = []
        self.members: list[list[VertexPath]] = []
        for p in paths:
            m = _mask(p)
            i = index.get(m)
            if i is None:
                index[m] = i = len(self.masks)
                self.masks.append(m)
                self.members.append([])
            self.members[i].append(p)
        self.array = np.array(self.masks, dtype=np.uint64)

    def __len__(self) -> int:
        return len(self.masks)


def common_vertices(a: Sequence[int], b: Sequence[int], g: Graph | None = None) -> PairIntersection:
    if g is not None and not (is_path(g, a) and is_path(g, b)):
        raise PathsFromDifferentGraphs("both arguments must be paths of the given graph")
    pa = {v: k for k, v in enumerate(a, start=1)}
    pb = {v: k for k, v in enumerate(b, start=1)}
    if len(pa) != len(a) or len(pb) != len(b):
        raise PathsFromDifferentGraphs("paths repeat a vertex")
    common = tuple(sorted(pa.keys() & pb.keys()))
    return PairIntersection(common, {v: pa[v] for v in common}, {v: pb[v] for v in common})


# -- every two longest paths meet --------------------------------------------

def find_disjoint_pair(paths: Sequence[VertexPath]) -> tuple[VertexPath, VertexPath] | None:
    """First pair (in list order of vertex sets) of vertex-disjoint paths."""
    table = _MaskTable(paths)
    arr = table.array
    for i in range(len(table) - 1):
        hits = np.flatnonzero((arr[i + 1:] & arr[i]) == 0)
        if hits.size:
            return table.members[i][0], table.members[i + 1 + int(hits[0])][0]
    return None


def pairwise_check(g: Graph, report: LongestPathReport | None = None) -> CheckVerdict:
    """Do every two longest paths share a vertex?"""
    report = _prepare(g, report)
    pair = find_disjoint_pair(report.paths)
    if pair is None:
        return CheckVerdict("pairwise", True)
    return CheckVerdict("pairwise", False, {"paths": [list(pair[0]), list(pair[1])]})


# -- parity-conditioned double intersection --------------------------------------

def lemma2_measure(order_L: int, convention: str) -> int:
    if convention == "vertex_count":
        return order_L
    if convention == "edge_count":
        return order_L - 1
    raise ValueError(f"convention must be one of {PARITY_CONVENTIONS}")


def lemma2_check(g: Graph, parity_convention: str = "vertex_count",
                 report: LongestPathReport | None = None) -> CheckVerdict:
    """If the longest-path measure is even: unique longest path, or every
    two longest paths share at least two vertices.

    ``parity_convention`` picks the measure: vertex count or edge count.
    """
    name = f"lemma2_{'vertex' if parity_convention == 'vertex_count' else 'edge'}"
    lemma2_measure(0, parity_convention)
    report = _prepare(g, report)
    measure = lemma2_measure(report.order_L, parity_convention)
    info = {"measure": measure}
    if measure % 2:
        return CheckVerdict(name, True, vacuous=True, info=info)
    if report.path_count == 1:
        return CheckVerdict(name, True, info={**info, "unique": True})
    table = _MaskTable(report.paths)
    arr = table.array
    for i in range(len(table) - 1):
        inter = arr[i + 1:] & arr[i]
        single = np.flatnonzero(np.bitwise_count(inter) == 1)
        if single.size:
            j = i + 1 + int(single[0])
            a, b = table.members[i][0], table.members[j][0]
            shared = _vertices(table.masks[i] & table.masks[j])[0]
            return CheckVerdict(
                name, False, {"paths": [list(a), list(b)], "shared_vertex": shared}, info=info
            )
    return CheckVerdict(name, True, info=info)


# -- shared vertices sit at equal indices -----------------------------------------

def _position_code(p: Sequence[int], width: int) -> int:
    code = 0
    for k, v in enumerate(p):
        code |= 1 << (v * width + k)
    return code


def misalignment(a: Sequence[int], b: Sequence[int]) -> dict[str, Any] | None:
    """First common vertex at unequal 1-based indices, or None if aligned."""
    pos_b = {v: k for k, v in enumerate(b, start=1)}
    for k, v in enumerate(a, start=1):
        if v in pos_b and pos_b[v] != k:
            return {"vertex": v, "index_a": k, "index_b": pos_b[v]}
    return None


def aligned_orientations(a: Sequence[int], b: Sequence[int]) -> list[tuple[bool, bool]]:
    """Orientation choices ``(reverse_a, reverse_b)`` that align every common vertex."""
    out = []
    for ra in (False, True):
        for rb in (False, True):
            if misalignment(a[::-1] if ra else a, b[::-1] if rb else b) is None:
                out.append((ra, rb))
    return out


def index_alignment_check(g: Graph, report: LongestPathReport | None = None,
                          pair_cap: int | None = None) -> CheckVerdict:
    """Can every two longest paths be oriented so shared vertices have equal indices?"""
    report = _prepare(g, report)
    paths = report.paths
    width = max(report.order_L, 1)
    masks = [_mask(p) for p in paths]
    fwd = [_position_code(p, width) for p in paths]
    rev = [_position_code(p[::-1], width) for p in paths]
    examined = 0
    for i in range(len(paths)):
        mi, fi = masks[i], fwd[i]
        for j in range(i + 1, len(paths)):
            if pair_cap is not None and examined >= pair_cap:
                return CheckVerdict("alignment", True, capped=True, info={"pairs": examined})
            examined += 1
            common = (mi & masks[j]).bit_count()
            if (fi & fwd[j]).bit_count() == common or (fi & rev[j]).bit_count() == common:
                continue
            a, b = paths[i], paths[j]
            witness = {
                "paths": [list(a), list(b)],
                "forward": misalignment(a, b),
                "reversed": misalignment(a, b[::-1]),
            }
            return CheckVerdict("alignment", False, witness, info={"pairs": examined})
    return CheckVerdict("alignment", True, info={"pairs": examined})


# -- interleaving of intersection indices along the middle path ------------------

def intersection_indices(p1: Sequence[int], p2: Sequence[int],
                         p3: Sequence[int]) -> tuple[list[int], list[int], list[int]]:
    """1-based indices along ``p2`` of P1∩P2, of P2∩P3, and of P1∩P2∩P3."""
    s1, s3 = set(p1), set(p3)
    t = [k for k, v in enumerate(p2, start=1) if v in s1]
    r = [k for k, v in enumerate(p2, start=1) if v in s3]
    both = [k for k, v in enumerate(p2, start=1) if v in s1 and v in s3]
    return t, r, both


def _check_triple(p1, p2, p3, g: Graph | None) -> None:
    for p in (p1, p2, p3):
        if len(set(p)) != len(p) or (g is not None and not is_path(g, p)):
            raise PathsFromDifferentGraphs("all three arguments must be paths of one graph")


def interleave_scan(p1: Sequence[int], p2: Sequence[int], p3: Sequence[int],
                    g: Graph | None = None) -> tuple[int, int, int] | None:
    """Lexicographically first ``(t_p, r_s, t_q)`` with ``t_p < r_s < t_q``.

    ``t_p, t_q`` index P1∩P2 vertices along ``p2``; ``r_s`` indexes a P2∩P3
    vertex along ``p2`` that is not also on ``p1``.
    """
    _check_triple(p1, p2, p3, g)
    t, r, both = intersection_indices(p1, p2, p3)
    if len(t) < 2:
        return None
    shared = set(both)
    lo, hi = t[0], t[-1]
    for rs in r:
        if lo < rs < hi and rs not in shared:
            tq = next(k for k in t if k > rs)
            return lo, rs, tq
    return None


def tight_interleavings(p1: Sequence[int], p2: Sequence[int],
                        p3: Sequence[int]) -> Iterator[tuple[int, int, int]]:
    """Interleavings that also meet the construction's side conditions.

    ``t_p`` and ``t_q`` are consecutive P1∩P2 indices, ``r_s`` is the only
    intersection index strictly between them, and ``p2[t_p]`` is not on all
    three paths.
    """
    t, r, both = intersection_indices(p1, p2, p3)
    marks = sorted(set(t) | set(r))
    t_set, shared = set(t), set(both)
    for tp, tq in zip(t, t[1:]):
        if tp in shared:
            continue
        between = [k for k in marks if tp < k < tq]
        if len(between) == 1 and between[0] not in t_set:
            yield tp, between[0], tq


# -- Gallai set and triples -----------------------------------------------------

def gallai_set(report: LongestPathReport) -> tuple[int, ...]:
    """Vertices lying on every longest path."""
    if report.truncated:
        raise TruncatedReport("Gallai set needs the complete list of longest paths")
    common = -1
    for p in report.paths:
        common &= _mask(p)
    return tuple(_vertices(common)) if report.paths else ()


def gallai_check(g: Graph, report: LongestPathReport | None = None) -> CheckVerdict:
    """Is there a vertex common to all longest paths?"""
    report = _prepare(g, report)
    common = gallai_set(report)
    if common:
        return CheckVerdict("gallai", True, info={"gallai_set": list(common)})
    return CheckVerdict("gallai", False, {"gallai_set": [], "path_count": report.path_count})


def find_empty_triple(paths: Sequence[VertexPath], triple_cap: int | None = None
                      ) -> tuple[tuple[VertexPath, VertexPath, VertexPath] | None, bool, int]:
    """Three distinct paths with no common vertex.

    Works on distinct vertex sets, which is all a common-vertex question
    depends on. Returns ``(triple or None, capped, triples_examined)``;
    ``triples_examined`` counts vertex-set triples.
    """
    if len(paths) < 3:
        return None, False, 0
    table = _MaskTable(paths)
    arr, members = table.array, table.members
    m = len(table)

    def third(*skip: VertexPath) -> VertexPath:
        return next(p for p in paths if p not in skip)

    examined = 0
    for i in range(m):
        if len(members[i]) >= 2:
            hits = np.flatnonzero((arr & arr[i]) == 0)
            if hits.size:
                a, a2 = members[i][:2]
                return (a, a2, members[int(hits[0])][0]), False, examined
        for j in range(i + 1, m):
            both = table.masks[i] & table.masks[j]
            a, b = members[i][0], members[j][0]
            if both == 0:
                return (a, b, third(a, b)), False, examined
            rest = arr[j + 1:]
            if triple_cap is not None and examined + rest.size > triple_cap:
                return None, True, examined
            examined += rest.size
            hits = np.flatnonzero((rest & np.uint64(both)) == 0)
            if hits.size:
                return (a, b, members[j + 1 + int(hits[0])][0]), False, examined
    return None, False, examined


def triple_check(g: Graph, triple_cap: int = DEFAULT_TRIPLE_CAP,
                 report: LongestPathReport | None = None) -> CheckVerdict:
    """Do every three longest paths share a vertex?"""
    report = _prepare(g, report)
    if report.path_count < 3:
        return CheckVerdict("triple", True, vacuous=True, info={"path_count": report.path_count})
    common = gallai_set(report)
    if common:
        # a vertex on every longest path is on every triple
        return CheckVerdict("triple", True, info={"common_vertex": common[0], "via": "gallai"})
    triple, capped, examined = find_empty_triple(report.paths, triple_cap)
    info = {"triples_examined": examined}
    if triple is None:
        return CheckVerdict("triple", True, capped=capped, info=info)
    return CheckVerdict("triple", False, {"paths": [list(p) for p in triple]}, info=info)


# -- witness replay --------------------------------------------------------------

def _longest(g: Graph, paths, order_L: int) -> bool:
    return all(is_path(g, p) and len(p) == order_L for p in paths)


def replay_witness(g: Graph, property_name: str, witness: dict[str, Any]) -> bool:
    """Re-run the violated predicate on ``witness``; True iff the violation reproduces.

    Only the witness and the graph's longest-path order are used, not the
    stored enumeration.
    """
    from .paths import longest_path_order

    L = longest_path_order(g)
    paths = [tuple(p) for p in witness.get("paths", [])]
    if property_name == "gallai":
        report = enumerate_longest_paths(g, DEFAULT_PATH_CAP)
        return not report.truncated and not gallai_set(report)
    if not _longest(g, paths, L) or len(set(paths) | {p[::-1] for p in paths}) != 2 * len(paths):
        return False
    if property_name == "pairwise":
        a, b = paths
        return not set(a) & set(b)
    if property_name.startswith("lemma2_"):
        convention = "vertex_count" if property_name == "lemma2_vertex" else "edge_count"
        a, b = paths
        return lemma2_measure(L, convention) % 2 == 0 and len(set(a) & set(b)) == 1
    if property_name == "alignment":
        a, b = paths
        return not aligned_orientations(a, b)
    if property_name == "triple":
        a, b, c = paths
        return not set(a) & set(b) & set(c)
    if property_name == "interleave_surgery":
        p1, p2, p3 = paths
        return interleave_scan(p1, p2, p3) is not None
    raise ValueError(f"unknown property {property_name!r}")
