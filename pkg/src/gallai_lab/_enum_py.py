"""Pure-Python longest-path search kernel.

Mirror of ``_enum.pyx``; both must return identical results. Used when the
compiled extension is unavailable or ``GALLAI_LAB_PURE=1`` is set.
"""
from __future__ import annotations

from .errors import SearchBudgetExceeded


def _reach(masks, head: int, avail: int) -> int:
    """Upper bound on how many ``avail`` vertices a path from ``head`` can add.

    Counts the ``avail`` vertices reachable from ``head``, less all but one of
    those with a single neighbour in that region (each can only end a path).
    """
    seen = 0
    frontier = masks[head] & avail
    while frontier:
        seen |= frontier
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= masks[low.bit_length() - 1]
            f ^= low
        frontier = nxt & avail & ~seen
    region = seen | (1 << head)
    ends = 0
    f = seen
    while f:
        low = f & -f
        if (masks[low.bit_length() - 1] & region).bit_count() == 1:
            ends += 1
        f ^= low
    size = seen.bit_count()
    return size - ends + 1 if ends > 1 else size


def enumerate_paths(masks, n: int, cap: int, prune: bool, budget: int, ties: bool = True):
    """Depth-first search over simple paths with bitset visited state.

    Returns ``(best, paths, count, nodes)``: the maximum vertex count, up to
    ``cap`` canonical paths of that order in lexicographic order, the total
    number of such paths, and the number of search nodes entered.

    A branch is cut when its order plus :func:`_reach` is below the best order
    so far (at most, when ``ties`` is false: then only the order is wanted and
    the search stops at a Hamiltonian path).
    """
    full = (1 << n) - 1
    best = 0
    count = 0
    nodes = 0
    paths: list[tuple[int, ...]] = []
    path = [0] * n
    cands = [0] * n
    slack = 0 if ties else 1
    for s in range(n):
        if not ties and best == n:
            break
        path[0] = s
        visited = 1 << s
        d = 1
        entering = True
        while d:
            if entering:
                nodes += 1
                if nodes > budget:
                    raise SearchBudgetExceeded(budget)
                head = path[d - 1]
                if d > best:
                    best = d
                    count = 0
                    paths.clear()
                    if not ties and best == n:
                        break
                if ties and d == best and (d == 1 or path[0] < head):
                    count += 1
                    if len(paths) < cap:
                        paths.append(tuple(path[:d]))
                c = masks[head] & ~visited
                if prune and c and d + _reach(masks, head, full & ~visited) < best + slack:
                    c = 0
                cands[d - 1] = c
                entering = False
            c = cands[d - 1]
            if not c:
                d -= 1
                visited &= ~(1 << path[d])
                continue
            low = c & -c
            cands[d - 1] = c ^ low
            path[d] = low.bit_length() - 1
            visited |= low
            d += 1
            entering = True
    return best, paths, count, nodes
