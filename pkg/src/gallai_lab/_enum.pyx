# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled longest-path search kernel (see ``_enum_py`` for the reference)."""
from libc.stdint cimport uint64_t

from .errors import SearchBudgetExceeded


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


cdef inline int _reach(const uint64_t* adj, int head, uint64_t avail) noexcept nogil:
    cdef uint64_t seen = 0
    cdef uint64_t frontier = adj[head] & avail
    cdef uint64_t nxt, f, region
    cdef int ends = 0
    while frontier:
        seen |= frontier
        nxt = 0
        f = frontier
        while f:
            nxt |= adj[__builtin_ctzll(f)]
            f &= f - 1
        frontier = nxt & avail & ~seen
    # a vertex with one neighbour in the region can only end the path
    region = seen | ((<uint64_t>1) << head)
    f = seen
    while f:
        if __builtin_popcountll(adj[__builtin_ctzll(f)] & region) == 1:
            ends += 1
        f &= f - 1
    if ends > 1:
        return __builtin_popcountll(seen) - ends + 1
    return __builtin_popcountll(seen)


def enumerate_paths(masks, int n, long long cap, bint prune, long long budget, bint ties=True):
    if n > 64:
        raise ValueError("compiled kernel supports at most 64 vertices")
    cdef uint64_t adj[64]
    cdef uint64_t cands[64]
    cdef int path[64]
    cdef int i, s, d, head, best = 0, slack = 0 if ties else 1
    cdef long long count = 0, nodes = 0, stored = 0
    cdef uint64_t full, visited, c, one = 1
    cdef bint entering
    paths = []

    for i in range(n):
        adj[i] = <uint64_t>masks[i]
    full = (one << n) - 1 if n < 64 else ~(<uint64_t>0)

    for s in range(n):
        if not ties and best == n:
            break
        path[0] = s
        visited = one << s
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
                    stored = 0
                    paths = []
                    if not ties and best == n:
                        break
                if ties and d == best and (d == 1 or path[0] < head):
                    count += 1
                    if stored < cap:
                        paths.append(tuple([path[i] for i in range(d)]))
                        stored += 1
                c = adj[head] & ~visited
                if prune and c and d + _reach(adj, head, full & ~visited) < best + slack:
                    c = 0
                cands[d - 1] = c
                entering = False
            c = cands[d - 1]
            if not c:
                d -= 1
                visited &= ~(one << path[d])
                continue
            cands[d - 1] = c & (c - 1)
            path[d] = __builtin_ctzll(c)
            visited |= one << path[d]
            d += 1
            entering = True
    return best, paths, count, nodes
