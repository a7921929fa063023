# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernel.

Mirrors pykernel.solve exactly (same expansion order, same tie-breaking),
operating on fixed-width uint64 block states instead of Python ints. Plans
produced by the two kernels are required to be identical.
"""

import heapq
from collections import deque

from libc.stdlib cimport calloc, free, malloc
from libc.string cimport memcpy

FOUND = 0
EXHAUSTED = 1
BUDGET = 2
DEPTH = 3

GBFS = 0
BFS = 1

cdef long long _INF_COST = <long long>1 << 30


cdef class _Task:
    cdef unsigned long long *pre_pos
    cdef unsigned long long *pre_neg
    cdef unsigned long long *add
    cdef unsigned long long *dele
    cdef unsigned long long *goal_pos
    cdef unsigned long long *goal_neg
    cdef int *pre_idx
    cdef int *pre_off
    cdef int *add_idx
    cdef int *add_off
    cdef int *goal_idx
    cdef long long *costs
    cdef int n_atoms, nb, m, n_goal
    cdef bytes init_bytes

    def __cinit__(self, packed):
        cdef bytes buf
        self.n_atoms = packed["n_atoms"]
        self.nb = packed["n_blocks"]
        self.m = packed["n_actions"]
        self.init_bytes = packed["init"]

        self.pre_pos = self._masks(packed["pre_pos"], self.m)
        self.pre_neg = self._masks(packed["pre_neg"], self.m)
        self.add = self._masks(packed["add"], self.m)
        self.dele = self._masks(packed["delete"], self.m)
        self.goal_pos = self._masks(packed["goal_pos"], 1)
        self.goal_neg = self._masks(packed["goal_neg"], 1)

        self.pre_idx = self._ints(packed["pre_idx"])
        self.pre_off = self._ints(packed["pre_idx_off"])
        self.add_idx = self._ints(packed["add_idx"])
        self.add_off = self._ints(packed["add_idx_off"])
        self.goal_idx = self._ints(packed["goal_idx"])
        self.n_goal = len(packed["goal_idx"]) // 4

        self.costs = <long long *> malloc(max(1, self.n_atoms) * sizeof(long long))
        if self.costs == NULL:
            raise MemoryError()

    cdef unsigned long long *_masks(self, bytes buf, int rows) except NULL:
        cdef unsigned long long *out = <unsigned long long *> malloc(
            max(1, rows * self.nb) * sizeof(unsigned long long))
        if out == NULL:
            raise MemoryError()
        memcpy(out, <const unsigned char *> buf, rows * self.nb * 8)
        return out

    cdef int *_ints(self, bytes buf) except NULL:
        cdef Py_ssize_t n = len(buf)
        cdef int *out = <int *> malloc(max(8, n))
        if out == NULL:
            raise MemoryError()
        if n:
            memcpy(out, <const unsigned char *> buf, n)
        return out

    def __dealloc__(self):
        free(self.pre_pos)
        free(self.pre_neg)
        free(self.add)
        free(self.dele)
        free(self.goal_pos)
        free(self.goal_neg)
        free(self.pre_idx)
        free(self.pre_off)
        free(self.add_idx)
        free(self.add_off)
        free(self.goal_idx)
        free(self.costs)


cdef inline bint _applicable(_Task t, const unsigned long long *s, int a) noexcept:
    cdef int b
    cdef const unsigned long long *pp = t.pre_pos + a * t.nb
    cdef const unsigned long long *pn = t.pre_neg + a * t.nb
    for b in range(t.nb):
        if (s[b] & pp[b]) != pp[b] or (s[b] & pn[b]):
            return False
    return True


cdef inline void _apply(_Task t, const unsigned long long *s, int a,
                        unsigned long long *out) noexcept:
    cdef int b
    cdef const unsigned long long *ad = t.add + a * t.nb
    cdef const unsigned long long *de = t.dele + a * t.nb
    for b in range(t.nb):
        out[b] = (s[b] & ~de[b]) | ad[b]


cdef inline bint _is_goal(_Task t, const unsigned long long *s) noexcept:
    cdef int b
    for b in range(t.nb):
        if (s[b] & t.goal_pos[b]) != t.goal_pos[b] or (s[b] & t.goal_neg[b]):
            return False
    return True


cdef long long _hadd(_Task t, const unsigned long long *s) noexcept:
    cdef long long *costs = t.costs
    cdef int i, a, k
    cdef long long c, total, new
    cdef bint changed, ok
    for i in range(t.n_atoms):
        if (s[i >> 6] >> (i & 63)) & 1:
            costs[i] = 0
        else:
            costs[i] = _INF_COST
    changed = True
    while changed:
        changed = False
        for a in range(t.m):
            if t.add_off[a + 1] == t.add_off[a]:
                continue
            total = 0
            ok = True
            for k in range(t.pre_off[a], t.pre_off[a + 1]):
                c = costs[t.pre_idx[k]]
                if c >= _INF_COST:
                    ok = False
                    break
                total += c
            if not ok:
                continue
            new = total + 1
            for k in range(t.add_off[a], t.add_off[a + 1]):
                if new < costs[t.add_idx[k]]:
                    costs[t.add_idx[k]] = new
                    changed = True
    cdef long long h = 0
    for k in range(t.n_goal):
        c = costs[t.goal_idx[k]]
        if c >= _INF_COST:
            return _INF_COST
        h += c
    return h


def _reconstruct(parents, state):
    steps = []
    while True:
        prev, act = parents[state]
        if act < 0:
            break
        steps.append(act)
        state = prev
    steps.reverse()
    return steps


def solve(packed, int mode, long long budget, long long depth_limit):
    """Same contract as pykernel.solve, over a packed task dict."""
    cdef _Task t = _Task(packed)
    cdef unsigned long long *cur = <unsigned long long *> malloc(t.nb * 8)
    cdef unsigned long long *nxt = <unsigned long long *> malloc(t.nb * 8)
    if cur == NULL or nxt == NULL:
        free(cur)
        free(nxt)
        raise MemoryError()
    try:
        if mode == GBFS:
            return _gbfs(t, cur, nxt, budget)
        return _bfs(t, cur, nxt, budget, depth_limit)
    finally:
        free(cur)
        free(nxt)


cdef _gbfs(_Task t, unsigned long long *cur, unsigned long long *nxt,
           long long budget):
    cdef long long expansions = 0, counter = 0, h0, hv
    cdef int a
    cdef bytes sb, nb_bytes
    init_b = t.init_bytes
    memcpy(cur, <const unsigned char *> init_b, t.nb * 8)
    h0 = _hadd(t, cur)
    if h0 >= _INF_COST and not _is_goal(t, cur):
        return EXHAUSTED, None, 0
    parents = {init_b: (None, -1)}
    open_heap = [(h0, counter, init_b)]
    while open_heap:
        _, _, sb = heapq.heappop(open_heap)
        memcpy(cur, <const unsigned char *> sb, t.nb * 8)
        if _is_goal(t, cur):
            return FOUND, _reconstruct(parents, sb), expansions
        if expansions >= budget:
            return BUDGET, None, expansions
        expansions += 1
        for a in range(t.m):
            if _applicable(t, cur, a):
                _apply(t, cur, a, nxt)
                nb_bytes = (<char *> nxt)[:t.nb * 8]
                if nb_bytes not in parents:
                    hv = _hadd(t, nxt)
                    if hv >= _INF_COST:
                        continue
                    parents[nb_bytes] = (sb, a)
                    counter += 1
                    heapq.heappush(open_heap, (hv, counter, nb_bytes))
    return EXHAUSTED, None, expansions


cdef _bfs(_Task t, unsigned long long *cur, unsigned long long *nxt,
          long long budget, long long depth_limit):
    cdef long long expansions = 0, depth
    cdef int a
    cdef bint truncated = False
    cdef bytes sb, nb_bytes
    init_b = t.init_bytes
    memcpy(cur, <const unsigned char *> init_b, t.nb * 8)
    if _is_goal(t, cur):
        return FOUND, [], 0
    parents = {init_b: (None, -1)}
    queue = deque([(init_b, <long long>0)])
    while queue:
        sb, depth = queue.popleft()
        if depth_limit >= 0 and depth >= depth_limit:
            truncated = True
            continue
        if expansions >= budget:
            return BUDGET, None, expansions
        expansions += 1
        memcpy(cur, <const unsigned char *> sb, t.nb * 8)
        for a in range(t.m):
            if _applicable(t, cur, a):
                _apply(t, cur, a, nxt)
                nb_bytes = (<char *> nxt)[:t.nb * 8]
                if nb_bytes not in parents:
                    parents[nb_bytes] = (sb, a)
                    memcpy(nxt, <const unsigned char *> nb_bytes, t.nb * 8)
                    if _is_goal(t, nxt):
                        return FOUND, _reconstruct(parents, nb_bytes), expansions
                    queue.append((nb_bytes, depth + 1))
    return (DEPTH if truncated else EXHAUSTED), None, expansions
