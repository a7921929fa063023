"""Pure-Python search kernel.

States are arbitrary-width Python ints; the compiled kernel mirrors this
module's control flow exactly, so both produce identical plans. Status
codes are shared through the module-level constants.
"""

from __future__ import annotations

import heapq
from collections import deque

from cowplan.search.encoding import EncodedTask

FOUND = 0
EXHAUSTED = 1
BUDGET = 2
DEPTH = 3

GBFS = 0
BFS = 1

_INF_COST = 1 << 30


def hadd(enc: EncodedTask, state: int) -> int:
    """Additive relaxation heuristic; negative literals contribute nothing.

    Returns _INF_COST when some positive goal atom is relaxation-unreachable,
    which soundly prunes the state.
    """
    n = enc.n_atoms
    costs = [0 if state >> i & 1 else _INF_COST for i in range(n)]
    changed = True
    while changed:
        changed = False
        for pre_idx, add_idx in zip(enc.pre_pos_idx, enc.add_idx):
            if not add_idx:
                continue
            total = 0
            for p in pre_idx:
                c = costs[p]
                if c >= _INF_COST:
                    total = _INF_COST
                    break
                total += c
            if total >= _INF_COST:
                continue
            new = total + 1
            for q in add_idx:
                if new < costs[q]:
                    costs[q] = new
                    changed = True
    h = 0
    for g in enc.goal_pos_idx:
        c = costs[g]
        if c >= _INF_COST:
            return _INF_COST
        h += c
    return h


def _is_goal(enc: EncodedTask, state: int) -> bool:
    return (state & enc.goal_pos) == enc.goal_pos and not (state & enc.goal_neg)


def _reconstruct(parents, state) -> list[int]:
    steps: list[int] = []
    while True:
        prev, act = parents[state]
        if act < 0:
            break
        steps.append(act)
        state = prev
    steps.reverse()
    return steps


def solve(
    enc: EncodedTask, mode: int, budget: int, depth_limit: int
) -> tuple[int, list[int] | None, int]:
    """Run greedy best-first (mode=GBFS) or breadth-first (mode=BFS) search.

    Returns (status, action-index plan or None, expansions). Successors are
    generated in lexicographic ground-action order; ties in GBFS break FIFO.
    """
    if mode == GBFS:
        return _gbfs(enc, budget)
    return _bfs(enc, budget, depth_limit)


def _gbfs(enc: EncodedTask, budget: int):
    init = enc.init
    parents = {init: (0, -1)}
    h0 = hadd(enc, init)
    if h0 >= _INF_COST and not _is_goal(enc, init):
        return EXHAUSTED, None, 0
    counter = 0
    open_heap = [(h0, counter, init)]
    n_actions = len(enc.actions)
    pre_pos, pre_neg, add, delete = enc.pre_pos, enc.pre_neg, enc.add, enc.delete
    expansions = 0
    while open_heap:
        _, _, state = heapq.heappop(open_heap)
        if _is_goal(enc, state):
            return FOUND, _reconstruct(parents, state), expansions
        if expansions >= budget:
            return BUDGET, None, expansions
        expansions += 1
        for a in range(n_actions):
            if (state & pre_pos[a]) == pre_pos[a] and not (state & pre_neg[a]):
                nxt = (state & ~delete[a]) | add[a]
                if nxt not in parents:
                    h = hadd(enc, nxt)
                    if h >= _INF_COST:
                        continue
                    parents[nxt] = (state, a)
                    counter += 1
                    heapq.heappush(open_heap, (h, counter, nxt))
    return EXHAUSTED, None, expansions


def _bfs(enc: EncodedTask, budget: int, depth_limit: int):
    init = enc.init
    if _is_goal(enc, init):
        return FOUND, [], 0
    parents = {init: (0, -1)}
    queue = deque([(init, 0)])
    n_actions = len(enc.actions)
    pre_pos, pre_neg, add, delete = enc.pre_pos, enc.pre_neg, enc.add, enc.delete
    expansions = 0
    truncated = False
    while queue:
        state, depth = queue.popleft()
        if depth_limit >= 0 and depth >= depth_limit:
            truncated = True
            continue
        if expansions >= budget:
            return BUDGET, None, expansions
        expansions += 1
        for a in range(n_actions):
            if (state & pre_pos[a]) == pre_pos[a] and not (state & pre_neg[a]):
                nxt = (state & ~delete[a]) | add[a]
                if nxt not in parents:
                    parents[nxt] = (state, a)
                    if _is_goal(enc, nxt):
                        return FOUND, _reconstruct(parents, nxt), expansions
                    queue.append((nxt, depth + 1))
    return (DEPTH if truncated else EXHAUSTED), None, expansions
