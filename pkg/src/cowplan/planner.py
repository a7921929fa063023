"""The closed-world task planner, an independent plan validator, and a
brute-force breadth-first oracle for testing.

plan() is satisficing: greedy best-first search under the additive
relaxation heuristic with lexicographic tie-breaking, falling back to
breadth-first search when the heuristic is uninformative (all-zero at the
initial state). The validator and the oracle never touch the search
kernels: validate() replays STRIPS semantics directly and bfs_oracle()
does plain set-based breadth-first search, so each checks the other route.
"""

from __future__ import annotations

from collections import deque

from cowplan import search
from cowplan.errors import DepthLimitExceeded, SearchBudgetExceeded
from cowplan.pddl.ground import applicable, apply, ground
from cowplan.pddl.model import Domain, GroundAction, Plan, Problem, State
from cowplan.search import pykernel
from cowplan.search.encoding import encode

DEFAULT_BUDGET = 1_000_000
DEFAULT_DEPTH_LIMIT = 64


def plan(domain: Domain, problem: Problem, budget: int = DEFAULT_BUDGET) -> Plan | None:
    """Compute a satisficing plan, or None when the goal is unreachable.

    Raises SearchBudgetExceeded when the expansion budget runs out before
    solvability is decided; that is never reported as "no solution".
    """
    enc = encode(domain, problem)
    mode = search.GBFS
    if pykernel.hadd(enc, enc.init) == 0 and not _goal_holds(enc):
        # All-zero heuristic (e.g. purely negative goals): fall back to BFS.
        mode = search.BFS
    status, steps, _ = search.solve_task(enc, mode, budget)
    if status == search.FOUND:
        return Plan(tuple(enc.decode_plan(steps)))
    if status == search.BUDGET:
        raise SearchBudgetExceeded(f"no decision within {budget} expansions")
    return None


def _goal_holds(enc) -> bool:
    s = enc.init
    return (s & enc.goal_pos) == enc.goal_pos and not (s & enc.goal_neg)


def validate(plan_: Plan, domain: Domain, problem: Problem) -> bool:
    """True iff every step is applicable in its predecessor state and the
    final state satisfies the goal. Pure; consults no oracle or kernel."""
    return validate_from(plan_, domain, problem, State(problem.init))


def validate_from(
    plan_: Plan, domain: Domain, problem: Problem, state: State
) -> bool:
    known = {(ga.schema, ga.args) for ga in ground(domain, problem)}
    for step in plan_.steps:
        if (step.schema, step.args) not in known:
            return False
        # Re-instantiate against the current domain so patched schemas count.
        schema = domain.action(step.schema)
        from cowplan.pddl.ground import instantiate

        ga = instantiate(schema, step.args)
        if not applicable(state, ga):
            return False
        state = apply(state, ga)
    return state.satisfies(problem.goal)


def first_violation(
    plan_: Plan, domain: Domain, problem: Problem
) -> tuple[int, str] | None:
    """Index and description of the first violated precondition, or None."""
    from cowplan.pddl.ground import instantiate

    state = State(problem.init)
    for i, step in enumerate(plan_.steps):
        schema = domain.action(step.schema)
        if schema is None:
            return i, f"unknown action {step.schema!r}"
        ga = instantiate(schema, step.args)
        for lit in ga.precondition:
            if not state.holds(lit):
                return i, f"{ga.name}: {lit} does not hold"
        state = apply(state, ga)
    if not state.satisfies(problem.goal):
        return len(plan_.steps), "goal not satisfied in final state"
    return None


def bfs_oracle(
    domain: Domain,
    problem: Problem,
    depth_limit: int = DEFAULT_DEPTH_LIMIT,
    state_limit: int = 1_000_000,
) -> Plan | None:
    """Shortest plan by breadth-first search over set-based STRIPS states.

    Deliberately naive and kernel-free; used as the testing oracle for
    plan(). Raises DepthLimitExceeded when the limit is hit while states
    remain open, which is distinct from proving no solution exists.
    """
    actions = ground(domain, problem)
    init = State(problem.init)
    if init.satisfies(problem.goal):
        return Plan(())
    parents: dict[frozenset, tuple[frozenset | None, GroundAction | None]] = {
        init.atoms: (None, None)
    }
    queue = deque([(init, 0)])
    truncated = False
    while queue:
        state, depth = queue.popleft()
        if depth >= depth_limit:
            truncated = True
            continue
        for ga in actions:
            if applicable(state, ga):
                nxt = apply(state, ga)
                if nxt.atoms not in parents:
                    if len(parents) >= state_limit:
                        raise DepthLimitExceeded(
                            f"state limit {state_limit} exceeded"
                        )
                    parents[nxt.atoms] = (state.atoms, ga)
                    if nxt.satisfies(problem.goal):
                        return _unwind(parents, nxt.atoms)
                    queue.append((nxt, depth + 1))
    if truncated:
        raise DepthLimitExceeded(f"no solution within depth {depth_limit}")
    return None


def _unwind(parents, atoms) -> Plan:
    steps = []
    while True:
        prev, ga = parents[atoms]
        if ga is None:
            break
        steps.append(ga)
        atoms = prev
    steps.reverse()
    return Plan(tuple(steps))


def parse_plan_text(text: str, domain: Domain, problem: Problem) -> Plan:
    """Read a plan listing: '(name args...)' lines, 'S3:' prefixes allowed."""
    from cowplan.errors import ModelError
    from cowplan.pddl.ground import instantiate

    steps = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith(";") or line.startswith("#"):
            continue
        if ":" in line.split("(")[0]:
            line = line.split(":", 1)[1].strip()
        if not (line.startswith("(") and line.endswith(")")):
            raise ModelError(f"malformed plan step {raw!r}")
        parts = line[1:-1].split()
        if not parts:
            raise ModelError("empty plan step")
        schema = domain.action(parts[0].lower())
        if schema is None:
            raise ModelError(f"unknown action {parts[0]!r} in plan")
        steps.append(instantiate(schema, tuple(p.lower() for p in parts[1:])))
    return Plan(tuple(steps))
