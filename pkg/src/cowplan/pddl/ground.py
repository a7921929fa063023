"""Grounding and state-transition semantics, plus knowledge-patch application."""

from __future__ import annotations

import itertools

from cowplan.errors import ModelError, PreconditionViolation
from cowplan.pddl.model import (
    ADD_EFFECT,
    ADD_PRECONDITION,
    ActionSchema,
    Atom,
    Domain,
    GroundAction,
    KnowledgePatch,
    Literal,
    Problem,
    State,
)


def instantiate(schema: ActionSchema, args: tuple[str, ...]) -> GroundAction:
    if len(args) != len(schema.params):
        raise ModelError(
            f"action {schema.name} takes {len(schema.params)} arguments, got {len(args)}"
        )
    binding = dict(zip(schema.param_names, args))
    return GroundAction(
        schema=schema.name,
        args=args,
        precondition=tuple(lit.substitute(binding) for lit in schema.precondition),
        add_effects=frozenset(a.substitute(binding) for a in schema.add_effects),
        del_effects=frozenset(a.substitute(binding) for a in schema.del_effects),
    )


def ground(domain: Domain, problem: Problem) -> list[GroundAction]:
    """Every type-consistent instantiation over the problem's objects,
    deduplicated, in lexicographic (action name, argument tuple) order."""
    if problem.domain_name != domain.name:
        raise ModelError(
            f"problem targets domain {problem.domain_name!r}, not {domain.name!r}"
        )
    out: list[GroundAction] = []
    for schema in sorted(domain.actions, key=lambda a: a.name):
        pools = [problem.objects_of(domain, typ) for _, typ in schema.params]
        for combo in itertools.product(*pools):
            out.append(instantiate(schema, tuple(combo)))
    seen = set()
    unique = []
    for ga in sorted(out, key=GroundAction.sort_key):
        if (ga.schema, ga.args) not in seen:
            seen.add((ga.schema, ga.args))
            unique.append(ga)
    return unique


def applicable(state: State, ga: GroundAction) -> bool:
    """True iff every positive precondition atom is in the state and no
    negative precondition atom is."""
    return all(state.holds(lit) for lit in ga.precondition)


def apply(state: State, ga: GroundAction) -> State:
    """(state \\ del_effects) ∪ add_effects; the precondition must hold."""
    if not applicable(state, ga):
        failed = next(lit for lit in ga.precondition if not state.holds(lit))
        raise PreconditionViolation(f"{ga.name}: precondition {failed} does not hold")
    return State((state.atoms - ga.del_effects) | ga.add_effects)


def apply_patch(domain: Domain, patch: KnowledgePatch) -> Domain:
    """Return a new domain with the patch folded into the named schema.

    Re-applying an identical patch is a no-op. The patch literal may only
    mention the schema's parameters and the patch's own fresh parameters.
    """
    schema = domain.action(patch.action)
    if schema is None:
        raise ModelError(f"patch names unknown action {patch.action!r}")
    pred = domain.predicate(patch.literal.atom.pred)
    if pred is None:
        raise ModelError(f"patch literal uses unknown predicate {patch.literal.atom.pred!r}")
    if pred.arity != len(patch.literal.atom.args):
        raise ModelError(f"patch literal {patch.literal} has wrong arity")

    params = schema.params + tuple(
        fp for fp in patch.fresh_params if fp not in schema.params
    )
    known = {v for v, _ in params}
    for arg in patch.literal.atom.args:
        if arg.startswith("?") and arg not in known:
            raise ModelError(
                f"patch literal {patch.literal} uses undeclared variable {arg}"
            )

    if patch.kind == ADD_PRECONDITION:
        if patch.literal in schema.precondition:
            return domain
        new = ActionSchema(
            name=schema.name,
            params=params,
            precondition=schema.precondition + (patch.literal,),
            add_effects=schema.add_effects,
            del_effects=schema.del_effects,
        )
    else:
        atom = patch.literal.atom
        if patch.literal.negated:
            if atom in schema.del_effects:
                return domain
            new = ActionSchema(
                name=schema.name,
                params=params,
                precondition=schema.precondition,
                add_effects=schema.add_effects,
                del_effects=schema.del_effects + (atom,),
            )
        else:
            if atom in schema.add_effects:
                return domain
            new = ActionSchema(
                name=schema.name,
                params=params,
                precondition=schema.precondition,
                add_effects=schema.add_effects + (atom,),
                del_effects=schema.del_effects,
            )
    return domain.replace_action(new)


def apply_patches(domain: Domain, patches) -> Domain:
    for patch in patches:
        domain = apply_patch(domain, patch)
    return domain


def reachable_states(
    domain: Domain, problem: Problem, limit: int = 200_000
) -> set[frozenset[Atom]]:
    """Exhaustive reachability closure from the initial state (testing aid)."""
    actions = ground(domain, problem)
    seen: set[frozenset[Atom]] = {problem.init}
    frontier = [State(problem.init)]
    while frontier:
        state = frontier.pop()
        for ga in actions:
            if applicable(state, ga):
                nxt = apply(state, ga)
                if nxt.atoms not in seen:
                    if len(seen) >= limit:
                        raise ModelError(f"reachability exceeded {limit} states")
                    seen.add(nxt.atoms)
                    frontier.append(nxt)
    return seen
