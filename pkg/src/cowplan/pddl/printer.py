"""Canonical pretty-printer; output is stable for golden tests and re-parses
to a structurally identical model."""

from __future__ import annotations

from cowplan.pddl.model import ActionSchema, Domain, Literal, Problem


def _typed(pairs) -> str:
    return " ".join(f"{name} - {typ}" for name, typ in pairs)


def _conj(lits: tuple[Literal, ...]) -> str:
    if not lits:
        return "(and)"
    if len(lits) == 1:
        return str(lits[0])
    return "(and " + " ".join(str(lit) for lit in lits) + ")"


def _action(a: ActionSchema) -> str:
    effects = [str(atom) for atom in a.add_effects]
    effects += [f"(not {atom})" for atom in a.del_effects]
    eff = "(and " + " ".join(effects) + ")" if len(effects) != 1 else effects[0]
    if not effects:
        eff = "(and)"
    return (
        f"  (:action {a.name}\n"
        f"    :parameters ({_typed(a.params)})\n"
        f"    :precondition {_conj(a.precondition)}\n"
        f"    :effect {eff})"
    )


def print_domain(domain: Domain) -> str:
    lines = [f"(define (domain {domain.name})"]
    lines.append("  (:requirements :strips :typing :negative-preconditions)")
    if domain.types.parent:
        lines.append("  (:types " + _typed(domain.types.parent) + ")")
    preds = "\n".join(
        f"    ({p.name}" + ("" if not p.params else " " + _typed(p.params)) + ")"
        for p in domain.predicates
    )
    lines.append("  (:predicates\n" + preds + ")")
    for a in domain.actions:
        lines.append(_action(a))
    return "\n".join(lines) + ")\n"


def print_problem(problem: Problem) -> str:
    lines = [f"(define (problem {problem.name})"]
    lines.append(f"  (:domain {problem.domain_name})")
    lines.append("  (:objects " + _typed(problem.objects) + ")")
    init = " ".join(str(a) for a in sorted(problem.init, key=str))
    lines.append(f"  (:init {init})")
    lines.append(f"  (:goal {_conj(problem.goal)})")
    return "\n".join(lines) + ")\n"
