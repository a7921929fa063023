"""STRIPS-style PDDL parsing, grounding, and runtime knowledge patching."""

from cowplan.pddl.ground import (
    applicable,
    apply,
    apply_patch,
    apply_patches,
    ground,
    instantiate,
    reachable_states,
)
from cowplan.pddl.model import (
    ADD_EFFECT,
    ADD_PRECONDITION,
    ActionSchema,
    Atom,
    Domain,
    GroundAction,
    KnowledgePatch,
    Literal,
    Plan,
    Predicate,
    Problem,
    State,
    TypeTree,
)
from cowplan.pddl.parser import parse_domain, parse_problem
from cowplan.pddl.printer import print_domain, print_problem

__all__ = [
    "ADD_EFFECT",
    "ADD_PRECONDITION",
    "ActionSchema",
    "Atom",
    "Domain",
    "GroundAction",
    "KnowledgePatch",
    "Literal",
    "Plan",
    "Predicate",
    "Problem",
    "State",
    "TypeTree",
    "applicable",
    "apply",
    "apply_patch",
    "apply_patches",
    "ground",
    "instantiate",
    "parse_domain",
    "parse_problem",
    "print_domain",
    "print_problem",
    "reachable_states",
]
