"""Typed STRIPS model: domains, problems, states, ground actions, patches.

All values are immutable after construction and safe to share across
trial workers; every mutation-shaped operation returns a new value.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from cowplan.errors import ModelError

OBJECT_TYPE = "object"


@dataclass(frozen=True)
class Atom:
    """A predicate applied to arguments (variables ?x or object names)."""

    pred: str
    args: tuple[str, ...] = ()

    def __str__(self) -> str:
        return "(" + " ".join((self.pred,) + self.args) + ")"

    def is_ground(self) -> bool:
        return not any(a.startswith("?") for a in self.args)

    def substitute(self, binding: dict[str, str]) -> Atom:
        return Atom(self.pred, tuple(binding.get(a, a) for a in self.args))


@dataclass(frozen=True)
class Literal:
    """An atom or its negation."""

    atom: Atom
    negated: bool = False

    def __str__(self) -> str:
        return f"(not {self.atom})" if self.negated else str(self.atom)

    def substitute(self, binding: dict[str, str]) -> Literal:
        return Literal(self.atom.substitute(binding), self.negated)


@dataclass(frozen=True)
class Predicate:
    name: str
    params: tuple[tuple[str, str], ...]  # (variable, type) pairs

    @property
    def arity(self) -> int:
        return len(self.params)


@dataclass(frozen=True)
class ActionSchema:
    """A STRIPS operator: typed parameters, literal preconditions, effects.

    add and delete effects are disjoint by construction; negative
    preconditions are allowed.
    """

    name: str
    params: tuple[tuple[str, str], ...]  # (variable, type) pairs
    precondition: tuple[Literal, ...]
    add_effects: tuple[Atom, ...]
    del_effects: tuple[Atom, ...]

    def __post_init__(self):
        if set(self.add_effects) & set(self.del_effects):
            raise ModelError(
                f"action {self.name}: add and delete effects overlap"
            )

    @property
    def param_names(self) -> tuple[str, ...]:
        return tuple(v for v, _ in self.params)


@dataclass(frozen=True)
class TypeTree:
    """Single-inheritance type forest rooted at 'object'."""

    parent: tuple[tuple[str, str], ...] = ()  # (type, parent) pairs

    def as_dict(self) -> dict[str, str]:
        return dict(self.parent)

    def known(self, t: str) -> bool:
        return t == OBJECT_TYPE or any(t == c for c, _ in self.parent)

    def is_subtype(self, t: str, ancestor: str) -> bool:
        """True when t equals ancestor or derives from it."""
        if ancestor == OBJECT_TYPE:
            return True
        parents = self.as_dict()
        cur = t
        seen = set()
        while cur is not None and cur not in seen:
            if cur == ancestor:
                return True
            seen.add(cur)
            cur = parents.get(cur)
        return False


@dataclass(frozen=True)
class Domain:
    name: str
    types: TypeTree
    predicates: tuple[Predicate, ...]
    actions: tuple[ActionSchema, ...]

    def predicate(self, name: str) -> Predicate | None:
        for p in self.predicates:
            if p.name == name:
                return p
        return None

    def action(self, name: str) -> ActionSchema | None:
        for a in self.actions:
            if a.name == name:
                return a
        return None

    def replace_action(self, schema: ActionSchema) -> Domain:
        actions = tuple(
            schema if a.name == schema.name else a for a in self.actions
        )
        return replace(self, actions=actions)


@dataclass(frozen=True)
class Problem:
    name: str
    domain_name: str
    objects: tuple[tuple[str, str], ...]  # (name, type) pairs
    init: frozenset[Atom]
    goal: tuple[Literal, ...]

    def object_type(self, name: str) -> str | None:
        for obj, typ in self.objects:
            if obj == name:
                return typ
        return None

    def objects_of(self, domain: Domain, typ: str) -> list[str]:
        """Objects compatible with a type, sorted by name."""
        return sorted(
            obj
            for obj, t in self.objects
            if domain.types.is_subtype(t, typ)
        )


@dataclass(frozen=True)
class State:
    """Closed-world state: atoms absent from the set are false."""

    atoms: frozenset[Atom] = frozenset()

    def holds(self, lit: Literal) -> bool:
        return (lit.atom in self.atoms) != lit.negated

    def satisfies(self, goal: tuple[Literal, ...]) -> bool:
        return all(self.holds(lit) for lit in goal)


@dataclass(frozen=True)
class GroundAction:
    """A schema instantiated over concrete objects."""

    schema: str
    args: tuple[str, ...]
    precondition: tuple[Literal, ...]
    add_effects: frozenset[Atom]
    del_effects: frozenset[Atom]

    @property
    def name(self) -> str:
        return "(" + " ".join((self.schema,) + self.args) + ")"

    def __str__(self) -> str:
        return self.name

    def sort_key(self) -> tuple:
        return (self.schema, self.args)


ADD_PRECONDITION = "add_precondition"
ADD_EFFECT = "add_effect"


@dataclass(frozen=True)
class KnowledgePatch:
    """A runtime addition of a precondition or effect to an action schema.

    The literal ranges over the target action's parameters; fresh_params
    extends the parameter list when the literal needs new typed variables.
    Effect literals that are negated are recorded as delete effects.
    """

    kind: str  # ADD_PRECONDITION | ADD_EFFECT
    action: str
    literal: Literal
    fresh_params: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        if self.kind not in (ADD_PRECONDITION, ADD_EFFECT):
            raise ModelError(f"unknown patch kind {self.kind!r}")

    def __str__(self) -> str:
        return f"{self.kind}({self.action}, {self.literal})"


@dataclass(frozen=True)
class Plan:
    """An ordered sequence of ground actions."""

    steps: tuple[GroundAction, ...] = ()

    @property
    def cost(self) -> int:
        return len(self.steps)

    def __len__(self) -> int:
        return len(self.steps)

    def to_text(self) -> str:
        """One step per line: (name arg1 arg2 ...)."""
        return "\n".join(s.name for s in self.steps)

    def to_listing(self) -> str:
        """Numbered listing: 'S1: (walk rob dining kitchen)' per line."""
        return "\n".join(
            f"S{i + 1}: {s.name}" for i, s in enumerate(self.steps)
        )
