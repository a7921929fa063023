"""Parser for the supported PDDL subset: STRIPS + typing + negative preconditions.

Identifiers are case-insensitive and normalized to lower case. Errors carry
line/column positions. Conditional effects, numeric fluents, and quantifiers
are rejected.
"""

from __future__ import annotations

from dataclasses import dataclass

from cowplan.errors import PddlParseError
from cowplan.pddl.model import (
    OBJECT_TYPE,
    ActionSchema,
    Atom,
    Domain,
    Literal,
    Predicate,
    Problem,
    TypeTree,
)

_UNSUPPORTED = frozenset(
    {"forall", "exists", "when", "or", "imply", "increase", "decrease", "assign", "="}
)


@dataclass(frozen=True)
class _Sym:
    text: str
    line: int
    col: int


# A node is either a _Sym or a list of nodes tagged with its opening position.
class _SList(list):
    line: int = 0
    col: int = 0


def _tokenize(text: str):
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
        elif ch in " \t\r":
            col += 1
            i += 1
        elif ch == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif ch in "()":
            yield (ch, line, col)
            col += 1
            i += 1
        else:
            start = i
            start_col = col
            while i < n and text[i] not in " \t\r\n();":
                i += 1
                col += 1
            yield (text[start:i].lower(), line, start_col)
    yield (None, line, col)


def _read_sexprs(text: str) -> list:
    """Parse text into nested lists of _Sym, one entry per top-level form."""
    stack: list[_SList] = []
    top: list = []
    for tok, ln, col in _tokenize(text):
        if tok is None:
            break
        if tok == "(":
            node = _SList()
            node.line, node.col = ln, col
            if stack:
                stack[-1].append(node)
            else:
                top.append(node)
            stack.append(node)
        elif tok == ")":
            if not stack:
                raise PddlParseError("unbalanced ')'", ln, col)
            stack.pop()
        else:
            sym = _Sym(tok, ln, col)
            if stack:
                stack[-1].append(sym)
            else:
                raise PddlParseError(f"stray token {tok!r}", ln, col)
    if stack:
        raise PddlParseError("unbalanced '('", stack[-1].line, stack[-1].col)
    return top


def _pos(node) -> tuple[int, int]:
    if isinstance(node, _Sym):
        return node.line, node.col
    return node.line, node.col


def _err(node, msg: str) -> PddlParseError:
    ln, col = _pos(node)
    return PddlParseError(msg, ln, col)


def _sym(node, what: str) -> str:
    if not isinstance(node, _Sym):
        raise _err(node, f"expected {what}, got a list")
    return node.text


def _typed_list(nodes, what: str) -> list[tuple[str, str]]:
    """Parse 'a b - t c - s d' style lists; untyped entries get 'object'."""
    out: list[tuple[str, str]] = []
    pending: list[str] = []
    it = iter(nodes)
    for node in it:
        name = _sym(node, what)
        if name == "-":
            if not pending:
                raise _err(node, "dangling '-' in typed list")
            try:
                tnode = next(it)
            except StopIteration:
                raise _err(node, "missing type after '-'") from None
            typ = _sym(tnode, "type name")
            out.extend((p, typ) for p in pending)
            pending = []
        else:
            pending.append(name)
    out.extend((p, OBJECT_TYPE) for p in pending)
    return out


def _parse_atom(node) -> Atom:
    if isinstance(node, _Sym):
        raise _err(node, "expected an atom in parentheses")
    if not node:
        raise _err(node, "empty atom")
    head = _sym(node[0], "predicate name")
    if head in _UNSUPPORTED:
        raise _err(node, f"unsupported construct {head!r}")
    args = tuple(_sym(a, "argument") for a in node[1:])
    return Atom(head, args)


def _parse_literal(node) -> Literal:
    if isinstance(node, _Sym):
        raise _err(node, "expected a literal in parentheses")
    if node and isinstance(node[0], _Sym) and node[0].text == "not":
        if len(node) != 2:
            raise _err(node, "'not' takes exactly one atom")
        return Literal(_parse_atom(node[1]), negated=True)
    return Literal(_parse_atom(node))


def _parse_conjunction(node, allow_negated: bool, what: str) -> list[Literal]:
    """A single literal or an (and ...) of literals. (and) is the empty case."""
    if isinstance(node, _Sym):
        raise _err(node, f"expected {what}")
    if node and isinstance(node[0], _Sym) and node[0].text == "and":
        lits = [_parse_literal(child) for child in node[1:]]
    elif not node:
        lits = []
    else:
        lits = [_parse_literal(node)]
    if not allow_negated:
        for lit in lits:
            if lit.negated:
                raise _err(node, f"negated literal not allowed in {what}")
    return lits


class _DomainChecker:
    def __init__(self, domain: Domain):
        self.domain = domain

    def check_literal(self, node, lit: Literal, params: dict[str, str]):
        pred = self.domain.predicate(lit.atom.pred)
        if pred is None:
            raise _err(node, f"undeclared predicate {lit.atom.pred!r}")
        if pred.arity != len(lit.atom.args):
            raise _err(
                node,
                f"predicate {pred.name!r} expects {pred.arity} arguments, "
                f"got {len(lit.atom.args)}",
            )
        for arg, (_, ptype) in zip(lit.atom.args, pred.params):
            if arg.startswith("?"):
                if arg not in params:
                    raise _err(node, f"parameter {arg} not declared")
                if not (
                    self.domain.types.is_subtype(params[arg], ptype)
                    or self.domain.types.is_subtype(ptype, params[arg])
                ):
                    raise _err(
                        node,
                        f"parameter {arg} of type {params[arg]!r} incompatible "
                        f"with {ptype!r} in {pred.name!r}",
                    )


def parse_domain(text: str) -> Domain:
    """Parse domain text, validating names, arities, and parameter types."""
    forms = _read_sexprs(text)
    if len(forms) != 1:
        raise PddlParseError("expected exactly one (define ...) form", 1, 1)
    form = forms[0]
    if not form or _sym(form[0], "define") != "define":
        raise _err(form, "expected (define (domain ...) ...)")
    header = form[1]
    if isinstance(header, _Sym) or len(header) != 2 or _sym(header[0], "domain") != "domain":
        raise _err(form, "expected (domain <name>) header")
    name = _sym(header[1], "domain name")

    type_pairs: list[tuple[str, str]] = []
    predicates: list[Predicate] = []
    action_nodes = []
    for section in form[2:]:
        if isinstance(section, _Sym) or not section:
            raise _err(section, "expected a (:section ...) form")
        head = _sym(section[0], "section name")
        if head == ":requirements":
            continue
        if head == ":types":
            type_pairs.extend(_typed_list(section[1:], "type name"))
        elif head == ":predicates":
            for pnode in section[1:]:
                if isinstance(pnode, _Sym) or not pnode:
                    raise _err(pnode, "expected (pred ?x - t ...) declaration")
                pname = _sym(pnode[0], "predicate name")
                params = tuple(_typed_list(pnode[1:], "predicate parameter"))
                for var, _ in params:
                    if not var.startswith("?"):
                        raise _err(pnode, f"predicate parameter {var!r} must start with '?'")
                if any(p.name == pname for p in predicates):
                    raise _err(pnode, f"duplicate predicate {pname!r}")
                predicates.append(Predicate(pname, params))
        elif head == ":action":
            action_nodes.append(section)
        elif head == ":constants":
            raise _err(section, ":constants are not supported")
        else:
            raise _err(section, f"unsupported section {head!r}")

    types = TypeTree(tuple(type_pairs))
    for typ, parent in type_pairs:
        if parent != OBJECT_TYPE and not types.known(parent):
            raise PddlParseError(f"unknown parent type {parent!r}", 1, 1)

    actions: list[ActionSchema] = []
    partial = Domain(name, types, tuple(predicates), ())
    checker = _DomainChecker(partial)
    for node in action_nodes:
        actions.append(_parse_action(node, partial, checker))
        if any(a.name == actions[-1].name for a in actions[:-1]):
            raise _err(node, f"duplicate action {actions[-1].name!r}")
    return Domain(name, types, tuple(predicates), tuple(actions))


def _parse_action(node, domain: Domain, checker: _DomainChecker) -> ActionSchema:
    if len(node) < 2:
        raise _err(node, "action needs a name")
    name = _sym(node[1], "action name")
    params: tuple[tuple[str, str], ...] = ()
    precondition: list[Literal] = []
    add_effects: list[Atom] = []
    del_effects: list[Atom] = []
    i = 2
    seen = set()
    while i < len(node):
        key = _sym(node[i], "action keyword")
        if i + 1 >= len(node):
            raise _err(node[i], f"missing value for {key}")
        value = node[i + 1]
        if key in seen:
            raise _err(node[i], f"duplicate {key} in action {name!r}")
        seen.add(key)
        if key == ":parameters":
            if isinstance(value, _Sym):
                raise _err(value, ":parameters expects a list")
            params = tuple(_typed_list(value, "action parameter"))
            for var, typ in params:
                if not var.startswith("?"):
                    raise _err(value, f"action parameter {var!r} must start with '?'")
                if typ != OBJECT_TYPE and not domain.types.known(typ):
                    raise _err(value, f"unknown type {typ!r}")
        elif key == ":precondition":
            precondition = _parse_conjunction(value, allow_negated=True, what="precondition")
        elif key == ":effect":
            for lit in _parse_conjunction(value, allow_negated=True, what="effect"):
                if lit.negated:
                    del_effects.append(lit.atom)
                else:
                    add_effects.append(lit.atom)
        else:
            raise _err(node[i], f"unsupported action keyword {key!r}")
        i += 2

    param_types = dict(params)
    if len(param_types) != len(params):
        raise _err(node, f"duplicate parameter name in action {name!r}")
    for lit in precondition:
        checker.check_literal(node, lit, param_types)
    for atom in (*add_effects, *del_effects):
        checker.check_literal(node, Literal(atom), param_types)
    # An atom both added and deleted is a contradiction under STRIPS.
    dup = set(add_effects) & set(del_effects)
    if dup:
        raise _err(node, f"action {name!r} adds and deletes {next(iter(dup))}")
    return ActionSchema(
        name=name,
        params=params,
        precondition=tuple(precondition),
        add_effects=tuple(dict.fromkeys(add_effects)),
        del_effects=tuple(dict.fromkeys(del_effects)),
    )


def parse_problem(text: str, domain: Domain) -> Problem:
    """Parse problem text and validate it against a parsed domain."""
    forms = _read_sexprs(text)
    if len(forms) != 1:
        raise PddlParseError("expected exactly one (define ...) form", 1, 1)
    form = forms[0]
    if not form or _sym(form[0], "define") != "define":
        raise _err(form, "expected (define (problem ...) ...)")
    header = form[1]
    if isinstance(header, _Sym) or len(header) != 2 or _sym(header[0], "problem") != "problem":
        raise _err(form, "expected (problem <name>) header")
    name = _sym(header[1], "problem name")

    domain_name = None
    objects: list[tuple[str, str]] = []
    init: list[Atom] = []
    goal: list[Literal] = []
    for section in form[2:]:
        if isinstance(section, _Sym) or not section:
            raise _err(section, "expected a (:section ...) form")
        head = _sym(section[0], "section name")
        if head == ":domain":
            domain_name = _sym(section[1], "domain name")
        elif head == ":objects":
            objects.extend(_typed_list(section[1:], "object name"))
        elif head == ":init":
            for anode in section[1:]:
                atom = _parse_atom(anode)
                if not atom.is_ground():
                    raise _err(anode, "init atoms must be ground")
                init.append(atom)
        elif head == ":goal":
            goal = _parse_conjunction(section[1], allow_negated=True, what="goal")
        else:
            raise _err(section, f"unsupported section {head!r}")

    if domain_name is None:
        raise _err(form, "missing (:domain ...) section")
    if domain_name != domain.name:
        raise _err(form, f"problem is for domain {domain_name!r}, not {domain.name!r}")
    for obj, typ in objects:
        if typ != OBJECT_TYPE and not domain.types.known(typ):
            raise _err(form, f"object {obj!r} has unknown type {typ!r}")
    names = [o for o, _ in objects]
    if len(set(names)) != len(names):
        raise _err(form, "duplicate object name")

    obj_types = dict(objects)

    def check_ground(atom: Atom, where: str):
        pred = domain.predicate(atom.pred)
        if pred is None:
            raise _err(form, f"{where} uses undeclared predicate {atom.pred!r}")
        if pred.arity != len(atom.args):
            raise _err(form, f"{where} atom {atom} has wrong arity for {atom.pred!r}")
        for arg, (_, ptype) in zip(atom.args, pred.params):
            if arg not in obj_types:
                raise _err(form, f"{where} atom {atom} uses undeclared object {arg!r}")
            if not domain.types.is_subtype(obj_types[arg], ptype):
                raise _err(
                    form,
                    f"{where} atom {atom}: object {arg!r} of type "
                    f"{obj_types[arg]!r} incompatible with {ptype!r}",
                )

    for atom in init:
        check_ground(atom, "init")
    for lit in goal:
        if not lit.atom.is_ground():
            raise _err(form, "goal literals must be ground")
        check_ground(lit.atom, "goal")

    return Problem(
        name=name,
        domain_name=domain_name,
        objects=tuple(objects),
        init=frozenset(init),
        goal=tuple(goal),
    )
