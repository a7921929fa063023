"""Bit-level encoding of a grounded task for the search kernels.

Atoms are indexed into a fixed universe; a state is a bitmask. Ground
actions are kept in lexicographic order so tie-breaking is reproducible
across kernels and runs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from cowplan.pddl.model import Atom, Domain, GroundAction, Problem
from cowplan.pddl.ground import ground

INF = float("inf")


@dataclass
class EncodedTask:
    atoms: tuple[Atom, ...]
    actions: tuple[GroundAction, ...]
    pre_pos: list[int]
    pre_neg: list[int]
    add: list[int]
    delete: list[int]
    init: int
    goal_pos: int
    goal_neg: int
    # index lists for the additive heuristic
    pre_pos_idx: list[tuple[int, ...]]
    add_idx: list[tuple[int, ...]]
    goal_pos_idx: tuple[int, ...]
    _packed: dict | None = field(default=None, repr=False)

    @property
    def n_atoms(self) -> int:
        return len(self.atoms)

    @property
    def n_blocks(self) -> int:
        return max(1, (self.n_atoms + 63) // 64)

    def mask_of(self, atoms) -> int:
        index = {a: i for i, a in enumerate(self.atoms)}
        mask = 0
        for atom in atoms:
            mask |= 1 << index[atom]
        return mask

    def decode_plan(self, steps: list[int]) -> list[GroundAction]:
        return [self.actions[i] for i in steps]

    def packed(self) -> dict:
        """Flat little-endian byte arrays for the compiled kernel."""
        if self._packed is None:
            nb = self.n_blocks

            def pack(masks: list[int]) -> bytes:
                return b"".join(m.to_bytes(nb * 8, "little") for m in masks)

            def csr(idx_lists) -> tuple[bytes, bytes]:
                offsets = [0]
                data: list[int] = []
                for idxs in idx_lists:
                    data.extend(idxs)
                    offsets.append(len(data))
                to_b = lambda xs: b"".join(x.to_bytes(4, "little") for x in xs)
                return to_b(data), to_b(offsets)

            pre_data, pre_off = csr(self.pre_pos_idx)
            add_data, add_off = csr(self.add_idx)
            self._packed = {
                "n_atoms": self.n_atoms,
                "n_blocks": nb,
                "n_actions": len(self.actions),
                "pre_pos": pack(self.pre_pos),
                "pre_neg": pack(self.pre_neg),
                "add": pack(self.add),
                "delete": pack(self.delete),
                "init": self.init.to_bytes(nb * 8, "little"),
                "goal_pos": self.goal_pos.to_bytes(nb * 8, "little"),
                "goal_neg": self.goal_neg.to_bytes(nb * 8, "little"),
                "pre_idx": pre_data,
                "pre_idx_off": pre_off,
                "add_idx": add_data,
                "add_idx_off": add_off,
                "goal_idx": b"".join(
                    x.to_bytes(4, "little") for x in self.goal_pos_idx
                ),
            }
        return self._packed


def encode(domain: Domain, problem: Problem) -> EncodedTask:
    actions = ground(domain, problem)
    universe: dict[Atom, int] = {}

    def idx(atom: Atom) -> int:
        if atom not in universe:
            universe[atom] = len(universe)
        return universe[atom]

    for atom in sorted(problem.init, key=str):
        idx(atom)
    for ga in actions:
        for lit in ga.precondition:
            idx(lit.atom)
        for atom in sorted(ga.add_effects, key=str):
            idx(atom)
        for atom in sorted(ga.del_effects, key=str):
            idx(atom)
    for lit in problem.goal:
        idx(lit.atom)

    atoms = tuple(sorted(universe, key=universe.get))

    def mask(atoms_iter) -> int:
        m = 0
        for atom in atoms_iter:
            m |= 1 << universe[atom]
        return m

    pre_pos, pre_neg, add, delete = [], [], [], []
    pre_pos_idx, add_idx = [], []
    for ga in actions:
        pos = [lit.atom for lit in ga.precondition if not lit.negated]
        neg = [lit.atom for lit in ga.precondition if lit.negated]
        pre_pos.append(mask(pos))
        pre_neg.append(mask(neg))
        add.append(mask(ga.add_effects))
        delete.append(mask(ga.del_effects))
        pre_pos_idx.append(tuple(sorted(universe[a] for a in pos)))
        add_idx.append(tuple(sorted(universe[a] for a in ga.add_effects)))

    goal_pos = mask(lit.atom for lit in problem.goal if not lit.negated)
    goal_neg = mask(lit.atom for lit in problem.goal if lit.negated)
    goal_pos_idx = tuple(
        sorted(universe[lit.atom] for lit in problem.goal if not lit.negated)
    )

    return EncodedTask(
        atoms=atoms,
        actions=tuple(actions),
        pre_pos=pre_pos,
        pre_neg=pre_neg,
        add=add,
        delete=delete,
        init=mask(problem.init),
        goal_pos=goal_pos,
        goal_neg=goal_neg,
        pre_pos_idx=pre_pos_idx,
        add_idx=add_idx,
        goal_pos_idx=goal_pos_idx,
    )
