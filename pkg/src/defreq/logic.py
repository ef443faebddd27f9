"""Ground propositional substrate: atoms, literals, clause sets, entailment.

Entailment is decided by exhaustive enumeration of truth assignments.  A set
of assignments over ``n`` atoms is stored as a Python integer with one bit per
assignment (bit ``k`` set iff assignment ``k`` is a model), so conjunction of
constraints is a bitwise AND and a query is a mask test.  Unit propagation is
used only as a sound shortcut in front of the enumeration.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Union

from .errors import AtomLimitExceeded, InconsistentKnowledge

DEFAULT_MAX_ATOMS = 20

BARE_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_FORBIDDEN = re.compile(r'["\\\n\r]')


def is_identifier(text: str) -> bool:
    """True for strings usable as predicate or constant names."""
    return bool(text) and not _FORBIDDEN.search(text)


def quote_ident(text: str) -> str:
    if BARE_IDENT.match(text):
        return text
    return f'"{text}"'


@dataclass(frozen=True, order=True)
class Atom:
    predicate: str
    args: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not isinstance(self.args, tuple):
            object.__setattr__(self, "args", tuple(self.args))
        for name in (self.predicate, *self.args):
            if not is_identifier(name):
                raise ValueError(f"invalid identifier {name!r}")

    def substitute(self, mapping: dict[str, str]) -> Atom:
        if not any(a in mapping for a in self.args):
            return self
        return Atom(self.predicate, tuple(mapping.get(a, a) for a in self.args))

    def render(self, quoted: bool = True) -> str:
        q = quote_ident if quoted else (lambda s: s)
        if not self.args:
            return q(self.predicate)
        return f"{q(self.predicate)}({', '.join(q(a) for a in self.args)})"

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True, order=True)
class Literal:
    atom: Atom
    negated: bool = False

    def complement(self) -> Literal:
        return Literal(self.atom, not self.negated)

    def substitute(self, mapping: dict[str, str]) -> Literal:
        atom = self.atom.substitute(mapping)
        return self if atom is self.atom else Literal(atom, self.negated)

    def render(self, style: str = "dsl") -> str:
        """``dsl`` gives parseable text (``!p("a b")``); ``doc`` gives ``¬p(a b)``."""
        if style == "dsl":
            return ("!" if self.negated else "") + self.atom.render()
        return ("¬" if self.negated else "") + self.atom.render(quoted=False)

    def __str__(self) -> str:
        return self.render()


def lit(predicate: str, *args: str, negated: bool = False) -> Literal:
    """Shorthand constructor, mostly for tests and fixtures."""
    return Literal(Atom(predicate, tuple(args)), negated)


Clause = frozenset  # frozenset[Literal]; the empty clause is unsatisfiable


@dataclass(frozen=True)
class ClauseSet:
    clauses: frozenset = field(default_factory=frozenset)

    @classmethod
    def of(cls, items: Iterable[Union[Literal, Iterable[Literal]]] = ()) -> ClauseSet:
        """Build from literals (unit clauses) and/or iterables of literals."""
        clauses = set()
        for item in items:
            if isinstance(item, Literal):
                clauses.add(frozenset((item,)))
            else:
                clauses.add(frozenset(item))
        return cls(frozenset(clauses))

    @cached_property
    def atoms(self) -> frozenset[Atom]:
        return frozenset(l.atom for c in self.clauses for l in c)

    @cached_property
    def units(self) -> frozenset[Literal]:
        return frozenset(next(iter(c)) for c in self.clauses if len(c) == 1)

    def union(self, other: Union[ClauseSet, Iterable]) -> ClauseSet:
        if not isinstance(other, ClauseSet):
            other = ClauseSet.of(other)
        return ClauseSet(self.clauses | other.clauses)

    def without(self, literal: Literal) -> ClauseSet:
        return ClauseSet(self.clauses - {frozenset((literal,))})

    def constants(self) -> frozenset[str]:
        return frozenset(a for atom in self.atoms for a in atom.args)

    def sorted_clauses(self) -> list[tuple[Literal, ...]]:
        return sorted(tuple(sorted(c)) for c in self.clauses)

    def __len__(self) -> int:
        return len(self.clauses)

    def __iter__(self):
        return iter(self.clauses)


def _atom_mask(index: int, n: int) -> int:
    """Bitset of the assignments (over n atoms) in which atom ``index`` is true."""
    half = 1 << index
    block = ((1 << half) - 1) << half
    width = half << 1
    total = 1 << n
    mask = block
    while width < total:
        mask |= mask << width
        width <<= 1
    return mask


class Models:
    """The satisfying assignments of some constraints over a fixed atom order."""

    __slots__ = ("atoms", "index", "bits", "_full", "_masks")

    def __init__(self, atoms: tuple[Atom, ...], bits: int, masks: dict[Atom, int] | None = None):
        self.atoms = atoms
        self.index = {a: i for i, a in enumerate(atoms)}
        self.bits = bits
        self._full = (1 << (1 << len(atoms))) - 1
        self._masks = masks if masks is not None else {}

    @classmethod
    def of(
        cls,
        kb: ClauseSet,
        extra_atoms: Iterable[Atom] = (),
        max_atoms: int = DEFAULT_MAX_ATOMS,
    ) -> Models:
        atoms = tuple(sorted(set(kb.atoms) | set(extra_atoms)))
        if len(atoms) > max_atoms:
            raise AtomLimitExceeded(len(atoms), max_atoms)
        models = cls(atoms, 0)
        models.bits = models._full
        for clause in kb.clauses:
            cm = 0
            for literal in clause:
                cm |= models._mask(literal)
            models.bits &= cm
            if not models.bits:
                break
        return models

    def _mask(self, literal: Literal) -> int:
        pos = self._masks.get(literal.atom)
        if pos is None:
            pos = _atom_mask(self.index[literal.atom], len(self.atoms))
            self._masks[literal.atom] = pos
        return self._full & ~pos if literal.negated else pos

    @property
    def satisfiable(self) -> bool:
        return self.bits != 0

    def restrict(self, literals: Iterable[Literal]) -> Models:
        """Models that additionally satisfy every given literal."""
        bits = self.bits
        for literal in literals:
            if literal.atom not in self.index:
                raise KeyError(literal.atom)
            bits &= self._mask(literal)
        return Models(self.atoms, bits, self._masks)

    def entails(self, literal: Literal) -> bool:
        if literal.atom not in self.index:
            return not self.satisfiable
        return self.bits & ~self._mask(literal) == 0

    def consistent_with(self, literal: Literal) -> bool:
        if literal.atom not in self.index:
            return self.satisfiable
        return self.bits & self._mask(literal) != 0

    def literals(self) -> frozenset[Literal]:
        if not self.satisfiable:
            raise InconsistentKnowledge("no assignment satisfies the knowledge base")
        out = set()
        for atom in self.atoms:
            for literal in (Literal(atom), Literal(atom, True)):
                if self.entails(literal):
                    out.add(literal)
        return frozenset(out)


@lru_cache(maxsize=512)
def models_of(kb: ClauseSet, max_atoms: int = DEFAULT_MAX_ATOMS) -> Models:
    return Models.of(kb, max_atoms=max_atoms)


def unit_propagate(kb: Iterable[frozenset]) -> frozenset[Literal] | None:
    """Literals forced by unit propagation, or ``None`` on a conflict.

    Sound but incomplete: every returned literal is entailed, and ``None``
    implies the clauses are unsatisfiable.
    """
    clauses = [c for c in kb]
    assigned: dict[Atom, bool] = {}
    changed = True
    while changed:
        changed = False
        for clause in clauses:
            open_lits = []
            satisfied = False
            for literal in clause:
                value = assigned.get(literal.atom)
                if value is None:
                    open_lits.append(literal)
                elif value != literal.negated:
                    satisfied = True
                    break
            if satisfied:
                continue
            if not open_lits:
                return None
            if len(open_lits) == 1:
                unit = open_lits[0]
                assigned[unit.atom] = not unit.negated
                changed = True
    return frozenset(Literal(a, not v) for a, v in assigned.items())


def entails(
    kb: ClauseSet,
    query: Literal,
    *,
    max_atoms: int = DEFAULT_MAX_ATOMS,
    use_propagation: bool = True,
) -> bool:
    """Classical consequence of a single literal from a ground clause set."""
    if len(kb.atoms) > max_atoms:
        raise AtomLimitExceeded(len(kb.atoms), max_atoms)
    if use_propagation and unit_propagate(kb.clauses | {frozenset((query.complement(),))}) is None:
        return True
    return models_of(kb, max_atoms).entails(query)


def is_consistent_with(kb: ClauseSet, extra: Literal, *, max_atoms: int = DEFAULT_MAX_ATOMS) -> bool:
    """The ``M`` test: ``kb`` together with ``extra`` has a model."""
    if len(kb.atoms) > max_atoms:
        raise AtomLimitExceeded(len(kb.atoms), max_atoms)
    return models_of(kb, max_atoms).consistent_with(extra)


def is_satisfiable(kb: ClauseSet, *, max_atoms: int = DEFAULT_MAX_ATOMS) -> bool:
    return models_of(kb, max_atoms).satisfiable


def closure(
    kb: ClauseSet,
    atoms: Iterable[Atom] | None = None,
    *,
    max_atoms: int = DEFAULT_MAX_ATOMS,
) -> frozenset[Literal]:
    """Every literal over the atom universe (or ``atoms``) that ``kb`` entails."""
    if atoms is None:
        models = models_of(kb, max_atoms)
    else:
        models = Models.of(kb, atoms, max_atoms=max_atoms)
    return models.literals()
