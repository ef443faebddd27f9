"""Default theories and Reiter extensions.

Two constructions ship.  ``subsets`` checks every candidate generating set
against the fixed-point conditions and is the reference.  ``iterative``
applies normal defaults until nothing more fires, branching on every
applicable default, and is only defined for normal theories.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from itertools import combinations
from typing import TYPE_CHECKING, Iterable, Iterator, Sequence, Union

from .errors import (
    DefaultLimitExceeded,
    InconsistentKnowledge,
    NestedRuleError,
    UnknownRuleId,
)
from .logic import (
    DEFAULT_MAX_ATOMS,
    Atom,
    ClauseSet,
    Literal,
    Models,
    entails,
    is_consistent_with,
)

if TYPE_CHECKING:
    from .context import DefaultDomain

DEFAULT_MAX_DEFAULTS = 15

# The object variable of default requirements; any argument spelled this way
# is a placeholder, not a constant.
PLACEHOLDER = "X"


@dataclass(frozen=True)
class DefaultRule:
    id: str
    prerequisites: tuple[Union[Literal, "DefaultRule"], ...]
    justification: Literal
    consequent: Literal
    domain: "DefaultDomain | None" = None
    # Constant the placeholder was bound to, for instances of schemas.
    object: str | None = None

    def __post_init__(self) -> None:
        if not isinstance(self.prerequisites, tuple):
            object.__setattr__(self, "prerequisites", tuple(self.prerequisites))

    @property
    def is_normal(self) -> bool:
        return self.justification == self.consequent

    @property
    def is_nested(self) -> bool:
        return any(isinstance(p, DefaultRule) for p in self.prerequisites)

    @property
    def is_schema(self) -> bool:
        return any(PLACEHOLDER in l.atom.args for l in self.literals())

    def literals(self) -> Iterator[Literal]:
        for p in self.prerequisites:
            if isinstance(p, DefaultRule):
                yield from p.literals()
            else:
                yield p
        yield self.justification
        yield self.consequent

    def constants(self) -> frozenset[str]:
        return frozenset(a for l in self.literals() for a in l.atom.args if a != PLACEHOLDER)

    def substitute(self, mapping: dict[str, str]) -> DefaultRule:
        return replace(
            self,
            prerequisites=tuple(p.substitute(mapping) for p in self.prerequisites),
            justification=self.justification.substitute(mapping),
            consequent=self.consequent.substitute(mapping),
        )

    def instantiate(self, obj: str) -> DefaultRule:
        """Bind the placeholder to ``obj``; the instance id is ``id[obj]``."""
        inst = self.substitute({PLACEHOLDER: obj})
        return replace(inst, id=f"{self.id}[{obj}]", object=obj)

    def render(self, style: str = "dsl") -> str:
        """Linear form ``pre1, pre2 : M justification / consequent``."""
        parts = []
        for p in self.prerequisites:
            parts.append(f"({p.render(style)})" if isinstance(p, DefaultRule) else p.render(style))
        head = ", ".join(parts)
        body = f": M {self.justification.render(style)} / {self.consequent.render(style)}"
        return f"{head} {body}" if head else body

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class DefaultTheory:
    background: ClauseSet = field(default_factory=ClauseSet)
    defaults: tuple[DefaultRule, ...] = ()

    def __post_init__(self) -> None:
        if not isinstance(self.defaults, tuple):
            object.__setattr__(self, "defaults", tuple(self.defaults))
        seen = set()
        for rule in self.defaults:
            if rule.id in seen:
                raise ValueError(f"duplicate default id {rule.id!r}")
            seen.add(rule.id)

    def rule(self, rule_id: str) -> DefaultRule:
        for r in self.defaults:
            if r.id == rule_id:
                return r
        raise UnknownRuleId(rule_id)

    def constants(self) -> frozenset[str]:
        out = set(self.background.constants())
        for r in self.defaults:
            out |= r.constants()
        out.discard(PLACEHOLDER)
        return frozenset(out)

    def atoms(self) -> frozenset[Atom]:
        out = set(self.background.atoms)
        for r in self.defaults:
            out.update(l.atom for l in r.literals())
        return frozenset(out)

    def grounded(self, objects: Iterable[str] | None = None) -> DefaultTheory:
        """Replace every schema by its instances over ``objects``.

        ``objects`` defaults to the constants the theory mentions.
        """
        if not any(r.is_schema for r in self.defaults):
            return self
        objs = sorted(self.constants() if objects is None else set(objects))
        rules: list[DefaultRule] = []
        for r in self.defaults:
            if r.is_schema:
                rules.extend(r.instantiate(o) for o in objs)
            else:
                rules.append(r)
        return DefaultTheory(self.background, tuple(rules))


@dataclass(frozen=True)
class Extension:
    generating: frozenset[str]
    literals: frozenset[Literal]

    def sort_key(self) -> tuple:
        return (len(self.generating), sorted(self.generating))

    def __contains__(self, literal: Literal) -> bool:
        return literal in self.literals


class QueryVerdict(enum.Enum):
    ENTAILED_IN_ALL = "EntailedInAll"
    ENTAILED_IN_SOME = "EntailedInSome"
    ENTAILED_IN_NONE = "EntailedInNone"
    NO_EXTENSION = "NoExtension"

    def __str__(self) -> str:
        return self.value


def is_applicable(rule: DefaultRule, context_kb: ClauseSet, *, max_atoms: int = DEFAULT_MAX_ATOMS) -> bool:
    """Every prerequisite follows from ``context_kb`` and the justification is consistent with it."""
    _require_flat(rule)
    return all(entails(context_kb, p, max_atoms=max_atoms) for p in rule.prerequisites) and is_consistent_with(
        context_kb, rule.justification, max_atoms=max_atoms
    )


def _require_flat(rule: DefaultRule) -> None:
    if rule.is_nested:
        raise NestedRuleError(f"default {rule.id!r} is nested; flatten it first")


class _Space:
    """Models of W over the full atom universe of a ground, flat theory."""

    def __init__(self, theory: DefaultTheory, max_atoms: int):
        for r in theory.defaults:
            _require_flat(r)
        self.theory = theory
        self.rules = {r.id: r for r in theory.defaults}
        self.w = Models.of(theory.background, theory.atoms(), max_atoms=max_atoms)
        if not self.w.satisfiable:
            raise InconsistentKnowledge("background knowledge is unsatisfiable")

    def belief(self, ids: Iterable[str]) -> Models:
        return self.w.restrict(self.rules[i].consequent for i in ids)

    @staticmethod
    def applicable(rule: DefaultRule, e: Models) -> bool:
        return all(e.entails(p) for p in rule.prerequisites) and e.consistent_with(rule.justification)

    def verify(self, candidate: frozenset[str]) -> bool:
        e = self.belief(candidate)
        if not e.satisfiable:
            return False
        for rule in self.theory.defaults:
            if self.applicable(rule, e) != (rule.id in candidate):
                return False
        # Groundedness: prerequisites must be derivable in some firing order.
        done: list[str] = []
        pending = [self.rules[i] for i in candidate]
        current = self.w
        while pending:
            ready = [r for r in pending if all(current.entails(p) for p in r.prerequisites)]
            if not ready:
                return False
            for r in ready:
                pending.remove(r)
                done.append(r.id)
            current = self.belief(done)
        return True

    def extension(self, candidate: frozenset[str]) -> Extension:
        return Extension(frozenset(candidate), self.belief(candidate).literals())


def _prepare(theory: DefaultTheory, max_atoms: int, max_defaults: int) -> _Space:
    ground = theory.grounded()
    if len(ground.defaults) > max_defaults:
        raise DefaultLimitExceeded(len(ground.defaults), max_defaults)
    return _Space(ground, max_atoms)


def verify_extension(
    theory: DefaultTheory,
    candidate: Iterable[str],
    *,
    max_atoms: int = DEFAULT_MAX_ATOMS,
    max_defaults: int = DEFAULT_MAX_DEFAULTS,
) -> bool:
    """Fixed-point test for a candidate set of generating default ids."""
    space = _prepare(theory, max_atoms, max_defaults)
    candidate = frozenset(candidate)
    for i in candidate:
        if i not in space.rules:
            raise UnknownRuleId(i)
    return space.verify(candidate)


def _collapse(extensions: Iterable[Extension]) -> tuple[Extension, ...]:
    by_literals: dict[frozenset, Extension] = {}
    for ext in sorted(extensions, key=Extension.sort_key):
        by_literals.setdefault(ext.literals, ext)
    return tuple(sorted(by_literals.values(), key=Extension.sort_key))


def _subset_extensions(space: _Space) -> tuple[Extension, ...]:
    ids = [r.id for r in space.theory.defaults]
    found = []
    for k in range(len(ids) + 1):
        for combo in combinations(ids, k):
            cand = frozenset(combo)
            if space.verify(cand):
                found.append(space.extension(cand))
    return _collapse(found)


def _iterative_extensions(space: _Space, trace: list | None = None) -> tuple[Extension, ...]:
    for r in space.theory.defaults:
        if not r.is_normal:
            raise ValueError(f"iterative construction needs normal defaults; {r.id!r} is not")
    found: dict[frozenset, Extension] = {}
    seen: set[frozenset] = set()
    stack: list[tuple[str, ...]] = [()]
    while stack:
        applied = stack.pop()
        key = frozenset(applied)
        if key in seen:
            continue
        seen.add(key)
        e = space.belief(applied)
        options = [r.id for r in space.theory.defaults if r.id not in key and space.applicable(r, e)]
        if not options:
            if key not in found:
                found[key] = space.extension(key)
                if trace is not None:
                    trace.append(applied)
            continue
        # Reversed so the declaration-order branch is explored first.
        for rid in reversed(options):
            stack.append(applied + (rid,))
    return _collapse(found.values())


def compute_extensions(
    theory: DefaultTheory,
    *,
    method: str = "subsets",
    max_atoms: int = DEFAULT_MAX_ATOMS,
    max_defaults: int = DEFAULT_MAX_DEFAULTS,
    trace: list | None = None,
) -> tuple[Extension, ...]:
    """All Reiter extensions of ``theory``, ordered by generating set.

    Schemas are grounded over the theory's constants first.  With
    ``method="iterative"`` and a ``trace`` list, the firing sequence that
    produced each extension is appended to ``trace``.
    """
    space = _prepare(theory, max_atoms, max_defaults)
    if method == "subsets":
        return _subset_extensions(space)
    if method == "iterative":
        return _iterative_extensions(space, trace)
    raise ValueError(f"unknown method {method!r}")


def verdict(extensions: Sequence[Extension], goal: Literal) -> QueryVerdict:
    if not extensions:
        return QueryVerdict.NO_EXTENSION
    hits = [goal in e for e in extensions]
    if all(hits):
        return QueryVerdict.ENTAILED_IN_ALL
    if any(hits):
        return QueryVerdict.ENTAILED_IN_SOME
    return QueryVerdict.ENTAILED_IN_NONE


def query(theory: DefaultTheory, goal: Literal, **kwargs) -> QueryVerdict:
    """Skeptical/credulous status of ``goal`` across all extensions."""
    return verdict(compute_extensions(theory, **kwargs), goal)
