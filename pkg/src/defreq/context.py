"""Six-dimension context framework for default domains.

A default requirement is a valid source of requirements only for objects
whose circumstances satisfy its domain.  Domains are either intensional
(dimension-tagged condition literals over the placeholder ``X``) or
extensional (an explicit member list).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Iterable, Mapping

from .engine import PLACEHOLDER, DefaultRule, DefaultTheory
from .errors import UnknownObject, UnknownRuleId
from .logic import DEFAULT_MAX_ATOMS, Atom, ClauseSet, Literal, entails, is_satisfiable

if TYPE_CHECKING:
    from .records import RequirementRecord


class Dimension(enum.Enum):
    ITEMS = "items"
    RULES = "rules"
    LOCALIZATION = "localization"
    ACTIVITY = "activity"
    RELATIONSHIP = "relationship"
    GRANULARITY = "granularity"

    @property
    def title(self) -> str:
        return self.value.capitalize()

    def __str__(self) -> str:
        return self.value


# Predicate of the synthetic condition reported for extensional domains.
MEMBER_PREDICATE = "memberOfDomain"


@dataclass(frozen=True)
class ContextCondition:
    dimension: Dimension
    condition: Literal
    note: str = ""

    def __post_init__(self) -> None:
        if self.condition.atom.args.count(PLACEHOLDER) != 1:
            raise ValueError(
                f"condition {self.condition} must mention the placeholder {PLACEHOLDER} exactly once"
            )

    def instantiate(self, obj: str) -> Literal:
        return self.condition.substitute({PLACEHOLDER: obj})


@dataclass(frozen=True)
class DefaultDomain:
    conditions: tuple[ContextCondition, ...] | None = None
    members: tuple[str, ...] | None = None
    # Dimensions considered during elicitation and judged irrelevant.
    not_applicable: frozenset[Dimension] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.conditions is not None and not isinstance(self.conditions, tuple):
            object.__setattr__(self, "conditions", tuple(self.conditions))
        if self.members is not None and not isinstance(self.members, tuple):
            object.__setattr__(self, "members", tuple(self.members))
        if not isinstance(self.not_applicable, frozenset):
            object.__setattr__(self, "not_applicable", frozenset(self.not_applicable))
        if (self.conditions is None) == (self.members is None):
            raise ValueError("a domain is either intensional (conditions) or extensional (members)")
        if self.members is not None and not self.members:
            raise ValueError("an extensional domain needs at least one member")

    @property
    def is_extensional(self) -> bool:
        return self.members is not None

    def covered(self) -> frozenset[Dimension]:
        """Dimensions with a condition or an explicit not-applicable marker."""
        if self.is_extensional:
            dims = {Dimension.ITEMS}
        else:
            dims = {c.dimension for c in self.conditions}
        return frozenset(dims) | self.not_applicable

    def membership_condition(self) -> ContextCondition:
        return ContextCondition(
            Dimension.ITEMS,
            Literal(Atom(MEMBER_PREDICATE, (PLACEHOLDER,))),
            "object is not listed in the extensional domain",
        )


@dataclass(frozen=True)
class ContextProfile:
    facts: Mapping[str, ClauseSet] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for obj, kb in self.facts.items():
            if not is_satisfiable(kb):
                raise ValueError(f"context facts for {obj!r} are contradictory")

    def __contains__(self, obj: str) -> bool:
        return obj in self.facts

    def __getitem__(self, obj: str) -> ClauseSet:
        try:
            return self.facts[obj]
        except KeyError:
            raise UnknownObject(obj) from None

    def objects(self) -> list[str]:
        return sorted(self.facts)

    def with_facts(self, obj: str, kb: ClauseSet) -> ContextProfile:
        facts = dict(self.facts)
        facts[obj] = kb
        return ContextProfile(facts)

    def merged(self, other: ContextProfile) -> ContextProfile:
        facts = dict(self.facts)
        for obj, kb in other.facts.items():
            facts[obj] = facts[obj].union(kb) if obj in facts else kb
        return ContextProfile(facts)


def satisfies_domain(
    profile: ContextProfile,
    obj: str,
    domain: DefaultDomain,
    *,
    max_atoms: int = DEFAULT_MAX_ATOMS,
) -> tuple[bool, list[ContextCondition]]:
    """Check ``obj`` against ``domain``; returns (ok, violated conditions)."""
    if domain.is_extensional:
        if obj in domain.members:
            return True, []
        return False, [domain.membership_condition()]
    facts = profile[obj]
    violated = [
        c for c in domain.conditions if not entails(facts, c.instantiate(obj), max_atoms=max_atoms)
    ]
    return not violated, violated


@dataclass(frozen=True)
class Dropped:
    rule_id: str
    object: str
    violated: tuple[ContextCondition, ...]

    def dimensions(self) -> list[Dimension]:
        return sorted({c.dimension for c in self.violated}, key=list(Dimension).index)


@dataclass(frozen=True)
class Restriction:
    theory: DefaultTheory
    dropped: tuple[Dropped, ...] = ()
    # Ground rules with a domain but no object to evaluate it against.
    unchecked: tuple[str, ...] = ()


def restrict_theory(
    theory: DefaultTheory,
    profile: ContextProfile,
    binding: Mapping[str, str] | None = None,
    *,
    max_atoms: int = DEFAULT_MAX_ATOMS,
) -> Restriction:
    """Keep only the defaults whose domain admits the object they are applied to.

    A bound rule is checked against its bound object (schemas are
    instantiated for it).  Unbound instances use their own object.  Unbound
    schemas with a domain are expanded over the theory's constants and the
    profile's objects; objects without a profile entry satisfy no condition.
    """
    binding = dict(binding or {})
    ids = {r.id for r in theory.defaults}
    for rid in binding:
        if rid not in ids:
            raise UnknownRuleId(rid)

    kept: list[DefaultRule] = []
    dropped: list[Dropped] = []
    unchecked: list[str] = []

    def check(rule: DefaultRule, obj: str, lenient: bool) -> None:
        if lenient and obj not in profile and not rule.domain.is_extensional:
            ok, violated = False, list(rule.domain.conditions)
        else:
            ok, violated = satisfies_domain(profile, obj, rule.domain, max_atoms=max_atoms)
        if ok:
            kept.append(rule)
        else:
            dropped.append(Dropped(rule.id, obj, tuple(violated)))

    for rule in theory.defaults:
        if rule.id in binding:
            obj = binding[rule.id]
            bound = rule.instantiate(obj) if rule.is_schema else rule
            if rule.domain is None:
                kept.append(bound)
            else:
                check(bound, obj, lenient=False)
        elif rule.domain is None:
            kept.append(rule)
        elif rule.object is not None:
            check(rule, rule.object, lenient=True)
        elif rule.is_schema:
            objs = sorted(theory.constants() | set(profile.objects()))
            for obj in objs:
                check(rule.instantiate(obj), obj, lenient=True)
        else:
            kept.append(rule)
            unchecked.append(rule.id)

    return Restriction(DefaultTheory(theory.background, tuple(kept)), tuple(dropped), tuple(unchecked))


def lint_domain_coverage(record: "RequirementRecord") -> list[Dimension]:
    """Dimensions a default requirement's documentation leaves unaddressed."""
    if not record.is_default:
        return []
    if record.domain is None:
        return list(Dimension)
    covered = record.domain.covered()
    return [d for d in Dimension if d not in covered]


def lint_records(records: Iterable["RequirementRecord"]) -> list[tuple["RequirementRecord", list[Dimension]]]:
    return [(r, lint_domain_coverage(r)) for r in records]
