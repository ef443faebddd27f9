"""Benchmark problems: one default, two objects, one exception.

The queried object should inherit the default unless its context violates
the default's domain.  Variability levels edit the queried object's context
one dimension at a time.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Mapping

import yaml

from .context import ContextProfile, Dimension, Dropped, restrict_theory
from .engine import (
    DEFAULT_MAX_DEFAULTS,
    DefaultRule,
    DefaultTheory,
    Extension,
    QueryVerdict,
    compute_extensions,
    verdict,
)
from .errors import InvalidProblem, LevelEditsMultipleDimensions
from .logic import DEFAULT_MAX_ATOMS, ClauseSet, Literal, entails


class BenchmarkAnswer(enum.Enum):
    BENCHMARK = "Benchmark"
    EXCEPTION = "Exception"
    OTHER = "Other"
    CANT_SAY = "CantSay"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class BenchmarkProblem:
    rule: DefaultRule
    objects: tuple[str, str]  # (exception object, queried object)
    shared_facts: ClauseSet
    exception_fact: Literal
    query: Literal
    profile: ContextProfile = field(default_factory=ContextProfile)
    alternative: Literal | None = None

    def __post_init__(self) -> None:
        if not self.rule.is_schema:
            raise InvalidProblem(f"rule {self.rule.id!r} must be stated over the placeholder X")
        first, second = (self.rule.instantiate(o) for o in self.objects)
        if self.exception_fact != first.consequent.complement():
            raise InvalidProblem(f"exception fact must be {first.consequent.complement()}")
        if self.query != second.consequent:
            raise InvalidProblem(f"query must be {second.consequent}")
        for inst in (first, second):
            for p in inst.prerequisites:
                if not entails(self.shared_facts, p):
                    raise InvalidProblem(f"shared facts do not establish {p}")

    @property
    def background(self) -> ClauseSet:
        return self.shared_facts.union([self.exception_fact])


@dataclass
class Classification:
    answer: BenchmarkAnswer
    trace: list[str]
    dropped: tuple[Dropped, ...] = ()
    extensions: tuple[Extension, ...] = ()

    def violated_dimensions(self) -> list[Dimension]:
        dims: list[Dimension] = []
        for d in self.dropped:
            for dim in d.dimensions():
                if dim not in dims:
                    dims.append(dim)
        return dims


def classify_benchmark(
    problem: BenchmarkProblem,
    *,
    max_atoms: int = DEFAULT_MAX_ATOMS,
    max_defaults: int = DEFAULT_MAX_DEFAULTS,
) -> Classification:
    trace: list[str] = []
    theory = DefaultTheory(problem.background, (problem.rule,))
    target = problem.objects[1]
    trace.append(f"background: {', '.join(l.render() for c in theory.background.sorted_clauses() for l in c)}")
    restriction = restrict_theory(theory, problem.profile, {problem.rule.id: target}, max_atoms=max_atoms)
    for d in restriction.dropped:
        conds = "; ".join(f"{c.dimension.value}: {c.condition.render()}" for c in d.violated)
        trace.append(f"domain check for {d.object}: dropped {problem.rule.id} (violated {conds})")
    if not restriction.dropped:
        trace.append(f"domain check for {target}: {problem.rule.id} applies")
    extensions = compute_extensions(restriction.theory, max_atoms=max_atoms, max_defaults=max_defaults)
    trace.append(f"extensions: {len(extensions)}")
    for ext in extensions:
        gen = ", ".join(sorted(ext.generating)) or "none"
        trace.append(f"  generated by {{{gen}}}")

    query_status = verdict(extensions, problem.query)
    trace.append(f"{problem.query.render()}: {query_status}")
    if query_status is QueryVerdict.ENTAILED_IN_ALL:
        answer = BenchmarkAnswer.BENCHMARK
    else:
        contrary = verdict(extensions, problem.query.complement())
        trace.append(f"{problem.query.complement().render()}: {contrary}")
        if contrary is QueryVerdict.ENTAILED_IN_ALL:
            answer = BenchmarkAnswer.EXCEPTION
        elif problem.alternative is not None and verdict(extensions, problem.alternative) is QueryVerdict.ENTAILED_IN_ALL:
            trace.append(f"{problem.alternative.render()}: {QueryVerdict.ENTAILED_IN_ALL}")
            answer = BenchmarkAnswer.OTHER
        else:
            answer = BenchmarkAnswer.CANT_SAY
    trace.append(f"answer: {answer}")
    return Classification(answer, trace, restriction.dropped, extensions)


@dataclass(frozen=True)
class Level:
    dimension: Dimension
    level: int
    text: str = ""
    referent: bool = False
    interpretation: str = ""
    # object -> (facts removed, facts added)
    edits: Mapping[str, tuple[tuple[Literal, ...], tuple[Literal, ...]]] = field(default_factory=dict)


def _predicate_tags(problem: BenchmarkProblem) -> dict[str, set[Dimension]]:
    tags: dict[str, set[Dimension]] = {}
    domain = problem.rule.domain
    if domain is not None and domain.conditions:
        for c in domain.conditions:
            tags.setdefault(c.condition.atom.predicate, set()).add(c.dimension)
    return tags


def apply_level(problem: BenchmarkProblem, level: Level) -> BenchmarkProblem:
    """The problem with the level's context edits applied."""
    tags = _predicate_tags(problem)
    touched = {level.dimension}
    for removed, added in level.edits.values():
        for fact in (*removed, *added):
            touched |= tags.get(fact.atom.predicate, set())
    if len(touched) > 1:
        names = ", ".join(sorted(d.value for d in touched))
        raise LevelEditsMultipleDimensions(
            f"{level.dimension.value} level {level.level} edits facts of several dimensions: {names}"
        )
    profile = problem.profile
    for obj, (removed, added) in level.edits.items():
        kb = profile.facts.get(obj, ClauseSet())
        for fact in removed:
            kb = kb.without(fact)
        kb = kb.union(added)
        profile = profile.with_facts(obj, kb)
    return replace(problem, profile=profile)


@dataclass
class LevelResult:
    level: Level
    classification: Classification

    @property
    def answer(self) -> BenchmarkAnswer:
        return self.classification.answer


@dataclass
class SuiteReport:
    results: list[LevelResult]

    def by_dimension(self) -> dict[Dimension, list[LevelResult]]:
        out: dict[Dimension, list[LevelResult]] = {}
        for r in self.results:
            out.setdefault(r.level.dimension, []).append(r)
        return out

    def referent(self, dim: Dimension) -> LevelResult:
        rows = self.by_dimension()[dim]
        for r in rows:
            if r.level.referent:
                return r
        return min(rows, key=lambda r: r.level.level)

    def changed(self) -> dict[Dimension, bool]:
        """Per dimension: did any level's answer differ from the referent's?"""
        out = {}
        for dim, rows in self.by_dimension().items():
            ref = self.referent(dim).answer
            out[dim] = any(r.answer is not ref for r in rows)
        return out

    def render(self) -> str:
        lines = []
        changed = self.changed()
        for dim, rows in self.by_dimension().items():
            lines.append(f"{dim.title}: {'answer changes' if changed[dim] else 'no change'}")
            for r in rows:
                mark = " R" if r.level.referent else ""
                why = ""
                dims = r.classification.violated_dimensions()
                if dims:
                    why = f"  (violated: {', '.join(d.value for d in dims)})"
                lines.append(f"  {r.level.level}{mark}  {str(r.answer):<9}  {r.level.text}{why}")
        return "\n".join(lines) + "\n"


def run_variability_suite(
    problem: BenchmarkProblem,
    levels: list[Level],
    **kwargs,
) -> SuiteReport:
    ordered = sorted(levels, key=lambda lv: (list(Dimension).index(lv.dimension), lv.level))
    results = [LevelResult(lv, classify_benchmark(apply_level(problem, lv), **kwargs)) for lv in ordered]
    return SuiteReport(results)


def load_scenario(source: str | Path, *, max_atoms: int = DEFAULT_MAX_ATOMS) -> tuple[BenchmarkProblem, list[Level]]:
    """Read a YAML scenario file (or its text) into a problem and its levels."""
    from .dsl import parse_document, parse_literal

    if isinstance(source, Path):
        text = source.read_text(encoding="utf-8")
    else:
        text = source
    data = yaml.safe_load(text) or {}
    try:
        doc = parse_document(data.get("theory", ""), source="<scenario theory>", max_atoms=max_atoms)
        if len(doc.theory.defaults) != 1:
            raise InvalidProblem("a scenario theory declares exactly one default")
        shared = ClauseSet.of(parse_literal(s) for s in data.get("shared", []))
        shared = shared.union(doc.theory.background)
        alternative = data.get("alternative")
        problem = BenchmarkProblem(
            rule=doc.theory.defaults[0],
            objects=tuple(data["objects"]),
            shared_facts=shared,
            exception_fact=parse_literal(data["exception"]),
            query=parse_literal(data["query"]),
            profile=doc.profile,
            alternative=parse_literal(alternative) if alternative else None,
        )
        levels = []
        for dim_name, rows in (data.get("levels") or {}).items():
            dim = Dimension(dim_name)
            for row in rows:
                edits = {}
                for obj, change in (row.get("edits") or {}).items():
                    edits[obj] = (
                        tuple(parse_literal(s) for s in change.get("remove", [])),
                        tuple(parse_literal(s) for s in change.get("add", [])),
                    )
                levels.append(
                    Level(
                        dimension=dim,
                        level=int(row["level"]),
                        text=row.get("text", ""),
                        referent=bool(row.get("referent", False)),
                        interpretation=row.get("interpretation", ""),
                        edits=edits,
                    )
                )
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidProblem(f"malformed scenario: {exc}") from exc
    return problem, levels
