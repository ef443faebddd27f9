"""Cascading defaults: nested-rule flattening, dependency graph, elicitation gaps."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from typing import Iterable

import networkx as nx

from .engine import DefaultRule, DefaultTheory
from .errors import MalformedNesting, NestingDepthExceeded
from .logic import DEFAULT_MAX_ATOMS, Atom, Literal, entails

DEFAULT_MAX_NESTING = 5


def nesting_depth(rule: DefaultRule) -> int:
    if isinstance(rule.justification, DefaultRule) or isinstance(rule.consequent, DefaultRule):
        raise MalformedNesting(f"default {rule.id!r}: nesting is only allowed in prerequisite position")
    inner = [nesting_depth(p) + 1 for p in rule.prerequisites if isinstance(p, DefaultRule)]
    return max(inner, default=0)


def flatten_nested(rule: DefaultRule, *, max_depth: int = DEFAULT_MAX_NESTING) -> list[DefaultRule]:
    """Turn a nested default into a chain of flat defaults.

    Each inner default becomes its own rule (id ``<parent>_<position>``) and
    its consequent replaces it in the parent's prerequisites.  Inner rules
    come before the rules that depend on them.
    """
    depth = nesting_depth(rule)
    if depth > max_depth:
        raise NestingDepthExceeded(depth, max_depth)
    out: list[DefaultRule] = []

    def walk(r: DefaultRule, rid: str) -> None:
        prereqs: list[Literal] = []
        for pos, p in enumerate(r.prerequisites, 1):
            if isinstance(p, DefaultRule):
                walk(p, f"{rid}_{pos}")
                prereqs.append(p.consequent)
            else:
                prereqs.append(p)
        out.append(replace(r, id=rid, prerequisites=tuple(prereqs)))

    walk(rule, rule.id)
    return out


def flatten_theory(theory: DefaultTheory, *, max_depth: int = DEFAULT_MAX_NESTING) -> DefaultTheory:
    rules: list[DefaultRule] = []
    for r in theory.defaults:
        rules.extend(flatten_nested(r, max_depth=max_depth))
    return DefaultTheory(theory.background, tuple(rules))


def _analysis_theory(theory: DefaultTheory, objects: Iterable[str] | None) -> DefaultTheory:
    flat = flatten_theory(theory)
    objs = set(objects) if objects is not None else flat.constants()
    # Without any object to instantiate over, schemas are analysed as written.
    return flat.grounded(objs) if objs else flat


def rule_node(rule_id: str) -> str:
    return f"rule:{rule_id}"


def atom_node(atom: Atom) -> str:
    return f"atom:{atom.render(quoted=False)}"


@dataclass
class CascadeGraph:
    rules: list[str]
    atoms: list[Atom]
    edges: list[tuple[str, str]]
    grounded: frozenset[Atom]
    depth: dict[str, int] = field(default_factory=dict)
    cycles: list[list[str]] = field(default_factory=list)

    def atom_depth(self, atom: Atom) -> int:
        return self.depth[atom_node(atom)]

    def successors(self, node: str) -> list[str]:
        return [b for a, b in self.edges if a == node]

    def predecessors(self, node: str) -> list[str]:
        return [a for a, b in self.edges if b == node]

    def to_dot(self, name: str = "cascade") -> str:
        lines = [f"digraph {name} {{", "  rankdir=BT;"]
        for rid in self.rules:
            node = rule_node(rid)
            lines.append(f'  "{node}" [shape=box, label="{rid}", depth={self.depth[node]}];')
        for atom in self.atoms:
            node = atom_node(atom)
            style = ", style=filled" if atom in self.grounded else ""
            label = atom.render(quoted=False)
            lines.append(f'  "{node}" [shape=ellipse, label="{label}", depth={self.depth[node]}{style}];')
        for a, b in self.edges:
            lines.append(f'  "{a}" -> "{b}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_cascade(
    theory: DefaultTheory,
    *,
    objects: Iterable[str] | None = None,
    max_atoms: int = DEFAULT_MAX_ATOMS,
) -> CascadeGraph:
    """Bipartite rule/atom dependency graph with longest-path atom depths.

    Depth counts rule applications from atoms decided by the background
    knowledge (depth 0).  Cycles are reported in ``cycles``; depths are then
    computed over the graph of strongly connected components.
    """
    flat = _analysis_theory(theory, objects)
    g = nx.DiGraph()
    atoms: dict[Atom, None] = {}
    rules = [r.id for r in flat.defaults]
    for r in flat.defaults:
        g.add_node(rule_node(r.id))
        for p in r.prerequisites:
            atoms.setdefault(p.atom)
        atoms.setdefault(r.consequent.atom)
    for atom in atoms:
        g.add_node(atom_node(atom))
    for r in flat.defaults:
        for p in r.prerequisites:
            g.add_edge(atom_node(p.atom), rule_node(r.id))
        g.add_edge(rule_node(r.id), atom_node(r.consequent.atom))

    w = flat.background
    grounded = frozenset(
        a for a in atoms
        if entails(w, Literal(a), max_atoms=max_atoms) or entails(w, Literal(a, True), max_atoms=max_atoms)
    )

    cycles = [sorted(c) for c in nx.strongly_connected_components(g) if len(c) > 1]
    cycles.sort()

    # Longest path over the condensation; rule -> atom edges cost one step and
    # atoms decided by W do not depend on anything.
    dag = g.copy()
    dag.remove_edges_from([(u, v) for u, v in g.edges if v in {atom_node(a) for a in grounded}])
    cond = nx.condensation(dag)
    members = cond.graph["mapping"]
    comp_depth: dict[int, int] = {}
    for comp in nx.topological_sort(cond):
        best = 0
        for pred in cond.predecessors(comp):
            best = max(best, comp_depth[pred])
        for node in cond.nodes[comp]["members"]:
            for src in dag.predecessors(node):
                if members[src] != comp and src.startswith("rule:"):
                    best = max(best, comp_depth[members[src]] + 1)
        comp_depth[comp] = best
    depth = {node: comp_depth[members[node]] for node in g.nodes}

    return CascadeGraph(
        rules=rules,
        atoms=list(atoms),
        edges=sorted(g.edges),
        grounded=grounded,
        depth=depth,
        cycles=cycles,
    )


class GapStatus(enum.Enum):
    UNGROUNDED = "Ungrounded"
    GROUNDED_IN_W = "GroundedInW"
    GROUNDED_BY_DEFAULT = "GroundedByDefault"


@dataclass(frozen=True)
class ElicitationGap:
    atom: Atom
    needed_by: tuple[str, ...]
    status: GapStatus = GapStatus.UNGROUNDED


def classify_prerequisites(
    theory: DefaultTheory,
    *,
    objects: Iterable[str] | None = None,
    max_atoms: int = DEFAULT_MAX_ATOMS,
) -> list[ElicitationGap]:
    """Status of every prerequisite atom, in order of first use."""
    flat = _analysis_theory(theory, objects)
    produced = {r.consequent.atom for r in flat.defaults}
    needed: dict[Atom, list[str]] = {}
    for r in flat.defaults:
        for p in r.prerequisites:
            users = needed.setdefault(p.atom, [])
            if r.id not in users:
                users.append(r.id)
    out = []
    w = flat.background
    for atom, users in needed.items():
        if entails(w, Literal(atom), max_atoms=max_atoms) or entails(w, Literal(atom, True), max_atoms=max_atoms):
            status = GapStatus.GROUNDED_IN_W
        elif atom in produced:
            status = GapStatus.GROUNDED_BY_DEFAULT
        else:
            status = GapStatus.UNGROUNDED
        out.append(ElicitationGap(atom, tuple(users), status))
    return out


def find_elicitation_gaps(theory: DefaultTheory, **kwargs) -> list[ElicitationGap]:
    """Prerequisite atoms neither decided by W nor concluded by any default."""
    return [g for g in classify_prerequisites(theory, **kwargs) if g.status is GapStatus.UNGROUNDED]
