from __future__ import annotations

from ..context import ContextProfile, DefaultDomain
from ..engine import DefaultRule, DefaultTheory
from ..logic import quote_ident
from ..records import RequirementRecord
from .document import Document

HEADER = "# default theory document (format version 1)\n"


def quote_string(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _domain_lines(domain: DefaultDomain, indent: str) -> list[str]:
    lines = [f"{indent}domain {{"]
    inner = indent + "  "
    for c in domain.conditions or ():
        note = f" {quote_string(c.note)}" if c.note else ""
        lines.append(f"{inner}{c.dimension.value}: {c.condition.render()}{note};")
    if domain.members is not None:
        lines.append(f"{inner}members: {', '.join(quote_ident(m) for m in domain.members)};")
    for dim in sorted(domain.not_applicable, key=lambda d: list(type(d)).index(d)):
        lines.append(f"{inner}{dim.value}: n/a;")
    lines.append(f"{indent}}}")
    return lines


def print_rule(rule: DefaultRule, description: str = "") -> str:
    head = f"default {quote_ident(rule.id)}"
    if description:
        head += f" {quote_string(description)}"
    lines = [head + " {", f"  {rule.render()}"]
    if rule.domain is not None:
        lines.extend(_domain_lines(rule.domain, "  "))
    lines.append("}")
    return "\n".join(lines) + "\n"


def print_theory(
    theory: DefaultTheory,
    profile: ContextProfile | None = None,
    records: list[RequirementRecord] | None = None,
) -> str:
    """Canonical text for a theory, its context profile and its records."""
    blocks: list[str] = []
    if len(theory.background):
        lines = ["background {"]
        for clause in theory.background.sorted_clauses():
            lines.append("  " + " | ".join(l.render() for l in clause) + ";")
        lines.append("}")
        blocks.append("\n".join(lines) + "\n")

    printed: set[str] = set()
    for rec in records or []:
        if rec.is_default:
            blocks.append(print_rule(rec.rule, rec.description))
            printed.add(rec.rule.id)
        else:
            desc = f" {quote_string(rec.description)}" if rec.description else ""
            blocks.append(f"ground {rec.assertion.render()}{desc};\n")
    for rule in theory.defaults:
        if rule.id not in printed:
            blocks.append(print_rule(rule))

    if profile is not None:
        for obj in profile.objects():
            lines = [f"profile {quote_ident(obj)} {{"]
            for clause in profile.facts[obj].sorted_clauses():
                lines.append("  " + " | ".join(l.render() for l in clause) + ";")
            lines.append("}")
            blocks.append("\n".join(lines) + "\n")

    return HEADER + "".join("\n" + b for b in blocks)


def print_document(doc: Document) -> str:
    return print_theory(doc.theory, doc.profile, doc.records)
