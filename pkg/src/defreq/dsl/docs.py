"""Requirements documentation: two-column tables and a structured JSON form."""

from __future__ import annotations

import json
from typing import Iterable

from ..context import ContextCondition, DefaultDomain, Dimension, lint_domain_coverage
from ..records import RecordKind, RequirementRecord
from .parser import parse_literal, parse_rule

STRUCTURED_VERSION = 1


def proposition(record: RequirementRecord) -> str:
    if record.is_default:
        return record.rule.render("doc")
    return record.assertion.render("doc")


def description(record: RequirementRecord) -> str:
    if not record.is_default:
        text = "Ground Requirement"
        return f"{text} where {record.description}" if record.description else text
    text = "Default Requirement"
    if record.description:
        text += f" where {record.description}"
    domain = record.domain
    if domain is None:
        return text
    if domain.conditions:
        conj = " ∧ ".join(c.condition.render("doc") for c in domain.conditions)
        text += (": " if record.description else " where ") + conj
    if domain.members is not None:
        text += " (X ∈ {" + ", ".join(domain.members) + "})"
    if domain.not_applicable:
        dims = [d.value for d in Dimension if d in domain.not_applicable]
        text += f" [not applicable: {', '.join(dims)}]"
    return text


def table_text(records: Iterable[RequirementRecord]) -> str:
    rows = [("Proposition", "Description")]
    rows += [(proposition(r), description(r)) for r in records]
    w0 = max(len(r[0]) for r in rows)
    w1 = max(len(r[1]) for r in rows)
    rule = f"+-{'-' * w0}-+-{'-' * w1}-+"
    out = [rule]
    for i, (a, b) in enumerate(rows):
        out.append(f"| {a.ljust(w0)} | {b.ljust(w1)} |")
        if i == 0:
            out.append(rule)
    if len(rows) > 1:
        out.append(rule)
    return "\n".join(out) + "\n"


def _domain_json(domain: DefaultDomain | None):
    if domain is None:
        return None
    return {
        "conditions": None
        if domain.conditions is None
        else [
            {"dimension": c.dimension.value, "condition": c.condition.render(), "note": c.note}
            for c in domain.conditions
        ],
        "members": None if domain.members is None else list(domain.members),
        "not_applicable": [d.value for d in Dimension if d in domain.not_applicable],
    }


def _record_json(record: RequirementRecord) -> dict:
    out = {"kind": record.kind.value, "description": record.description, "proposition": proposition(record)}
    if record.is_default:
        out["id"] = record.rule.id
        out["rule"] = record.rule.render()
        out["domain"] = _domain_json(record.domain)
    else:
        out["assertion"] = record.assertion.render()
    return out


def structured(records: Iterable[RequirementRecord]) -> dict:
    records = list(records)
    return {
        "version": STRUCTURED_VERSION,
        "requirements": [_record_json(r) for r in records],
        "lint": [
            {"requirement": i, "label": r.label, "missing": [d.value for d in lint_domain_coverage(r)]}
            for i, r in enumerate(records)
        ],
    }


def emit_documentation(records: Iterable[RequirementRecord], format: str = "table-text") -> str:
    if format in ("table-text", "table"):
        return table_text(records)
    if format == "structured":
        return json.dumps(structured(records), indent=2, ensure_ascii=False) + "\n"
    raise ValueError(f"unknown documentation format {format!r}")


def _domain_from_json(data) -> DefaultDomain | None:
    if data is None:
        return None
    conditions = None
    if data.get("conditions") is not None:
        conditions = tuple(
            ContextCondition(Dimension(c["dimension"]), parse_literal(c["condition"]), c.get("note", ""))
            for c in data["conditions"]
        )
    members = tuple(data["members"]) if data.get("members") is not None else None
    na = frozenset(Dimension(d) for d in data.get("not_applicable", []))
    return DefaultDomain(conditions=conditions, members=members, not_applicable=na)


def read_structured(text: str) -> list[RequirementRecord]:
    """Rebuild the records of a structured documentation export."""
    data = json.loads(text)
    if data.get("version") != STRUCTURED_VERSION:
        raise ValueError(f"unsupported structured document version {data.get('version')!r}")
    out = []
    for item in data["requirements"]:
        kind = RecordKind(item["kind"])
        if kind is RecordKind.GROUND:
            out.append(RequirementRecord.ground(parse_literal(item["assertion"]), item.get("description", "")))
        else:
            rule = parse_rule(item["rule"], item["id"])
            domain = _domain_from_json(item.get("domain"))
            if domain is not None:
                rule = type(rule)(rule.id, rule.prerequisites, rule.justification, rule.consequent, domain)
            out.append(RequirementRecord.default(rule, item.get("description", "")))
    return out
