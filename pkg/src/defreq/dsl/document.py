from __future__ import annotations

from dataclasses import dataclass, field

from ..context import ContextProfile
from ..engine import DefaultTheory
from ..errors import DefreqError
from ..records import RequirementRecord


@dataclass(frozen=True, order=True)
class SourceSpan:
    line: int
    column: int
    length: int = 1

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


@dataclass(frozen=True)
class Diagnostic:
    kind: str  # LexError, ParseError, DuplicateRuleId, UnsatisfiableBackground, ...
    message: str
    span: SourceSpan

    def format(self, source: str = "<input>") -> str:
        return f"{source}:{self.span.line}:{self.span.column}: {self.kind}: {self.message}"


class DocumentError(DefreqError):
    def __init__(self, diagnostics: list[Diagnostic], source: str = "<input>"):
        self.diagnostics = diagnostics
        self.source = source
        super().__init__("\n".join(d.format(source) for d in diagnostics))


@dataclass
class Document:
    theory: DefaultTheory = field(default_factory=DefaultTheory)
    profile: ContextProfile = field(default_factory=ContextProfile)
    records: list[RequirementRecord] = field(default_factory=list)
    # Where each construct was declared, keyed e.g. ("default", "D").
    spans: dict[tuple[str, str], SourceSpan] = field(default_factory=dict, compare=False, repr=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Document):
            return NotImplemented
        return (
            self.theory.background == other.theory.background
            and self.theory.defaults == other.theory.defaults
            and dict(self.profile.facts) == dict(other.profile.facts)
            and self.records == other.records
        )
