"""Requirement records: the unit of requirements documentation."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .context import DefaultDomain
from .engine import DefaultRule
from .logic import Literal


class RecordKind(enum.Enum):
    GROUND = "ground"
    DEFAULT = "default"


@dataclass(frozen=True)
class RequirementRecord:
    kind: RecordKind
    assertion: Literal | None = None
    # For default records the rule keeps its nested surface form, if any.
    rule: DefaultRule | None = None
    description: str = ""

    def __post_init__(self) -> None:
        if self.kind is RecordKind.GROUND:
            if self.assertion is None or self.rule is not None:
                raise ValueError("a ground requirement is a single assertion")
        elif self.rule is None or self.assertion is not None:
            raise ValueError("a default requirement carries a rule")

    @classmethod
    def ground(cls, assertion: Literal, description: str = "") -> RequirementRecord:
        return cls(RecordKind.GROUND, assertion=assertion, description=description)

    @classmethod
    def default(cls, rule: DefaultRule, description: str = "") -> RequirementRecord:
        return cls(RecordKind.DEFAULT, rule=rule, description=description)

    @property
    def is_default(self) -> bool:
        return self.kind is RecordKind.DEFAULT

    @property
    def domain(self) -> DefaultDomain | None:
        return self.rule.domain if self.rule is not None else None

    @property
    def label(self) -> str:
        return self.rule.id if self.rule is not None else self.assertion.render()
