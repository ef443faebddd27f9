"""Default requirements: Reiter default theories, context domains and documentation."""

from .context import (
    ContextCondition,
    ContextProfile,
    DefaultDomain,
    Dimension,
    lint_domain_coverage,
    restrict_theory,
    satisfies_domain,
)
from .engine import (
    DefaultRule,
    DefaultTheory,
    Extension,
    QueryVerdict,
    compute_extensions,
    is_applicable,
    query,
    verify_extension,
)
from .logic import Atom, ClauseSet, Literal, closure, entails, is_consistent_with, lit
from .records import RecordKind, RequirementRecord

__version__ = "0.1.0"

__all__ = [
    "Atom",
    "ClauseSet",
    "ContextCondition",
    "ContextProfile",
    "DefaultDomain",
    "DefaultRule",
    "DefaultTheory",
    "Dimension",
    "Extension",
    "Literal",
    "QueryVerdict",
    "RecordKind",
    "RequirementRecord",
    "closure",
    "compute_extensions",
    "entails",
    "is_applicable",
    "is_consistent_with",
    "lint_domain_coverage",
    "lit",
    "query",
    "restrict_theory",
    "satisfies_domain",
    "verify_extension",
]
