"""Text format for theories, context profiles and requirement records."""

from .docs import emit_documentation, read_structured
from .document import Diagnostic, Document, DocumentError, SourceSpan
from .parser import parse_document, parse_literal, parse_rule, tokenize
from .printer import print_document, print_theory

__all__ = [
    "Diagnostic",
    "Document",
    "DocumentError",
    "SourceSpan",
    "emit_documentation",
    "parse_document",
    "parse_literal",
    "parse_rule",
    "print_document",
    "print_theory",
    "read_structured",
    "tokenize",
]
