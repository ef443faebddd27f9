"""Lexer and recursive-descent parser for theory documents.

All syntax errors of a document are collected in one pass: after an error
the parser skips to the end of the enclosing top-level section and resumes.
Semantic checks (duplicate ids, domain shape, satisfiability) only run once
the document is syntactically clean.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..context import ContextCondition, ContextProfile, DefaultDomain, Dimension
from ..engine import PLACEHOLDER, DefaultRule, DefaultTheory
from ..logic import DEFAULT_MAX_ATOMS, Atom, ClauseSet, Literal, is_satisfiable
from ..records import RequirementRecord
from .document import Diagnostic, Document, DocumentError, SourceSpan

SECTION_KEYWORDS = ("background", "default", "profile", "ground")
PUNCTUATION = "{}(),;:/|!"
DIMENSIONS = {d.value: d for d in Dimension}


@dataclass(frozen=True)
class Token:
    kind: str  # IDENT, STRING, NA, ERROR, EOF, or the punctuation character itself
    value: str
    span: SourceSpan


def _is_ident_start(ch: str) -> bool:
    return ch.isascii() and (ch.isalpha() or ch == "_")


def _is_ident_char(ch: str) -> bool:
    return ch.isascii() and (ch.isalnum() or ch == "_")


def tokenize(text: str, diagnostics: list[Diagnostic]) -> list[Token]:
    tokens: list[Token] = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if ch in " \t\r\f﻿":
            i, col = i + 1, col + 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start_col = col
        if ch == "n" and text.startswith("n/a", i) and not (i + 3 < n and _is_ident_char(text[i + 3])):
            tokens.append(Token("NA", "n/a", SourceSpan(line, col, 3)))
            i, col = i + 3, col + 3
        elif _is_ident_start(ch):
            j = i + 1
            while j < n and _is_ident_char(text[j]):
                j += 1
            tokens.append(Token("IDENT", text[i:j], SourceSpan(line, col, j - i)))
            col += j - i
            i = j
        elif ch == '"':
            j = i + 1
            chars: list[str] = []
            closed = False
            while j < n and text[j] != "\n":
                c = text[j]
                if c == "\\" and j + 1 < n and text[j + 1] in '"\\':
                    chars.append(text[j + 1])
                    j += 2
                    continue
                if c == '"':
                    closed = True
                    j += 1
                    break
                chars.append(c)
                j += 1
            length = j - i
            if not closed:
                diagnostics.append(
                    Diagnostic("LexError", "unterminated string", SourceSpan(line, col, max(length, 1)))
                )
                tokens.append(Token("ERROR", text[i:j], SourceSpan(line, col, max(length, 1))))
            else:
                tokens.append(Token("STRING", "".join(chars), SourceSpan(line, col, length)))
            col += length
            i = j
        elif ch in PUNCTUATION:
            tokens.append(Token(ch, ch, SourceSpan(line, col, 1)))
            i, col = i + 1, col + 1
        else:
            diagnostics.append(Diagnostic("LexError", f"unexpected character {ch!r}", SourceSpan(line, start_col, 1)))
            tokens.append(Token("ERROR", ch, SourceSpan(line, start_col, 1)))
            i, col = i + 1, col + 1
    tokens.append(Token("EOF", "", SourceSpan(line, col, 1)))
    return tokens


class _Abort(Exception):
    pass


class Parser:
    def __init__(self, tokens: list[Token], diagnostics: list[Diagnostic]):
        self.tokens = tokens
        self.pos = 0
        self.depth = 0
        self.diagnostics = diagnostics

    # token helpers

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, offset: int = 1) -> Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def advance(self) -> Token:
        t = self.tok
        if t.kind != "EOF":
            self.pos += 1
            if t.kind == "{":
                self.depth += 1
            elif t.kind == "}":
                self.depth = max(self.depth - 1, 0)
        return t

    def at(self, kind: str, value: str | None = None) -> bool:
        return self.tok.kind == kind and (value is None or self.tok.value == value)

    def error(self, message: str, tok: Token | None = None) -> _Abort:
        tok = tok or self.tok
        if tok.kind == "ERROR":
            # Already reported by the lexer.
            return _Abort()
        found = "end of input" if tok.kind == "EOF" else repr(tok.value)
        self.diagnostics.append(Diagnostic("ParseError", f"{message}, found {found}", tok.span))
        return _Abort()

    def expect(self, kind: str, what: str | None = None) -> Token:
        if self.tok.kind != kind:
            raise self.error(f"expected {what or repr(kind)}")
        return self.advance()

    def expect_word(self, word: str) -> Token:
        if not self.at("IDENT", word):
            raise self.error(f"expected {word!r}")
        return self.advance()

    def recover(self) -> None:
        """Skip to the end of the current top-level section."""
        while self.tok.kind != "EOF":
            if self.depth == 0 and self.at("IDENT") and self.tok.value in SECTION_KEYWORDS:
                return
            t = self.advance()
            if self.depth == 0 and t.kind in "};":
                return

    # grammar

    def ident(self, what: str = "identifier") -> tuple[str, Token]:
        t = self.tok
        if t.kind not in ("IDENT", "STRING"):
            raise self.error(f"expected {what}")
        if not t.value:
            raise self.error("identifiers may not be empty")
        self.advance()
        return t.value, t

    def atom(self) -> Atom:
        pred, _ = self.ident("predicate name")
        args: list[str] = []
        if self.at("("):
            self.advance()
            args.append(self.ident("constant")[0])
            while self.at(","):
                self.advance()
                args.append(self.ident("constant")[0])
            self.expect(")", "')'")
        return Atom(pred, tuple(args))

    def literal(self) -> tuple[Literal, SourceSpan]:
        start = self.tok.span
        negated = False
        if self.at("!"):
            self.advance()
            negated = True
        return Literal(self.atom(), negated), start

    def rule_body(self, rule_id: str, nested_ok: bool = True) -> DefaultRule:
        prereqs: list = []
        if not self.at(":"):
            prereqs.append(self.prereq_item(nested_ok))
            while self.at(","):
                self.advance()
                prereqs.append(self.prereq_item(nested_ok))
        self.expect(":", "':'")
        self.expect_word("M")
        just, _ = self.literal()
        self.expect("/", "'/'")
        cons, _ = self.literal()
        return DefaultRule(rule_id, tuple(prereqs), just, cons)

    def prereq_item(self, nested_ok: bool):
        if self.at("("):
            paren = self.advance()
            if not nested_ok:
                raise self.error("nested default not allowed here", paren)
            inner = self.rule_body("")
            self.expect(")", "')'")
            return inner
        return self.literal()[0]

    def optional_string(self) -> str:
        if self.at("STRING"):
            return self.advance().value
        return ""


class _Builder:
    """Accumulates parsed sections and runs semantic checks."""

    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = diagnostics
        self.clauses: list[frozenset] = []
        self.background_span: SourceSpan | None = None
        self.rules: list[DefaultRule] = []
        self.records: list[RequirementRecord] = []
        self.profile: dict[str, list[frozenset]] = {}
        self.profile_spans: dict[str, SourceSpan] = {}
        self.spans: dict[tuple[str, str], SourceSpan] = {}

    def semantic(self, kind: str, message: str, span: SourceSpan) -> None:
        self.diagnostics.append(Diagnostic(kind, message, span))


def _parse_background(p: Parser, b: _Builder) -> None:
    kw = p.advance()
    if b.background_span is None:
        b.background_span = kw.span
    p.expect("{", "'{'")
    while not p.at("}"):
        if p.at("EOF"):
            raise p.error("expected '}'")
        clause = [p.literal()[0]]
        while p.at("|"):
            p.advance()
            clause.append(p.literal()[0])
        p.expect(";", "';'")
        b.clauses.append(frozenset(clause))
    p.advance()


def _parse_domain(p: Parser, b: _Builder) -> DefaultDomain | None:
    kw = p.advance()
    p.expect("{", "'{'")
    conditions: list[ContextCondition] = []
    members: list[str] | None = None
    na: set[Dimension] = set()
    problems: list[tuple[str, SourceSpan]] = []
    while not p.at("}"):
        name_tok = p.tok
        if p.at("IDENT", "members"):
            p.advance()
            p.expect(":", "':'")
            names = [p.ident("constant")[0]]
            while p.at(","):
                p.advance()
                names.append(p.ident("constant")[0])
            p.expect(";", "';'")
            if members is not None:
                problems.append(("members listed twice", name_tok.span))
            members = (members or []) + names
            continue
        if not (p.at("IDENT") and p.tok.value in DIMENSIONS):
            raise p.error("expected a dimension name (items, rules, localization, activity, relationship, granularity) or 'members'")
        dim = DIMENSIONS[p.advance().value]
        p.expect(":", "':'")
        if p.at("NA"):
            p.advance()
            na.add(dim)
        else:
            cond, span = p.literal()
            note = p.optional_string()
            if cond.atom.args.count(PLACEHOLDER) != 1:
                problems.append((f"condition {cond} must mention {PLACEHOLDER} exactly once", span))
            else:
                conditions.append(ContextCondition(dim, cond, note))
        p.expect(";", "';'")
    p.advance()
    for dim in na:
        if any(c.dimension is dim for c in conditions):
            problems.append((f"dimension {dim} has both a condition and n/a", kw.span))
    if members is not None and conditions:
        problems.append(("a domain lists either conditions or members, not both", kw.span))
    for message, span in problems:
        b.semantic("InvalidDomain", message, span)
    if problems:
        return None
    if members is not None:
        return DefaultDomain(members=tuple(members), not_applicable=frozenset(na))
    return DefaultDomain(conditions=tuple(conditions), not_applicable=frozenset(na))


def _parse_default(p: Parser, b: _Builder) -> None:
    p.advance()
    rule_id, id_tok = p.ident("default id")
    description = p.optional_string()
    p.expect("{", "'{'")
    rule = p.rule_body(rule_id)
    domain = None
    if p.at("IDENT", "domain"):
        domain = _parse_domain(p, b)
    p.expect("}", "'}'")
    if ("default", rule_id) in b.spans:
        first = b.spans[("default", rule_id)]
        b.semantic("DuplicateRuleId", f"default {rule_id!r} already declared at {first}", id_tok.span)
        return
    b.spans[("default", rule_id)] = id_tok.span
    if domain is not None:
        rule = DefaultRule(rule.id, rule.prerequisites, rule.justification, rule.consequent, domain)
    b.rules.append(rule)
    b.records.append(RequirementRecord.default(rule, description))


def _parse_profile(p: Parser, b: _Builder) -> None:
    kw = p.advance()
    obj, _ = p.ident("object name")
    p.expect("{", "'{'")
    facts = b.profile.setdefault(obj, [])
    b.profile_spans.setdefault(obj, kw.span)
    while not p.at("}"):
        if p.at("EOF"):
            raise p.error("expected '}'")
        clause = [p.literal()[0]]
        while p.at("|"):
            p.advance()
            clause.append(p.literal()[0])
        p.expect(";", "';'")
        facts.append(frozenset(clause))
    p.advance()


def _parse_ground(p: Parser, b: _Builder) -> None:
    kw = p.advance()
    assertion, _ = p.literal()
    description = p.optional_string()
    p.expect(";", "';'")
    b.records.append(RequirementRecord.ground(assertion, description))
    b.spans.setdefault(("ground", assertion.render()), kw.span)


_SECTIONS = {
    "background": _parse_background,
    "default": _parse_default,
    "profile": _parse_profile,
    "ground": _parse_ground,
}


def parse_document(text: str, *, source: str = "<input>", max_atoms: int = DEFAULT_MAX_ATOMS) -> Document:
    """Parse a theory document; raises DocumentError with every diagnostic found."""
    diagnostics: list[Diagnostic] = []
    tokens = tokenize(text, diagnostics)
    p = Parser(tokens, diagnostics)
    b = _Builder(diagnostics)
    while not p.at("EOF"):
        handler = _SECTIONS.get(p.tok.value) if p.at("IDENT") else None
        if handler is None:
            p.error("expected 'background', 'default', 'profile' or 'ground'")
            p.advance()
            p.recover()
            continue
        try:
            handler(p, b)
        except _Abort:
            p.recover()
    if diagnostics:
        raise DocumentError(sorted(diagnostics, key=lambda d: d.span), source)

    background = ClauseSet(frozenset(b.clauses))
    if b.background_span is not None and not is_satisfiable(background, max_atoms=max_atoms):
        b.semantic("UnsatisfiableBackground", "background knowledge has no model", b.background_span)
    facts = {}
    for obj, clauses in b.profile.items():
        kb = ClauseSet(frozenset(clauses))
        if not is_satisfiable(kb, max_atoms=max_atoms):
            b.semantic("UnsatisfiableProfile", f"context facts for {obj!r} are contradictory", b.profile_spans[obj])
        facts[obj] = kb
    if diagnostics:
        raise DocumentError(sorted(diagnostics, key=lambda d: d.span), source)

    spans = dict(b.spans)
    if b.background_span is not None:
        spans[("background", "")] = b.background_span
    return Document(
        theory=DefaultTheory(background, tuple(b.rules)),
        profile=ContextProfile(facts),
        records=b.records,
        spans=spans,
    )


def _parse_fragment(text: str, fn):
    diagnostics: list[Diagnostic] = []
    p = Parser(tokenize(text, diagnostics), diagnostics)
    result = None
    if not diagnostics:
        try:
            result = fn(p)
            if not p.at("EOF"):
                p.error("unexpected trailing input")
        except _Abort:
            pass
    if diagnostics:
        raise DocumentError(diagnostics)
    return result


def parse_literal(text: str) -> Literal:
    """Parse a single literal such as ``!isOnTime("Trains&Co")``."""
    return _parse_fragment(text, lambda p: p.literal()[0])


def parse_rule(text: str, rule_id: str = "") -> DefaultRule:
    """Parse the linear rule form ``pre1, pre2 : M just / cons``."""
    return _parse_fragment(text, lambda p: p.rule_body(rule_id))
