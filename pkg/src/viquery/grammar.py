"""Syntactic rules as data: a small BNF-style DSL, validation and sampling.

Rules are flat patterns over category slots — no nonterminal cascades.  A
rule body is a sequence of ``<category>`` slots, ``[ ... ]`` optionals,
``{ ... }`` zero-or-more groups and double-quoted terminals.  File order is
priority order for the parser.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from enum import Enum

from .lexicon import (
    Category,
    GRAMMAR_CATEGORIES,
    TEMPLATE_CATEGORIES,
    Lexicon,
)


class GrammarError(ValueError):
    """Raised when a grammar document cannot be loaded or sampled."""


class TermKind(Enum):
    LITERAL = "literal"
    CATEGORY = "category"
    OPTIONAL = "optional"
    GROUP = "group"


@dataclass(frozen=True)
class RuleTerm:
    kind: TermKind
    literal: str | None = None
    category: Category | None = None
    body: tuple["RuleTerm", ...] = field(default=())


@dataclass(frozen=True)
class SyntacticRule:
    id: str
    family: str
    terms: tuple[RuleTerm, ...]


class Grammar:
    """Ordered, immutable rule inventory."""

    def __init__(self, rules: list[SyntacticRule]):
        self.rules = tuple(rules)
        self.by_id = {r.id: r for r in self.rules}

    def __len__(self) -> int:
        return len(self.rules)

    @property
    def families(self) -> list[str]:
        seen: dict[str, None] = {}
        for rule in self.rules:
            seen.setdefault(rule.family, None)
        return list(seen)


_FAMILY_RE = re.compile(r"^(.+\d)([a-z])$")
_LHS_RE = re.compile(r"^<([^<>\s]+)>\s*(=)\s*(.*)$")
_BODY_TOKEN_RE = re.compile(r'<([^<>\s]+)>|"([^"]*)"|([\[\]{}])|(\S+)')


def family_of(rule_id: str) -> str:
    """Family = rule id with a trailing variant letter removed."""
    m = _FAMILY_RE.match(rule_id)
    return m.group(1) if m else rule_id


def _parse_body(tokens: list[tuple[str, str]], lineno: int) -> tuple[RuleTerm, ...]:
    terms: list[RuleTerm] = []
    stack: list[tuple[str, list[RuleTerm]]] = []
    current = terms
    for kind, value in tokens:
        if kind == "category":
            try:
                category = Category(value)
            except ValueError:
                raise GrammarError(f"line {lineno}: unknown category <{value}>") from None
            if category not in GRAMMAR_CATEGORIES:
                raise GrammarError(f"line {lineno}: unknown category <{value}>")
            current.append(RuleTerm(TermKind.CATEGORY, category=category))
        elif kind == "literal":
            current.append(RuleTerm(TermKind.LITERAL, literal=value))
        elif kind == "open":
            stack.append((value, current))
            current = []
        elif kind == "close":
            if not stack:
                raise GrammarError(f"line {lineno}: unbalanced {value!r}")
            opener, parent = stack.pop()
            if (opener, value) not in (("[", "]"), ("{", "}")):
                raise GrammarError(f"line {lineno}: unbalanced {value!r}")
            if not current:
                raise GrammarError(f"line {lineno}: empty {opener}{value}")
            term_kind = TermKind.OPTIONAL if opener == "[" else TermKind.GROUP
            body = tuple(current)
            current = parent
            current.append(RuleTerm(term_kind, body=body))
        else:
            raise GrammarError(f"line {lineno}: unexpected {value!r}")
    if stack:
        raise GrammarError(f"line {lineno}: unbalanced {stack[-1][0]!r}")
    return tuple(terms)


def parse_rule_dsl(document: str) -> Grammar:
    """Load a grammar document; one rule per line, ``#`` comments."""
    rules: list[SyntacticRule] = []
    seen: set[str] = set()
    for lineno, raw in enumerate(document.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        m = _LHS_RE.match(line)
        if not m:
            raise GrammarError(f"line {lineno}: expected '<ID> = BODY'")
        rule_id, _, body_text = m.groups()
        if rule_id in seen:
            raise GrammarError(f"line {lineno}: duplicate rule id {rule_id}")
        seen.add(rule_id)
        tokens: list[tuple[str, str]] = []
        for tm in _BODY_TOKEN_RE.finditer(body_text):
            cat, lit, bracket, other = tm.groups()
            if cat is not None:
                tokens.append(("category", cat))
            elif lit is not None:
                tokens.append(("literal", lit))
            elif bracket in "[{":
                tokens.append(("open", bracket))
            elif bracket in "]}":
                tokens.append(("close", bracket))
            else:
                raise GrammarError(f"line {lineno}: unexpected {other!r}")
        terms = _parse_body(tokens, lineno)
        if not terms:
            raise GrammarError(f"line {lineno}: empty rule body")
        rules.append(SyntacticRule(rule_id, family_of(rule_id), terms))
    return Grammar(rules)


def _render_term(term: RuleTerm) -> str:
    if term.kind is TermKind.CATEGORY:
        return f"<{term.category.value}>"
    if term.kind is TermKind.LITERAL:
        return f'"{term.literal}"'
    inner = " ".join(_render_term(t) for t in term.body)
    return f"[{inner}]" if term.kind is TermKind.OPTIONAL else f"{{{inner}}}"


def render_dsl(grammar: Grammar) -> str:
    """Render a grammar back to DSL text (reload gives an identical grammar)."""
    lines = [
        f"<{rule.id}> = " + " ".join(_render_term(t) for t in rule.terms)
        for rule in grammar.rules
    ]
    return "\n".join(lines) + "\n"


def _categories_of(terms: tuple[RuleTerm, ...]):
    for term in terms:
        if term.kind is TermKind.CATEGORY:
            yield term.category
        elif term.body:
            yield from _categories_of(term.body)


def validate(grammar: Grammar, lexicon: Lexicon) -> list[str]:
    """Diagnostics: unrealizable categories and rules not ending in '?'."""
    diagnostics: list[str] = []
    for rule in grammar.rules:
        for category in _categories_of(rule.terms):
            if category in TEMPLATE_CATEGORIES or lexicon.has_entries(category):
                continue
            diagnostics.append(
                f"{rule.id}: category <{category.value}> has no lexicon entries"
            )
        last = rule.terms[-1]
        if not (last.kind is TermKind.LITERAL and last.literal == "?"):
            diagnostics.append(f'{rule.id}: rule does not end with "?"')
    return diagnostics


# --- sentence sampling -------------------------------------------------------

def _pick_name(rng: random.Random, lexicon: Lexicon, kind: Category) -> str:
    surfaces = lexicon.surfaces(kind)
    if not surfaces:
        raise GrammarError(f"no gazetteer entries for {kind.value}")
    return rng.choice(surfaces)


def _pick_surface(rng: random.Random, lexicon: Lexicon, category: Category) -> str:
    surfaces = lexicon.surfaces(category)
    if not surfaces:
        raise GrammarError(f"category <{category.value}> has no realizable surface")
    return rng.choice(surfaces)


def _realize(rng: random.Random, lexicon: Lexicon, category: Category) -> str:
    if category is Category.AUTHOR:
        return (_pick_surface(rng, lexicon, Category.CREATOR) + " "
                + _pick_name(rng, lexicon, Category.NAME_AUTHOR))
    if category is Category.PUBLISHER:
        return (_pick_surface(rng, lexicon, Category.PUBLISHER) + " "
                + _pick_name(rng, lexicon, Category.NAME_PUBLISHER))
    if category is Category.BOOK:
        return (_pick_surface(rng, lexicon, Category.BOOK_TYPE) + " "
                + _pick_name(rng, lexicon, Category.NAME_BOOK))
    if category is Category.SUBJECT:
        return (_pick_surface(rng, lexicon, Category.SUBJECT) + " "
                + _pick_name(rng, lexicon, Category.NAME_SUBJECT))
    if category is Category.TIME_PHRASE:
        prep = _pick_surface(rng, lexicon, Category.PREP_TIME)
        noun = _pick_surface(rng, lexicon, Category.NOUN_TIME)
        return f"{prep} {noun} {rng.randint(1900, 2025)}"
    if category is Category.OF_AUTHOR:
        return (_pick_surface(rng, lexicon, Category.POSSESSIVE) + " "
                + _realize(rng, lexicon, Category.AUTHOR))
    if category is Category.BY_AUTHOR:
        marker = rng.choice(
            lexicon.surfaces(Category.POSSESSIVE) + lexicon.surfaces(Category.AGENT)
        )
        return marker + " " + _realize(rng, lexicon, Category.AUTHOR)
    if category is Category.BY_PUBLISHER:
        marker = rng.choice(
            lexicon.surfaces(Category.POSSESSIVE) + lexicon.surfaces(Category.AGENT)
        )
        return marker + " " + _realize(rng, lexicon, Category.PUBLISHER)
    return _pick_surface(rng, lexicon, category)


def _contains_time(term: RuleTerm) -> bool:
    if term.kind is TermKind.CATEGORY:
        return term.category is Category.TIME_PHRASE
    return any(_contains_time(t) for t in term.body)


def sample(grammar: Grammar, rule_id: str, seed: int, lexicon: Lexicon) -> str:
    """Generate one sentence from a rule; deterministic for a fixed seed.

    Optionals are included with probability 1/2 and groups repeated 0-2
    times, except that at most one optional time phrase is enabled per
    sentence (rules offering both a fronted and a trailing slot would
    otherwise produce doubly-constrained questions).
    """
    rule = grammar.by_id.get(rule_id)
    if rule is None:
        raise GrammarError(f"unknown rule id {rule_id!r}")
    rng = random.Random(seed)

    time_slots = [t for t in rule.terms
                  if t.kind is TermKind.OPTIONAL and _contains_time(t)]
    allowed_time = rng.choice(time_slots) if len(time_slots) > 1 else None

    def expand(terms: tuple[RuleTerm, ...], out: list[str]) -> None:
        for term in terms:
            if term.kind is TermKind.LITERAL:
                out.append(term.literal)
            elif term.kind is TermKind.CATEGORY:
                out.append(_realize(rng, lexicon, term.category))
            elif term.kind is TermKind.OPTIONAL:
                include = rng.random() < 0.5
                if len(time_slots) > 1 and _contains_time(term) and term is not allowed_time:
                    include = False
                if include and not out and all(
                        t.kind is TermKind.LITERAL for t in term.body):
                    include = False  # no separator before any content
                if include:
                    expand(term.body, out)
            else:  # GROUP
                for _ in range(rng.randint(0, 2)):
                    expand(term.body, out)

    words: list[str] = []
    expand(rule.terms, words)
    return " ".join(words)
