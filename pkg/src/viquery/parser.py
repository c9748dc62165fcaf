"""Backtracking matcher: tokens against flat rule patterns, full span only.

Matching is left-to-right with chronological backtracking over optionals
(present first) and groups (more repetitions first); category slots consume
constituents greedily via :func:`viquery.lexicon.scan_constituent`.  The
first complete assignment in this search order wins, so results are
deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

from .grammar import Grammar, RuleTerm, SyntacticRule, TermKind
from .lexicon import (
    Category,
    Lexicon,
    TokenStream,
    normalize,
    scan_constituent,
    tokenize,
)


class BlankQueryError(ValueError):
    """Raised for empty or whitespace-only input (distinct from no-parse)."""


@dataclass(frozen=True)
class ConstituentBinding:
    category: Category
    value: object            # str, TimeValue, BookValue, or None (asked slot)
    surface: str
    ordinal: int              # occurrence index per category, from 0


@dataclass(frozen=True)
class ParseResult:
    rule_id: str
    family: str
    bindings: tuple[ConstituentBinding, ...]


@dataclass(frozen=True)
class _Progress:
    """Guard pseudo-term: group iterations must consume at least one group."""

    at: int


def match_rule(stream: TokenStream, rule: SyntacticRule,
               lexicon: Lexicon) -> ParseResult | None:
    """Match the whole token stream against one rule, or return None."""
    n = len(stream)

    def match_seq(terms: tuple, pos: int):
        if not terms:
            return [] if pos == n else None
        head, rest = terms[0], terms[1:]
        if isinstance(head, _Progress):
            return match_seq(rest, pos) if pos > head.at else None
        if head.kind is TermKind.LITERAL:
            if pos < n and stream.surface_at(pos) == head.literal:
                return match_seq(rest, pos + 1)
            return None
        if head.kind is TermKind.CATEGORY:
            found = scan_constituent(stream, pos, head.category, lexicon)
            if found is None:
                return None
            value, after = found
            tail = match_seq(rest, after)
            if tail is None:
                return None
            return [(head.category, value, pos, after)] + tail
        if head.kind is TermKind.OPTIONAL:
            present = match_seq(head.body + rest, pos)
            if present is not None:
                return present
            return match_seq(rest, pos)
        # GROUP: one more iteration first, then exit
        again = match_seq(head.body + (_Progress(pos), head) + rest, pos)
        if again is not None:
            return again
        return match_seq(rest, pos)

    matched = match_seq(rule.terms, 0)
    if matched is None:
        return None
    counters: dict[Category, int] = {}
    bindings = []
    for category, value, start, end in matched:
        ordinal = counters.get(category, 0)
        counters[category] = ordinal + 1
        bindings.append(
            ConstituentBinding(category, value, stream.span_text(start, end), ordinal)
        )
    return ParseResult(rule.id, rule.family, tuple(bindings))


def parse(query: str, grammar: Grammar, lexicon: Lexicon) -> list[ParseResult]:
    """Normalize, tokenize and match every rule in priority order.

    Returns all successful parses (callers usually take the first); an empty
    list means no rule covers the query.  Blank input raises
    :class:`BlankQueryError`.
    """
    normalized = normalize(query)
    if not normalized:
        raise BlankQueryError("query is empty or blank")
    stream = tokenize(normalized, lexicon)
    results = []
    for rule in grammar.rules:
        result = match_rule(stream, rule, lexicon)
        if result is not None:
            results.append(result)
    return results


def constituents(parse_result: ParseResult) -> list[tuple[Category, str, object]]:
    """Bindings projected for display, in surface order."""
    return [(b.category, b.surface, b.value) for b in parse_result.bindings]
