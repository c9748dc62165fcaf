"""Independent reference implementations used to cross-check the fast paths.

The parse oracle replaces the parser's backtracking control with explicit
enumeration: it expands every optional/repetition assignment of a rule into
a flat term list (in the parser's preference order) and linearly matches
each expansion.  The evaluation oracle re-derives answers per record by
walking the semantic tree directly instead of compiling a filter list.
"""

from __future__ import annotations

from viquery.catalog import Answer, BookRecord, Catalog, format_price
from viquery.grammar import Grammar, SyntacticRule, TermKind
from viquery.lexicon import Lexicon, TokenStream, normalize, scan_constituent, tokenize
from viquery.parser import ConstituentBinding, ParseResult
from viquery.semantics import SemanticNode


def _min_flat_len(terms: tuple) -> int:
    return sum(1 for t in terms if t.kind in (TermKind.LITERAL, TermKind.CATEGORY))


def _expansions(terms: tuple, budget: int, capacity: int):
    """All flat (literal|category) expansions, in the parser's preference
    order: optional present before absent, one more repetition before group
    exit.  ``budget`` bounds group iterations, ``capacity`` the flat length
    (every flat term consumes at least one stream position)."""
    if _min_flat_len(terms) > capacity:
        return
    if not terms:
        yield ()
        return
    head, rest = terms[0], terms[1:]
    if head.kind in (TermKind.LITERAL, TermKind.CATEGORY):
        for tail in _expansions(rest, budget, capacity - 1):
            yield (head,) + tail
    elif head.kind is TermKind.OPTIONAL:
        yield from _expansions(head.body + rest, budget, capacity)
        yield from _expansions(rest, budget, capacity)
    else:  # GROUP
        if budget > 0:
            yield from _expansions(head.body + (head,) + rest, budget - 1, capacity)
        yield from _expansions(rest, budget, capacity)


def _match_flat(flat: tuple, stream: TokenStream, lexicon: Lexicon):
    pos = 0
    matched = []
    for term in flat:
        if term.kind is TermKind.LITERAL:
            if pos >= len(stream) or stream.surface_at(pos) != term.literal:
                return None
            pos += 1
        else:
            found = scan_constituent(stream, pos, term.category, lexicon)
            if found is None:
                return None
            value, after = found
            matched.append((term.category, value, pos, after))
            pos = after
    if pos != len(stream):
        return None
    return matched


def oracle_match_rule(stream: TokenStream, rule: SyntacticRule,
                      lexicon: Lexicon) -> ParseResult | None:
    n = len(stream)
    for flat in _expansions(rule.terms, n + 1, n):
        matched = _match_flat(flat, stream, lexicon)
        if matched is None:
            continue
        counters: dict = {}
        bindings = []
        for category, value, start, end in matched:
            ordinal = counters.get(category, 0)
            counters[category] = ordinal + 1
            bindings.append(ConstituentBinding(
                category, value, stream.span_text(start, end), ordinal))
        return ParseResult(rule.id, rule.family, tuple(bindings))
    return None


def oracle_parse(query: str, grammar: Grammar, lexicon: Lexicon) -> list[ParseResult]:
    stream = tokenize(normalize(query), lexicon)
    results = []
    for rule in grammar.rules:
        result = oracle_match_rule(stream, rule, lexicon)
        if result is not None:
            results.append(result)
    return results


# --- evaluation oracle --------------------------------------------------------

def _record_satisfies(record: BookRecord, node: SemanticNode) -> bool:
    for arg, _rel in node.args:
        if arg.kind == "nested":
            if not _record_satisfies(record, arg.nested):
                return False
        elif arg.kind == "time":
            if arg.focus or arg.time.year is None:
                continue
            year, relation = arg.time.year, arg.time.relation
            if relation == "before" and not record.year < year:
                return False
            if relation == "in" and not record.year == year:
                return False
            if relation == "after" and not record.year > year:
                return False
        elif arg.kind == "entity" and not arg.focus and arg.value is not None:
            if arg.role == "author" and arg.value not in record.authors:
                return False
            if arg.role == "book" and arg.value != record.title:
                return False
            if arg.role == "publisher" and arg.value != record.publisher:
                return False
            if arg.role in ("subject", "field") and arg.value != record.subject:
                return False
            if arg.role == "location" and arg.value != record.place:
                return False
    return True


def _focused_role(node: SemanticNode):
    for arg, _rel in node.args:
        if arg.focus:
            if arg.kind == "amount":
                return "amount"
            if arg.kind == "time":
                return "year"
            return arg.role
        if arg.nested is not None:
            role = _focused_role(arg.nested)
            if role is not None:
                return role
    return None


def oracle_evaluate(sem: SemanticNode, catalog: Catalog) -> Answer:
    hits = [r for r in catalog.records if _record_satisfies(r, sem)]
    if sem.focused:
        return Answer("boolean", bool(hits))
    role = _focused_role(sem)
    if role == "amount":
        return Answer("count", len(hits))
    values: set[str] = set()
    for record in hits:
        if role == "author":
            values |= set(record.authors)
        elif role == "book":
            values.add(record.title)
        elif role == "publisher":
            values.add(record.publisher)
        elif role in ("subject", "field"):
            values.add(record.subject)
        elif role == "location":
            values.add(record.place)
        elif role == "year":
            values.add(str(record.year))
        elif role == "price":
            values.add(format_price(record))
    return Answer("entities", tuple(sorted(values)))
