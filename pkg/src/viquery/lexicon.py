"""Vocabulary, normalization and tokenization for restricted Vietnamese queries.

The lexicon is closed-world: a set of closed-class entries (question words,
verbs, heads, particles) plus open-class gazetteers of proper names (authors,
titles, publishers, subjects, fields, places).  Tokenization is deterministic
longest-match over syllables; spans matching no entry become proper-name
candidates so that questions about unlisted titles still parse.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass
from enum import Enum


class Category(str, Enum):
    """Token and rule-slot categories.

    The first block is the category inventory the grammar may reference;
    the second block holds lexical-only kinds (proper-name gazetteers,
    year literals, punctuation and minor head/marker words) that appear on
    tokens but never in syntactic rules.
    """

    # grammar categories
    WHAT_AUTHOR = "what_author"
    WHAT_PUBLISHER = "what_publisher"
    WHAT_TIME = "what_time"
    WHAT_SUBJECT = "what_subject"
    WHAT_PLACE = "what_place"
    WHAT_PRICE = "what_price"
    AUTHOR = "author"
    PUBLISHER = "publisher"
    BOOK = "book"
    SUBJECT = "subject"
    FIELD = "field"
    BOOK_TYPE = "book_type"
    CREATOR = "creator"
    PRICE = "price"
    TIME_PHRASE = "time_phrase"
    PREP_TIME = "prep_time"
    VPERFECT = "vperfect"
    VPASSIVE = "vpassive"
    VERB_WRITE = "verb_write"
    VERB_PUBLISH = "verb_publish"
    VERB_BE = "verb_be"
    VERB_HAVE = "verb_have"
    VERB_LOCATE = "verb_locate"
    VERB_BUY = "verb_buy"
    VERB_COST = "verb_cost"
    IS_OF = "is_of"
    POSSESSIVE = "possessive"
    OF_AUTHOR = "of_author"
    BY_AUTHOR = "by_author"
    BY_PUBLISHER = "by_publisher"
    CONJUNCTION = "conjunction"
    PLURAL = "plural"
    HOW_MANY = "how_many"
    IN_ELIB = "in_elib"
    INTERROGATIVE1 = "interrogative1"
    INTERROGATIVE2 = "interrogative2"
    INTERROGATIVE3 = "interrogative3"
    INTERROGATIVE4 = "interrogative4"
    # lexical-only kinds
    NOUN_TIME = "noun_time"
    AGENT = "agent"
    NAME_AUTHOR = "name_author"
    NAME_BOOK = "name_book"
    NAME_PUBLISHER = "name_publisher"
    NAME_SUBJECT = "name_subject"
    NAME_FIELD = "name_field"
    NAME_PLACE = "name_place"
    YEAR = "year"
    PUNCT = "punct"


#: Categories a syntactic rule may reference.
GRAMMAR_CATEGORIES = frozenset(
    c for c in Category
    if c not in {
        Category.NOUN_TIME, Category.AGENT, Category.YEAR, Category.PUNCT,
        Category.NAME_AUTHOR, Category.NAME_BOOK, Category.NAME_PUBLISHER,
        Category.NAME_SUBJECT, Category.NAME_FIELD, Category.NAME_PLACE,
    }
)

#: Proper-name gazetteer kinds, in the order candidate tokens are emitted.
NAME_KINDS = (
    Category.NAME_AUTHOR,
    Category.NAME_BOOK,
    Category.NAME_PUBLISHER,
    Category.NAME_SUBJECT,
    Category.NAME_FIELD,
    Category.NAME_PLACE,
)

#: Categories matched by a phrase template instead of a single lexicon entry.
TEMPLATE_CATEGORIES = frozenset({
    Category.AUTHOR, Category.PUBLISHER, Category.BOOK, Category.SUBJECT,
    Category.TIME_PHRASE, Category.OF_AUTHOR, Category.BY_AUTHOR,
    Category.BY_PUBLISHER,
})

_YEAR_RE = re.compile(r"^[1-9]\d{3}$")
_PUNCT_RE = re.compile(r"\s*([?,])\s*")
_WS_RE = re.compile(r"\s+")


class LexiconError(ValueError):
    """Raised when a lexicon document cannot be loaded."""


@dataclass(frozen=True)
class LexiconEntry:
    category: Category
    surface: str          # normalized, space-separated syllables
    canonical: str        # lemma or entity id (entity ids keep display casing)

    @property
    def syllables(self) -> tuple[str, ...]:
        return tuple(self.surface.split(" "))


@dataclass(frozen=True)
class Token:
    """A matched span. ``start``/``end`` are syllable offsets, end exclusive."""

    surface: str
    normalized: str
    category: Category
    canonical: str
    start: int
    end: int


@dataclass(frozen=True)
class TimeValue:
    """Raw time constituent: preposition lemma plus a year (None = asked)."""

    prep: str | None
    year: int | None


@dataclass(frozen=True)
class BookValue:
    """Book constituent value: bound title, or unbound (any book), optionally
    qualified by a subject ("sách nào thuộc chủ đề T")."""

    title: str | None = None
    subject: str | None = None


@dataclass(frozen=True)
class TokenGroup:
    """All tokens sharing one span; several tokens mean a category tie that
    the parser resolves by rule demand."""

    start: int
    end: int
    surface: str
    tokens: tuple[Token, ...]


class TokenStream:
    """Tokenization result: one group per span position, left to right."""

    def __init__(self, groups: tuple[TokenGroup, ...], text: str):
        self.groups = groups
        self.text = text

    def __len__(self) -> int:
        return len(self.groups)

    def __iter__(self):
        for group in self.groups:
            yield from group.tokens

    @property
    def tokens(self) -> list[Token]:
        return list(self)

    def token_at(self, pos: int, category: Category) -> Token | None:
        if pos >= len(self.groups):
            return None
        for token in self.groups[pos].tokens:
            if token.category is category:
                return token
        return None

    def surface_at(self, pos: int) -> str | None:
        if pos >= len(self.groups):
            return None
        return self.groups[pos].surface

    def span_text(self, start: int, end: int) -> str:
        return " ".join(g.surface for g in self.groups[start:end])


class Lexicon:
    """Immutable lookup structure over entries and gazetteers."""

    def __init__(self, entries: list[LexiconEntry]):
        self._entries: dict[tuple[Category, str], LexiconEntry] = {}
        self._by_first: dict[str, list[LexiconEntry]] = {}
        self._by_category: dict[Category, list[LexiconEntry]] = {}
        for entry in entries:
            key = (entry.category, entry.surface)
            if key in self._entries:
                raise LexiconError(
                    f"duplicate entry ({entry.category.value}, {entry.surface!r})"
                )
            self._entries[key] = entry
            self._by_first.setdefault(entry.syllables[0], []).append(entry)
            self._by_category.setdefault(entry.category, []).append(entry)
        for bucket in self._by_first.values():
            bucket.sort(key=lambda e: (-len(e.syllables), e.category.value))

    def __len__(self) -> int:
        return len(self._entries)

    def lookup(self, category: Category, surface: str) -> LexiconEntry | None:
        return self._entries.get((category, surface))

    def entries(self, category: Category) -> list[LexiconEntry]:
        return list(self._by_category.get(category, ()))

    def surfaces(self, category: Category) -> list[str]:
        return sorted(e.surface for e in self._by_category.get(category, ()))

    def has_entries(self, category: Category) -> bool:
        return bool(self._by_category.get(category))

    def gazetteer(self, kind: Category) -> dict[str, str]:
        """surface -> canonical id for one proper-name kind."""
        return {e.surface: e.canonical for e in self._by_category.get(kind, ())}

    def match_at(self, syllables: list[str], at: int) -> list[LexiconEntry]:
        """Longest-match entries starting at ``at``; ties across categories
        are all returned (identical length)."""
        best: list[LexiconEntry] = []
        best_len = 0
        for entry in self._by_first.get(syllables[at], ()):
            n = len(entry.syllables)
            if n < best_len:
                break  # buckets are length-sorted
            if tuple(syllables[at:at + n]) == entry.syllables:
                if n > best_len:
                    best, best_len = [entry], n
                else:
                    best.append(entry)
        return best


def normalize(text: str) -> str:
    """Canonical query form: NFC, lowercased, '?' and ',' split off,
    whitespace collapsed.  Idempotent and total."""
    text = unicodedata.normalize("NFC", text).lower()
    text = _PUNCT_RE.sub(r" \1 ", text)
    return _WS_RE.sub(" ", text).strip()


def load_lexicon(document: str) -> Lexicon:
    """Parse a lexicon document (see data/lexicon_v1.tsv for the format)."""
    entries: list[LexiconEntry] = []
    seen: set[tuple[Category, str]] = set()
    for lineno, raw in enumerate(document.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 3:
            raise LexiconError(
                f"line {lineno}: expected 3 tab-separated fields, got {len(fields)}"
            )
        cat_name, surface, canonical = (f.strip() for f in fields)
        try:
            category = Category(cat_name)
        except ValueError:
            raise LexiconError(f"line {lineno}: unknown category {cat_name!r}") from None
        surface = normalize(surface)
        if not surface:
            raise LexiconError(f"line {lineno}: empty surface")
        canonical = unicodedata.normalize("NFC", canonical)
        key = (category, surface)
        if key in seen:
            raise LexiconError(
                f"line {lineno}: duplicate entry ({cat_name}, {surface!r})"
            )
        seen.add(key)
        entries.append(LexiconEntry(category, surface, canonical))
    return Lexicon(entries)


def tokenize(query: str, lexicon: Lexicon) -> TokenStream:
    """Deterministic longest-match segmentation of a normalized query.

    At each syllable the longest lexicon surface wins; equal-length matches
    in several categories yield one token each on the same span.  Unmatched
    syllables are grouped into maximal runs and emitted as proper-name
    candidates for every gazetteer kind (plus a year literal when the run
    is a single 4-digit number).
    """
    syllables = query.split(" ") if query else []
    groups: list[TokenGroup] = []
    i = 0
    n = len(syllables)
    while i < n:
        syl = syllables[i]
        if syl in ("?", ","):
            token = Token(syl, syl, Category.PUNCT, syl, i, i + 1)
            groups.append(TokenGroup(i, i + 1, syl, (token,)))
            i += 1
            continue
        matches = lexicon.match_at(syllables, i)
        if matches:
            length = len(matches[0].syllables)
            span = " ".join(syllables[i:i + length])
            tokens = tuple(
                Token(span, span, e.category, e.canonical, i, i + length)
                for e in matches
            )
            groups.append(TokenGroup(i, i + length, span, tokens))
            i += length
            continue
        # maximal unknown run -> proper-name candidates
        j = i
        while j < n and syllables[j] not in ("?", ",") and not lexicon.match_at(syllables, j):
            j += 1
        run = " ".join(syllables[i:j])
        tokens = [Token(run, run, kind, run, i, j) for kind in NAME_KINDS]
        if j - i == 1 and _YEAR_RE.match(run):
            tokens.append(Token(run, run, Category.YEAR, run, i, j))
        groups.append(TokenGroup(i, j, run, tuple(tokens)))
        i = j
    return TokenStream(tuple(groups), query)


# --- constituent templates ---------------------------------------------------
#
# Positions passed to the scanners are group indices into the TokenStream.

def _scan_name(stream: TokenStream, at: int, kind: Category):
    token = stream.token_at(at, kind)
    if token is None:
        return None
    return token.canonical, at + 1


def _scan_author(stream: TokenStream, at: int, lexicon: Lexicon):
    if stream.token_at(at, Category.CREATOR) is None:
        return None
    return _scan_name(stream, at + 1, Category.NAME_AUTHOR)


def _scan_publisher(stream: TokenStream, at: int, lexicon: Lexicon):
    if stream.token_at(at, Category.PUBLISHER) is None:
        return None
    return _scan_name(stream, at + 1, Category.NAME_PUBLISHER)


def _scan_subject(stream: TokenStream, at: int, lexicon: Lexicon):
    # head + name, else a bare name (the head may have been absorbed by a
    # multi-syllable is_of surface such as "thuộc chủ đề")
    if stream.token_at(at, Category.SUBJECT) is not None:
        found = _scan_name(stream, at + 1, Category.NAME_SUBJECT)
        if found:
            return found
    return _scan_name(stream, at, Category.NAME_SUBJECT)


def _scan_book(stream: TokenStream, at: int, lexicon: Lexicon):
    if stream.token_at(at, Category.BOOK_TYPE) is None:
        return None
    name = stream.token_at(at + 1, Category.NAME_BOOK)
    if name is not None:
        return BookValue(title=name.canonical), at + 2
    # "nào" after the head marks an unbound book ("any/which book"), which
    # may carry a subject qualifier: "sách nào thuộc chủ đề T"
    nao = stream.token_at(at + 1, Category.INTERROGATIVE4)
    if nao is not None and nao.normalized == "nào":
        j = at + 2
        if stream.token_at(j, Category.IS_OF) is not None:
            qualified = _scan_subject(stream, j + 1, lexicon)
            if qualified:
                subject, after = qualified
                return BookValue(subject=subject), after
        return BookValue(), j
    return BookValue(), at + 1


def _scan_time_phrase(stream: TokenStream, at: int, lexicon: Lexicon):
    prep = stream.token_at(at, Category.PREP_TIME)
    if prep is None:
        return None
    if stream.token_at(at + 1, Category.NOUN_TIME) is None:
        return None
    year = stream.token_at(at + 2, Category.YEAR)
    if year is None:
        return None
    return TimeValue(prep.canonical, int(year.canonical)), at + 3


def _scan_marked(stream: TokenStream, at: int, inner, markers: tuple[Category, ...]):
    if not any(stream.token_at(at, m) is not None for m in markers):
        return None
    return inner(stream, at + 1, None)


def _scan_of_author(stream: TokenStream, at: int, lexicon: Lexicon):
    return _scan_marked(stream, at, _scan_author, (Category.POSSESSIVE,))


def _scan_by_author(stream: TokenStream, at: int, lexicon: Lexicon):
    return _scan_marked(stream, at, _scan_author, (Category.POSSESSIVE, Category.AGENT))


def _scan_by_publisher(stream: TokenStream, at: int, lexicon: Lexicon):
    return _scan_marked(stream, at, _scan_publisher, (Category.POSSESSIVE, Category.AGENT))


_SCANNERS = {
    Category.AUTHOR: _scan_author,
    Category.PUBLISHER: _scan_publisher,
    Category.BOOK: _scan_book,
    Category.SUBJECT: _scan_subject,
    Category.TIME_PHRASE: _scan_time_phrase,
    Category.OF_AUTHOR: _scan_of_author,
    Category.BY_AUTHOR: _scan_by_author,
    Category.BY_PUBLISHER: _scan_by_publisher,
}


def scan_constituent(stream: TokenStream, at: int, category: Category,
                     lexicon: Lexicon):
    """Match one constituent of ``category`` starting at group index ``at``.

    Returns (canonical value, first unconsumed position) or None.  Matching
    is greedy within the category's phrase template; categories without a
    template consume a single token of that category.
    """
    if at >= len(stream):
        return None
    scanner = _SCANNERS.get(category)
    if scanner is not None:
        return scanner(stream, at, lexicon)
    token = stream.token_at(at, category)
    if token is None:
        return None
    return token.canonical, at + 1
