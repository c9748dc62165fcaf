"""Desk-scale catalog: load book records and answer instantiated questions.

Evaluation is a linear scan: every bound argument of the semantic tree is a
conjunctive filter over record fields (nested nodes flatten onto the same
record), the focused element decides the answer shape.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .semantics import QuestionType, SemanticNode, classify


class CatalogError(ValueError):
    """Raised when a catalog document cannot be loaded."""


class EvaluationError(ValueError):
    """Raised when a semantic tree cannot be evaluated against records."""


@dataclass(frozen=True)
class BookRecord:
    title: str
    authors: tuple[str, ...]
    publisher: str
    year: int
    subject: str
    place: str
    price: float
    currency: str


@dataclass(frozen=True)
class Answer:
    kind: str                    # boolean | entities | count
    value: object                # bool | tuple[str, ...] | int


class Catalog:
    def __init__(self, records: list[BookRecord]):
        self.records = tuple(records)

    def __len__(self) -> int:
        return len(self.records)


_REQUIRED_KEYS = ("title", "authors", "publisher", "year", "subject",
                  "place", "price", "currency")


def load_catalog(document: str) -> Catalog:
    """Parse a JSON array of records; errors carry the record index."""
    try:
        data = json.loads(document)
    except json.JSONDecodeError as exc:
        raise CatalogError(f"invalid JSON: {exc}") from None
    if not isinstance(data, list):
        raise CatalogError("top level must be an array of records")
    records = []
    for index, item in enumerate(data):
        if not isinstance(item, dict):
            raise CatalogError(f"record {index}: not an object")
        for key in _REQUIRED_KEYS:
            if key not in item:
                raise CatalogError(f"record {index}: missing field {key!r}")
        title = item["title"]
        authors = item["authors"]
        year = item["year"]
        price = item["price"]
        if not isinstance(title, str) or not title:
            raise CatalogError(f"record {index}: title must be a non-empty string")
        if (not isinstance(authors, list) or not authors
                or not all(isinstance(a, str) and a for a in authors)):
            raise CatalogError(f"record {index}: authors must be a non-empty list")
        if not isinstance(year, int) or not 1000 <= year <= 9999:
            raise CatalogError(f"record {index}: year must be a 4-digit integer")
        if not isinstance(price, (int, float)) or isinstance(price, bool) or price < 0:
            raise CatalogError(f"record {index}: price must be a non-negative number")
        records.append(BookRecord(
            title=title,
            authors=tuple(authors),
            publisher=item["publisher"],
            year=year,
            subject=item["subject"],
            place=item["place"],
            price=float(price),
            currency=item["currency"],
        ))
    return Catalog(records)


def format_price(record: BookRecord) -> str:
    amount = record.price
    text = str(int(amount)) if amount == int(amount) else f"{amount:g}"
    return f"{text} {record.currency}".rstrip()


#: argument role -> record projection
_FIELDS = {
    "author": lambda r: set(r.authors),
    "book": lambda r: {r.title},
    "publisher": lambda r: {r.publisher},
    "subject": lambda r: {r.subject},
    "field": lambda r: {r.subject},
    "location": lambda r: {r.place},
    "year": lambda r: {str(r.year)},
    "price": lambda r: {format_price(r)},
}


def _collect(node: SemanticNode, filters: list, focus: list) -> None:
    for arg, _relation in node.args:
        if arg.kind == "nested":
            _collect(arg.nested, filters, focus)
        elif arg.kind == "time":
            if arg.focus:
                focus.append(("time", None))
            elif arg.time.year is not None:
                filters.append(("year", arg.time.relation, arg.time.year))
        elif arg.kind == "amount":
            if arg.focus:
                focus.append(("amount", None))
        else:  # entity
            if arg.focus:
                focus.append(("entity", arg.role))
            elif arg.value is not None and arg.role != "source":
                filters.append(("role", arg.role, arg.value))


def _satisfies(record: BookRecord, filters: list) -> bool:
    for kind, key, value in filters:
        if kind == "year":
            ok = {"before": record.year < value,
                  "in": record.year == value,
                  "after": record.year > value}[key]
            if not ok:
                return False
        else:
            projector = _FIELDS.get(key)
            if projector is None:
                raise EvaluationError(f"role {key!r} has no record field")
            if value not in projector(record):
                return False
    return True


def evaluate(sem: SemanticNode, catalog: Catalog) -> Answer:
    """Answer a question against the catalog.

    Yes/no questions report whether any record satisfies all filters;
    wh-questions collect the focused role's values over satisfying records;
    amount questions count satisfying records.
    """
    filters: list = []
    focus: list = []
    _collect(sem, filters, focus)
    matching = [r for r in catalog.records if _satisfies(r, filters)]
    if sem.focused:
        return Answer("boolean", bool(matching))
    if not focus:
        raise EvaluationError("no focused element to answer")
    focus_kind, focus_role = focus[0]
    if focus_kind == "amount":
        return Answer("count", len(matching))
    if focus_kind == "time":
        values = {str(r.year) for r in matching}
        return Answer("entities", tuple(sorted(values)))
    projector = _FIELDS.get(focus_role)
    if projector is None:
        raise EvaluationError(f"focused role {focus_role!r} has no record field")
    values: set[str] = set()
    for record in matching:
        values |= projector(record)
    return Answer("entities", tuple(sorted(values)))


def format_answer(answer: Answer, qtype: QuestionType) -> str:
    """Render an answer as a short Vietnamese reply line."""
    if answer.kind == "boolean":
        if qtype.kind != "yesno":
            raise EvaluationError("boolean answer for a wh-question")
        return "Có." if answer.value else "Không."
    if qtype.kind != "wh":
        raise EvaluationError(f"{answer.kind} answer for a yes/no question")
    if answer.kind == "count":
        return str(answer.value)
    return ", ".join(answer.value) if answer.value else "Không tìm thấy."


def answer_question(sem: SemanticNode, catalog: Catalog) -> str:
    """Convenience wrapper: evaluate and format in one step."""
    return format_answer(evaluate(sem, catalog), classify(sem))
