"""Command-line surface: parse, semantics, ask, generate, batch.

Exit codes: 0 success (>=1 parse where parsing is involved), 2 no parse,
1 usage or load errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .catalog import Catalog, CatalogError, EvaluationError, format_answer, evaluate, load_catalog
from .grammar import Grammar, GrammarError, parse_rule_dsl, sample
from .lexicon import BookValue, Lexicon, LexiconError, TimeValue, load_lexicon
from .parser import BlankQueryError, ParseResult, parse
from .semantics import classify, render_full, render_skeleton, transform

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NO_PARSE = 2


def data_path(name: str) -> Path:
    return Path(resources.files("viquery").joinpath("data", name))


@dataclass
class RunConfig:
    grammar_path: Path
    lexicon_path: Path
    catalog_path: Path
    json_output: bool = False
    seed: int = 0

    def load_grammar(self) -> Grammar:
        return parse_rule_dsl(self.grammar_path.read_text(encoding="utf-8"))

    def load_lexicon(self) -> Lexicon:
        return load_lexicon(self.lexicon_path.read_text(encoding="utf-8"))

    def load_catalog(self) -> Catalog:
        return load_catalog(self.catalog_path.read_text(encoding="utf-8"))


def _json_value(value: object):
    if isinstance(value, TimeValue):
        return {"prep": value.prep, "year": value.year}
    if isinstance(value, BookValue):
        return {"title": value.title, "subject": value.subject}
    return value


def _text_value(value: object) -> str:
    if isinstance(value, TimeValue):
        return f"{value.prep} {value.year}"
    if isinstance(value, BookValue):
        if value.title is not None:
            return value.title
        suffix = f" thuộc {value.subject}" if value.subject else ""
        return f"(sách bất kỳ){suffix}"
    return str(value)


def _parse_report(result: ParseResult, json_output: bool) -> str:
    if json_output:
        return json.dumps({
            "rule_id": result.rule_id,
            "family": result.family,
            "bindings": [
                {
                    "category": b.category.value,
                    "surface": b.surface,
                    "value": _json_value(b.value),
                    "ordinal": b.ordinal,
                }
                for b in result.bindings
            ],
        }, ensure_ascii=False)
    lines = [f"rule: {result.rule_id}"]
    for b in result.bindings:
        value = "" if b.value is None else f"  ->  {_text_value(b.value)}"
        lines.append(f"  {b.category.value}: {b.surface}{value}")
    return "\n".join(lines)


def cmd_parse(args, config: RunConfig) -> int:
    grammar = config.load_grammar()
    lexicon = config.load_lexicon()
    results = parse(args.query, grammar, lexicon)
    if not results:
        print("no parse", file=sys.stderr)
        return EXIT_NO_PARSE
    for result in results:
        print(_parse_report(result, config.json_output))
    return EXIT_OK


def cmd_semantics(args, config: RunConfig) -> int:
    grammar = config.load_grammar()
    lexicon = config.load_lexicon()
    results = parse(args.query, grammar, lexicon)
    if not results:
        print("no parse", file=sys.stderr)
        return EXIT_NO_PARSE
    first = results[0]
    sem = transform(first)
    qtype = classify(sem)
    if config.json_output:
        print(json.dumps({
            "rule_id": first.rule_id,
            "family": first.family,
            "question_type": qtype.kind,
            "skeleton": render_skeleton(sem),
            "full": render_full(sem),
        }, ensure_ascii=False))
    else:
        print(render_skeleton(sem))
        print(render_full(sem))
    return EXIT_OK


def cmd_ask(args, config: RunConfig) -> int:
    grammar = config.load_grammar()
    lexicon = config.load_lexicon()
    catalog = config.load_catalog()
    results = parse(args.query, grammar, lexicon)
    if not results:
        print("no parse", file=sys.stderr)
        return EXIT_NO_PARSE
    sem = transform(results[0])
    qtype = classify(sem)
    answer = evaluate(sem, catalog)
    text = format_answer(answer, qtype)
    if config.json_output:
        print(json.dumps({
            "rule_id": results[0].rule_id,
            "question_type": qtype.kind,
            "kind": answer.kind,
            "value": list(answer.value) if isinstance(answer.value, tuple) else answer.value,
            "answer": text,
        }, ensure_ascii=False))
    else:
        print(text)
    return EXIT_OK


def derive_seed(base: int, rule_id: str, index: int) -> int:
    digest = hashlib.sha256(f"{base}:{rule_id}:{index}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def cmd_generate(args, config: RunConfig) -> int:
    grammar = config.load_grammar()
    lexicon = config.load_lexicon()
    if args.rule == "all":
        rule_ids = [r.id for r in grammar.rules]
    elif args.rule in grammar.by_id:
        rule_ids = [args.rule]
    else:
        print(f"unknown rule id {args.rule!r}", file=sys.stderr)
        return EXIT_ERROR
    for rule_id in rule_ids:
        for i in range(args.count):
            sentence = sample(grammar, rule_id, derive_seed(config.seed, rule_id, i), lexicon)
            print(f"{rule_id}\t{sentence}")
    return EXIT_OK


def cmd_batch(args, config: RunConfig) -> int:
    grammar = config.load_grammar()
    lexicon = config.load_lexicon()
    try:
        text = Path(args.file).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"cannot read {args.file}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    total = parsed = 0
    for line in text.splitlines():
        query = line.strip()
        if not query:
            continue
        total += 1
        results = parse(query, grammar, lexicon)
        if results:
            parsed += 1
            sem = transform(results[0])
            print(f"{results[0].rule_id}\t{render_skeleton(sem)}")
        else:
            print("NO-PARSE")
    print(f"{parsed}/{total}")
    return EXIT_OK if parsed == total else EXIT_NO_PARSE


def build_arg_parser() -> argparse.ArgumentParser:
    root = argparse.ArgumentParser(
        prog="viquery",
        description="Parse restricted Vietnamese book-catalog questions, "
                    "transform them to semantic representations and answer "
                    "them against a local catalog.",
    )
    root.add_argument("--grammar", type=Path, default=None, metavar="PATH",
                      help="grammar rules file (default: built-in rules_v1.bnf)")
    root.add_argument("--lexicon", type=Path, default=None, metavar="PATH",
                      help="lexicon file (default: built-in lexicon_v1.tsv)")
    root.add_argument("--catalog", type=Path, default=None, metavar="PATH",
                      help="catalog file (default: built-in catalog_sample.json)")
    root.add_argument("--json", action="store_true", help="structured JSON output")
    root.add_argument("--seed", type=int, default=0, help="random seed for generation")
    sub = root.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="show all parses of one query")
    p.add_argument("query")
    p.set_defaults(handler=cmd_parse)

    p = sub.add_parser("semantics", help="show the semantic representation")
    p.add_argument("query")
    p.set_defaults(handler=cmd_semantics)

    p = sub.add_parser("ask", help="answer one query against the catalog")
    p.add_argument("query")
    p.set_defaults(handler=cmd_ask)

    p = sub.add_parser("generate", help="sample sentences from rules")
    p.add_argument("rule", help="rule id or 'all'")
    p.add_argument("count", type=int)
    p.set_defaults(handler=cmd_generate)

    p = sub.add_parser("batch", help="parse a file of queries, one per line")
    p.add_argument("file")
    p.set_defaults(handler=cmd_batch)
    return root


def main(argv: list[str] | None = None) -> int:
    arg_parser = build_arg_parser()
    args = arg_parser.parse_args(argv)
    config = RunConfig(
        grammar_path=args.grammar or data_path("rules_v1.bnf"),
        lexicon_path=args.lexicon or data_path("lexicon_v1.tsv"),
        catalog_path=args.catalog or data_path("catalog_sample.json"),
        json_output=args.json,
        seed=args.seed,
    )
    for path in (config.grammar_path, config.lexicon_path):
        if not path.is_file():
            print(f"file not found: {path}", file=sys.stderr)
            return EXIT_ERROR
    try:
        return args.handler(args, config)
    except (BlankQueryError, LexiconError, GrammarError, CatalogError,
            EvaluationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
