import pytest

from viquery import load_catalog, load_lexicon, parse_rule_dsl
from viquery.cli import data_path, derive_seed
from viquery.grammar import sample


@pytest.fixture(scope="session")
def lexicon():
    return load_lexicon(data_path("lexicon_v1.tsv").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def grammar():
    return parse_rule_dsl(data_path("rules_v1.bnf").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def catalog():
    return load_catalog(data_path("catalog_sample.json").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def corpus(grammar, lexicon):
    """(rule_id, sentence) for every built-in rule x 5 seeds (285 lines)."""
    lines = []
    for rule in grammar.rules:
        for i in range(5):
            lines.append((rule.id, sample(grammar, rule.id, derive_seed(0, rule.id, i), lexicon)))
    return lines
