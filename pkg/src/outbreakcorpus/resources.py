"""Loaders for bundled word lists, lexicons, and the fixture gazetteer.

All list files are UTF-8 plain text, one entry per line, full-line "#"
comments and blank lines ignored. TSV files follow the column layouts
documented next to each loader. The package ships small default files under
outbreakcorpus/data/; every loader also accepts a filesystem path so users
can swap in their own resources.
"""

from __future__ import annotations

from functools import lru_cache
from importlib import resources as _importlib_resources
from pathlib import Path


def _read_text(source) -> str:
    if isinstance(source, (str, Path)):
        return Path(source).read_text(encoding="utf-8")
    # importlib.resources traversable
    return source.read_text(encoding="utf-8")


def data_file(name: str):
    return _importlib_resources.files("outbreakcorpus").joinpath("data").joinpath(name)


def load_lines(source) -> list[str]:
    """Non-empty, non-comment lines with surrounding whitespace stripped."""
    out = []
    for line in _read_text(source).splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        out.append(line)
    return out


def load_wordlist(source) -> frozenset[str]:
    """Case-folded word set from a one-word-per-line file."""
    return frozenset(w.lower() for w in load_lines(source))


@lru_cache(maxsize=None)
def default_vocabulary() -> frozenset[str]:
    return load_wordlist(data_file("vocabulary.txt"))


@lru_cache(maxsize=None)
def default_abbreviations() -> tuple[str, ...]:
    return tuple(load_lines(data_file("abbreviations.txt")))


@lru_cache(maxsize=None)
def default_pronouns() -> frozenset[str]:
    return load_wordlist(data_file("pronouns.txt"))


@lru_cache(maxsize=None)
def default_function_words() -> frozenset[str]:
    return load_wordlist(data_file("function_words.txt"))


@lru_cache(maxsize=None)
def default_adjectives() -> frozenset[str]:
    return load_wordlist(data_file("adjectives.txt"))


@lru_cache(maxsize=None)
def default_verbs() -> frozenset[str]:
    return load_wordlist(data_file("verbs.txt"))


@lru_cache(maxsize=None)
def default_nouns() -> frozenset[str]:
    return load_wordlist(data_file("nouns.txt"))


@lru_cache(maxsize=None)
def default_stopwords() -> frozenset[str]:
    return load_wordlist(data_file("stopwords.txt"))


@lru_cache(maxsize=None)
def default_dictionary() -> frozenset[str]:
    return load_wordlist(data_file("dictionary.txt"))


LEXICON_FILES = (
    "lexicon_plague_terms.tsv",
    "lexicon_persons.tsv",
    "lexicon_locations.tsv",
    "lexicon_geo_features.tsv",
    "lexicon_populations.tsv",
    "lexicon_variants.tsv",
)


@lru_cache(maxsize=None)
def default_lexicon():
    from .lexicon import load_lexicon
    return load_lexicon([data_file(n) for n in LEXICON_FILES])


@lru_cache(maxsize=None)
def default_gazetteer():
    from .geo import load_gazetteer
    return load_gazetteer(data_file("gazetteer.tsv"))
