"""Deterministic text pre-processing.

Stages: end-of-line hyphenation repair (vocabulary-driven), rule-based
tokenization, sentence splitting, and a coarse 9-tag POS tagger. Everything
here is a pure function; documents can be processed in parallel freely.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from functools import lru_cache

from . import resources
from .model import Sentence, Span, Token

_WORD = r"[A-Za-z]+(?:[-'’][A-Za-z]+)*"

# a token ending in "-" at a line break, followed by the continuation token
_HYPHEN_BREAK = re.compile(rf"(?P<left>{_WORD})-(?P<br>\r?\n)(?P<right>{_WORD})")


def repair_hyphenation(raw_text: str, vocabulary: frozenset[str]):
    """Join words broken across line ends, guided by a vocabulary.

    "epi-\\ndemic" becomes "epidemic" when the joined form is a vocabulary
    word; when only the hyphenated form ("well-nourished") is known, the
    hyphen survives and just the line break is dropped; unknown pairs are
    left untouched. Returns the repaired text and a total, monotone offset
    map (length len(raw_text)+1) from raw to repaired offsets.
    """
    out: list[str] = []
    offmap = [0] * (len(raw_text) + 1)
    pos = 0
    new = 0

    def copy_through(end: int):
        nonlocal pos, new
        while pos < end:
            offmap[pos] = new
            out.append(raw_text[pos])
            new += 1
            pos += 1

    for m in _HYPHEN_BREAK.finditer(raw_text):
        left, br, right = m.group("left"), m.group("br"), m.group("right")
        joined = (left + right).lower()
        hyphenated = (left + "-" + right).lower()
        if joined in vocabulary:
            keep_hyphen = False
        elif hyphenated in vocabulary:
            keep_hyphen = True
        else:
            continue
        copy_through(m.start() + len(left))
        if keep_hyphen:
            offmap[pos] = new
            out.append("-")
            new += 1
            pos += 1
        else:
            offmap[pos] = new  # dropped hyphen maps to the join position
            pos += 1
        for _ in br:
            offmap[pos] = new
            pos += 1
    copy_through(len(raw_text))
    offmap[len(raw_text)] = new
    return "".join(out), offmap


@lru_cache(maxsize=8)
def _token_pattern(abbreviations: tuple[str, ...]) -> re.Pattern:
    abbr_alt = "|".join(re.escape(a) for a in sorted(abbreviations, key=len, reverse=True))
    parts = [
        rf"(?<![A-Za-z])(?:{abbr_alt})(?![A-Za-z])",  # listed abbreviations, dot kept
        r"(?:[A-Za-z]\.){2,}(?![A-Za-z])",  # other dotted abbreviations (U.S.)
        r"\d{1,2}:\d{2}",  # clock times
        r"\d+(?:[.,]\d+)*[A-Za-z]*",  # numbers, decimals, ordinals like 4th
        _WORD,
        r"\S",  # any stray character becomes its own token
    ]
    return re.compile("|".join(f"(?:{p})" for p in parts), re.IGNORECASE)


def tokenize(text: str, abbreviations: tuple[str, ...] | None = None) -> list[Token]:
    """Split text into tokens; punctuation separates except inside
    abbreviations, decimals, clock times, and intra-word hyphens."""
    pat = _token_pattern(abbreviations if abbreviations is not None
                         else resources.default_abbreviations())
    return [Token(Span(m.start(), m.end()), m.group(), m.group().lower())
            for m in pat.finditer(text)]


_SENT_END = frozenset({".", "!", "?"})


def split_sentences(tokens: list[Token]) -> list[Sentence]:
    """Sentence boundaries at ./!/? tokens, except inside short parentheticals.

    Abbreviation dots never split because they stay inside their token. A
    parenthetical whose contents are shorter than five tokens is treated as
    an aside and never split internally.
    """
    if not tokens:
        return []
    suppressed = [False] * len(tokens)
    stack: list[int] = []
    for i, t in enumerate(tokens):
        if t.surface == "(":
            stack.append(i)
        elif t.surface == ")" and stack:
            start = stack.pop()
            if i - start - 1 < 5:
                for k in range(start + 1, i):
                    suppressed[k] = True

    sentences: list[Sentence] = []
    first = 0
    for i, t in enumerate(tokens):
        if t.surface in _SENT_END and not suppressed[i]:
            sentences.append(_make_sentence(tokens, first, i + 1))
            first = i + 1
    if first < len(tokens):
        sentences.append(_make_sentence(tokens, first, len(tokens)))
    return sentences


def _make_sentence(tokens, a, b):
    return Sentence(Span(tokens[a].span.start, tokens[b - 1].span.end), a, b)


@dataclass(frozen=True)
class PosLexicons:
    pronouns: frozenset[str]
    function_words: frozenset[str]
    adjectives: frozenset[str]
    verbs: frozenset[str]
    nouns: frozenset[str]


@lru_cache(maxsize=1)
def default_pos_lexicons() -> PosLexicons:
    return PosLexicons(
        pronouns=resources.default_pronouns(),
        function_words=resources.default_function_words(),
        adjectives=resources.default_adjectives(),
        verbs=resources.default_verbs(),
        nouns=resources.default_nouns(),
    )


def _tag_one(t: Token, prev_pos: str | None, lex: PosLexicons) -> str:
    s = t.lower
    if not any(c.isalnum() for c in s):
        return "PUNCT"
    if s[0].isdigit():
        return "NUM"
    if s in lex.pronouns:
        return "PRON"
    if s in lex.function_words:
        return "FUNC"
    if s in lex.adjectives:
        return "ADJ"
    if s in lex.verbs:
        return "VERB"
    if s in lex.nouns:
        return "NOUN"
    if s.endswith("ly"):
        return "ADV"
    if prev_pos == "PRON" and s.endswith(("ed", "ing")):
        return "VERB"
    if s.endswith(("ous", "al", "ive")):
        return "ADJ"
    if all(c.isalpha() or c in "-'.’" for c in s):
        return "NOUN"
    return "OTHER"


def tag_pos_coarse(tokens: list[Token], lexicons: PosLexicons | None = None) -> list[Token]:
    """Assign a coarse tag to each token: closed-class lists first, then the
    seed lexicons, then suffix rules, then NOUN for unknown words."""
    lex = lexicons or default_pos_lexicons()
    out: list[Token] = []
    prev_pos: str | None = None
    for t in tokens:
        pos = _tag_one(t, prev_pos, lex)
        out.append(replace(t, pos=pos))
        prev_pos = pos
    return out


def analyze_text(text: str, abbreviations=None, lexicons=None):
    """Tokenize + tag + split in one go; returns (tokens, sentences)."""
    tokens = tag_pos_coarse(tokenize(text, abbreviations), lexicons)
    return tokens, split_sentences(tokens)
