"""Corpus statistics, POS-adjacency frequency tables, and topic-model prep."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import SelectionError
from .model import AnnotatedDocument, Token
from .pipeline import analyze_text

HISTOGRAM_BUCKETS = (
    ("<=5k", 0, 5000),
    ("5k-10k", 5001, 10000),
    ("10k-100k", 10001, 100000),
    (">100k", 100001, None),
)


def _ensure_tokens(doc: AnnotatedDocument) -> Tuple[Sequence[Token], Sequence]:
    if doc.tokens:
        return doc.tokens, doc.sentences
    return analyze_text(doc.text)


def _is_word(token: Token) -> bool:
    return token.surface[0].isalnum()


@dataclass(frozen=True)
class SeriesStats:
    minimum: int
    maximum: int
    mean: float
    stddev: float  # population


def _series(values: Sequence[int]) -> SeriesStats:
    mean = sum(values) / len(values)
    variance = sum((v - mean) ** 2 for v in values) / len(values)
    return SeriesStats(min(values), max(values), mean, math.sqrt(variance))


@dataclass(frozen=True)
class CorpusStats:
    per_doc: Mapping[str, Tuple[int, int]]  # doc_id -> (sentences, words)
    total_sentences: int
    total_words: int
    sentence_stats: Optional[SeriesStats]
    word_stats: Optional[SeriesStats]
    histogram: Mapping[str, int]  # nonzero word-count buckets only


def _bucket(words: int) -> str:
    for name, lo, hi in HISTOGRAM_BUCKETS:
        if words >= lo and (hi is None or words <= hi):
            return name
    return HISTOGRAM_BUCKETS[-1][0]


def corpus_stats(docs: Iterable[AnnotatedDocument]) -> CorpusStats:
    """Sentence and word counts; words are tokens starting alphanumeric."""
    per_doc: Dict[str, Tuple[int, int]] = {}
    histogram: Counter = Counter()
    for doc in docs:
        tokens, sentences = _ensure_tokens(doc)
        words = sum(1 for t in tokens if _is_word(t))
        per_doc[doc.metadata.doc_id] = (len(sentences), words)
        histogram[_bucket(words)] += 1
    if not per_doc:
        return CorpusStats({}, 0, 0, None, None, {})
    sentence_counts = [s for s, _ in per_doc.values()]
    word_counts = [w for _, w in per_doc.values()]
    ordered = {name: histogram[name] for name, _, _ in HISTOGRAM_BUCKETS
               if histogram[name]}
    return CorpusStats(
        per_doc=per_doc,
        total_sentences=sum(sentence_counts),
        total_words=sum(word_counts),
        sentence_stats=_series(sentence_counts),
        word_stats=_series(word_counts),
        histogram=ordered,
    )


def pattern_counts(docs: Iterable[AnnotatedDocument], pos_class: str,
                   targets: Iterable[str]) -> List[Tuple[str, int]]:
    """Count tokens of a POS class immediately preceding any target word.

    Matching is on lowercased tokens; output is (term, count) ordered by
    count descending then term ascending.
    """
    wanted = {t.lower() for t in targets}
    counts: Counter = Counter()
    for doc in docs:
        tokens, _ = _ensure_tokens(doc)
        for left, right in zip(tokens, tokens[1:]):
            if left.pos == pos_class and right.lower in wanted:
                counts[left.lower] += 1
    return sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))


@dataclass(frozen=True)
class MentionRatio:
    count_a: int
    count_b: int
    ratio: Optional[float]  # None when count_b is zero

    @property
    def undefined(self) -> bool:
        return self.ratio is None


def mention_ratio(docs: Iterable[AnnotatedDocument], set_a: Iterable[str],
                  set_b: Iterable[str]) -> MentionRatio:
    """Occurrence counts of two lowercased word sets and their quotient."""
    words_a = {w.lower() for w in set_a}
    words_b = {w.lower() for w in set_b}
    count_a = 0
    count_b = 0
    for doc in docs:
        tokens, _ = _ensure_tokens(doc)
        for tok in tokens:
            if tok.lower in words_a:
                count_a += 1
            if tok.lower in words_b:
                count_b += 1
    ratio = count_a / count_b if count_b else None
    return MentionRatio(count_a, count_b, ratio)


def lda_prepare(docs: Iterable[AnnotatedDocument], zone_label: str,
                year_range: Tuple[int, int], stopwords: Iterable[str],
                dictionary: Iterable[str]) -> List[Tuple[str, Counter]]:
    """Bag-of-words per document over text inside the given zone label.

    Keeps tokens that are dictionary words and not stopwords. Documents
    outside the year range are skipped entirely; a selection that yields
    no documents or no tokens at all is an error naming the filter.
    """
    stop = {w.lower() for w in stopwords}
    vocab = {w.lower() for w in dictionary}
    lo, hi = year_range
    selected = [d for d in docs if lo <= d.metadata.publication_year <= hi]
    if not selected:
        raise SelectionError(f"no documents published between {lo} and {hi}")
    bags: List[Tuple[str, Counter]] = []
    for doc in selected:
        tokens, _ = _ensure_tokens(doc)
        spans = [z.span for z in doc.zones if z.label == zone_label]
        bag: Counter = Counter()
        for tok in tokens:
            if not any(s.start <= tok.span.start and tok.span.end <= s.end
                       for s in spans):
                continue
            word = tok.lower
            if word in stop or word not in vocab:
                continue
            bag[word] += 1
        if bag:
            bags.append((doc.metadata.doc_id, bag))
    if not bags:
        raise SelectionError(
            f"no tokens selected by zone filter {zone_label!r}")
    return bags
