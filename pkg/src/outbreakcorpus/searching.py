"""Query execution: BM25 ranking, fuzzy expansion, facets, highlighting."""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, Mapping, Optional, Set, Tuple, Union

from .indexing import CorpusIndex, IndexedDocument
from . import querylang as q
from .querylang import parse_query

FACET_NAMES = ("zone", "type", "year", "location")

SNIPPET_LIMIT = 240


@dataclass(frozen=True)
class Bm25Params:
    k1: float = 1.2
    b: float = 0.75


DEFAULT_BM25 = Bm25Params()


@dataclass(frozen=True)
class Hit:
    doc_id: str
    title: str
    year: int
    score: float
    matches: Tuple[Tuple[int, int], ...]  # inclusive token index ranges


@dataclass(frozen=True)
class SearchResult:
    total: int
    hits: Tuple[Hit, ...]
    facets: Mapping[str, Mapping[str, int]]


@dataclass(frozen=True)
class Highlight:
    char_start: int
    char_end: int
    text: str
    regions: Tuple[Tuple[int, int, int, int, int], ...]  # (page, x, y, w, h)


@dataclass
class _Acc:
    score: float = 0.0
    matches: Set[Tuple[int, int]] = field(default_factory=set)


def levenshtein_within(a: str, b: str, k: int) -> bool:
    """True when edit distance(a, b) <= k with unit-cost operations."""
    la, lb = len(a), len(b)
    if abs(la - lb) > k:
        return False
    prev = list(range(lb + 1))
    for i in range(1, la + 1):
        cur = [i] + [0] * lb
        ca = a[i - 1]
        for j in range(1, lb + 1):
            cost = 0 if ca == b[j - 1] else 1
            cur[j] = min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost)
        if min(cur) > k:
            return False
        prev = cur
    return prev[lb] <= k


def fuzzy_expand(term: str, max_edits: int, vocabulary: Iterable[str]) -> frozenset:
    """All vocabulary terms within the given edit distance of term."""
    if max_edits not in (0, 1, 2):
        raise ValueError(f"max_edits must be 0, 1 or 2, got {max_edits}")
    if max_edits == 0:
        vocab = set(vocabulary)
        return frozenset({term} if term in vocab else ())
    return frozenset(w for w in vocabulary if levenshtein_within(term, w, max_edits))


def _bm25(tf: int, df: int, n_docs: int, dl: int, avgdl: float,
          params: Bm25Params) -> float:
    if tf == 0 or df == 0:
        return 0.0
    idf = math.log(1.0 + (n_docs - df + 0.5) / (df + 0.5))
    norm = 1.0 - params.b + params.b * (dl / avgdl if avgdl > 0 else 0.0)
    return idf * tf * (params.k1 + 1.0) / (tf + params.k1 * norm)


# --------------------------------------------------------------------------
# Evaluation. Returns doc_id -> _Acc. Zone filters that are direct or
# inherited children of an AND restrict where sibling terms may match;
# anywhere else a zone filter is a document-level predicate.


def _position_allowed(doc: IndexedDocument, restrict, pos: int) -> bool:
    for label in restrict:
        if not any(ts <= pos < te for ts, te in doc.token_ranges_for(label)):
            return False
    return True


def _range_allowed(doc: IndexedDocument, restrict, start: int, end: int) -> bool:
    for label in restrict:
        if not any(ts <= start and end < te
                   for ts, te in doc.token_ranges_for(label)):
            return False
    return True


def _eval_term(node: q.Term, index: CorpusIndex, restrict, params) -> Dict[str, _Acc]:
    per_doc = index.postings(node.text)
    df = len(per_doc)
    out = {}
    for doc_id, positions in per_doc.items():
        doc = index.document(doc_id)
        kept = [p for p in positions if _position_allowed(doc, restrict, p)] \
            if restrict else list(positions)
        if not kept:
            continue
        score = _bm25(len(kept), df, index.doc_count, doc.dl, index.avgdl, params)
        out[doc_id] = _Acc(score, {(p, p) for p in kept})
    return out


def _eval_phrase(node: q.Phrase, index: CorpusIndex, restrict, params) -> Dict[str, _Acc]:
    postings = [index.postings(w) for w in node.words]
    if not postings or any(not p for p in postings):
        return {}
    candidates = set(postings[0])
    for per_doc in postings[1:]:
        candidates &= set(per_doc)
    base = node.offsets[0]
    span = node.offsets[-1] - base
    raw = {}
    for doc_id in candidates:
        position_sets = [set(per_doc[doc_id]) for per_doc in postings]
        starts = []
        for p in sorted(position_sets[0]):
            if all((p + node.offsets[k] - base) in position_sets[k]
                   for k in range(1, len(node.words))):
                starts.append(p)
        if starts:
            raw[doc_id] = starts
    df = len(raw)
    out = {}
    for doc_id, starts in raw.items():
        doc = index.document(doc_id)
        kept = [p for p in starts
                if _range_allowed(doc, restrict, p, p + span)] if restrict else starts
        if not kept:
            continue
        score = _bm25(len(kept), df, index.doc_count, doc.dl, index.avgdl, params)
        out[doc_id] = _Acc(score, {(p, p + span) for p in kept})
    return out


def _eval_fuzzy(node: q.Fuzzy, index: CorpusIndex, restrict, params) -> Dict[str, _Acc]:
    out: Dict[str, _Acc] = {}
    for term in sorted(fuzzy_expand(node.text, node.max_edits, index.vocabulary)):
        for doc_id, acc in _eval_term(q.Term(term), index, restrict, params).items():
            agg = out.setdefault(doc_id, _Acc())
            agg.score += acc.score
            agg.matches |= acc.matches
    return out


def _doc_filter(index: CorpusIndex, predicate) -> Dict[str, _Acc]:
    return {doc_id: _Acc() for doc_id in index.doc_ids
            if predicate(index.document(doc_id))}


def _overlaps(doc_iv, q_lo: int, q_hi: int) -> bool:
    lo, hi = doc_iv
    return (lo is None or lo <= q_hi) and (hi is None or hi >= q_lo)


def _eval_filter(node, index: CorpusIndex) -> Dict[str, _Acc]:
    if isinstance(node, q.ZoneFilter):
        return _doc_filter(index, lambda d: any(z[0] == node.label for z in d.zones))
    if isinstance(node, q.TypeFilter):
        return _doc_filter(index, lambda d: node.entity_type in d.entity_counts)
    if isinstance(node, q.YearRange):
        return _doc_filter(index, lambda d: node.start <= d.year <= node.end)
    if isinstance(node, q.DateOverlap):
        q_lo = node.interval.start.first_day().toordinal()
        q_hi = node.interval.end.last_day().toordinal()
        return _doc_filter(index, lambda d: any(
            _overlaps(iv, q_lo, q_hi) for iv in d.date_intervals))
    if isinstance(node, q.GeoBox):
        return _doc_filter(index, lambda d: any(
            node.min_lat <= lat <= node.max_lat and node.min_lon <= lon <= node.max_lon
            for lat, lon in d.geo_points))
    raise TypeError(f"not a filter node: {node!r}")


_FILTER_NODES = (q.ZoneFilter, q.TypeFilter, q.YearRange, q.DateOverlap, q.GeoBox)


def _merge_and(parts) -> Dict[str, _Acc]:
    docs = None
    for part in parts:
        docs = set(part) if docs is None else docs & set(part)
    out = {}
    for doc_id in docs or ():
        acc = _Acc()
        for part in parts:
            sub = part.get(doc_id)
            if sub is not None:
                acc.score += sub.score
                acc.matches |= sub.matches
        out[doc_id] = acc
    return out


def _eval(node, index: CorpusIndex, restrict, params) -> Dict[str, _Acc]:
    if isinstance(node, q.Term):
        return _eval_term(node, index, restrict, params)
    if isinstance(node, q.Phrase):
        return _eval_phrase(node, index, restrict, params)
    if isinstance(node, q.Fuzzy):
        return _eval_fuzzy(node, index, restrict, params)
    if isinstance(node, _FILTER_NODES):
        return _eval_filter(node, index)
    if isinstance(node, q.Not):
        matched = set(_eval(node.item, index, restrict, params))
        return {doc_id: _Acc() for doc_id in index.doc_ids if doc_id not in matched}
    if isinstance(node, q.Or):
        out: Dict[str, _Acc] = {}
        for item in node.items:
            for doc_id, acc in _eval(item, index, restrict, params).items():
                agg = out.setdefault(doc_id, _Acc())
                agg.score += acc.score
                agg.matches |= acc.matches
        return out
    if isinstance(node, q.And):
        zone_labels = tuple(item.label for item in node.items
                            if isinstance(item, q.ZoneFilter))
        inner = restrict + zone_labels
        parts = []
        for item in node.items:
            if isinstance(item, q.ZoneFilter):
                parts.append(_eval_filter(item, index))
            else:
                parts.append(_eval(item, index, inner, params))
        return _merge_and(parts)
    raise TypeError(f"unknown query node: {node!r}")


# --------------------------------------------------------------------------
# Facets: zone counts come from where matches landed; entity type, year
# and main location are document-level.


def _facet_counts(index: CorpusIndex, accs: Mapping[str, _Acc]) -> Dict[str, Dict[str, int]]:
    zone: Dict[str, int] = {}
    etype: Dict[str, int] = {}
    year: Dict[str, int] = {}
    location: Dict[str, int] = {}
    for doc_id, acc in accs.items():
        doc = index.document(doc_id)
        hit_labels = set()
        for label, ts, te in doc.zone_token_ranges:
            if label in hit_labels:
                continue
            for s, e in acc.matches:
                if s < te and e >= ts:
                    hit_labels.add(label)
                    break
        for label in hit_labels:
            zone[label] = zone.get(label, 0) + 1
        for t in doc.entity_counts:
            etype[t] = etype.get(t, 0) + 1
        year_key = str(doc.year)
        year[year_key] = year.get(year_key, 0) + 1
        if doc.main_location:
            location[doc.main_location] = location.get(doc.main_location, 0) + 1
    return {"zone": dict(sorted(zone.items())),
            "type": dict(sorted(etype.items())),
            "year": dict(sorted(year.items())),
            "location": dict(sorted(location.items()))}


QueryLike = Union[str, q.Term, q.Phrase, q.Fuzzy, q.ZoneFilter, q.TypeFilter,
                  q.YearRange, q.DateOverlap, q.GeoBox, q.And, q.Or, q.Not]


def _as_ast(query: QueryLike):
    return parse_query(query) if isinstance(query, str) else query


def search(index: CorpusIndex, query: QueryLike, page: int = 1,
           page_size: int = 10, params: Bm25Params = DEFAULT_BM25) -> SearchResult:
    """Rank matching documents: BM25 score descending, then doc id."""
    if page < 1 or page_size < 1:
        raise ValueError("page and page_size must be >= 1")
    ast = _as_ast(query)
    accs = _eval(ast, index, (), params)
    ranked = sorted(accs.items(), key=lambda kv: (-kv[1].score, kv[0]))
    facets = _facet_counts(index, accs)
    start = (page - 1) * page_size
    hits = []
    for doc_id, acc in ranked[start:start + page_size]:
        doc = index.document(doc_id)
        hits.append(Hit(doc_id=doc_id, title=doc.title, year=doc.year,
                        score=acc.score, matches=tuple(sorted(acc.matches))))
    return SearchResult(total=len(ranked), hits=tuple(hits), facets=facets)


# --------------------------------------------------------------------------
# Highlighting


def _containing_sentence(doc: IndexedDocument, char_start: int) -> Optional[Tuple[int, int]]:
    starts = [a for a, _ in doc.sentence_spans]
    i = bisect.bisect_right(starts, char_start) - 1
    if i >= 0 and doc.sentence_spans[i][1] > char_start:
        return doc.sentence_spans[i]
    return None


def _snippet_bounds(doc: IndexedDocument, cs: int, ce: int) -> Tuple[int, int]:
    sentence = _containing_sentence(doc, cs)
    lo, hi = sentence if sentence else (cs, ce)
    if hi - lo <= SNIPPET_LIMIT:
        return lo, hi
    center = (cs + ce) // 2
    start = max(lo, center - SNIPPET_LIMIT // 2)
    end = min(hi, start + SNIPPET_LIMIT)
    start = max(lo, end - SNIPPET_LIMIT)
    return start, end


def _regions_for(doc: IndexedDocument, cs: int, ce: int):
    by_page: Dict[int, Tuple[int, int, int, int]] = {}
    for page, x, y, w, h, bcs, bce in doc.boxes:
        if bcs < ce and bce > cs:
            if page in by_page:
                px, py, pr, pb = by_page[page]
                by_page[page] = (min(px, x), min(py, y),
                                 max(pr, x + w), max(pb, y + h))
            else:
                by_page[page] = (x, y, x + w, y + h)
    return tuple((page, x, y, r - x, b - y)
                 for page, (x, y, r, b) in sorted(by_page.items()))


def highlight(index: CorpusIndex, doc_id: str, query: QueryLike,
              params: Bm25Params = DEFAULT_BM25) -> Tuple[Highlight, ...]:
    """One highlight per matched position, in document order."""
    doc = index.document(doc_id)
    accs = _eval(_as_ast(query), index, (), params)
    acc = accs.get(doc_id)
    if acc is None:
        return ()
    out = []
    for s, e in sorted(acc.matches):
        cs = doc.token_spans[s][0]
        ce = doc.token_spans[e][1]
        lo, hi = _snippet_bounds(doc, cs, ce)
        out.append(Highlight(char_start=cs, char_end=ce,
                             text=doc.text[lo:hi],
                             regions=_regions_for(doc, cs, ce)))
    return tuple(out)
