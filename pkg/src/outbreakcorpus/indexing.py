"""Immutable faceted inverted index over annotated documents.

Postings map lowercased terms to per-document sorted token positions.
Positions are indices into the document's full token sequence, so tokens
suppressed at build time (table zones, running headers/footers) still
consume positions and phrase adjacency cannot leak across them.
"""

from __future__ import annotations

import bisect
import hashlib
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Optional, Tuple

from .annotate import merge_entities
from .errors import DuplicateDocumentError, FileFormatError
from .geo import Gazetteer, resolve
from .lexicon import EntityLexicon, match_lexicon_entities
from .model import AnnotatedDocument, CalendarInterval, CalendarPoint
from .pipeline import analyze_text
from .resources import default_gazetteer, default_lexicon

FORMAT_VERSION = 1

EXCLUDABLE = {"table": "exclude_table_zones",
              "header-footer": "exclude_header_footer"}


@dataclass(frozen=True)
class BuildOptions:
    exclude_table_zones: bool = True
    exclude_header_footer: bool = True

    def excluded_labels(self) -> frozenset:
        labels = set()
        if self.exclude_table_zones:
            labels.add("table")
        if self.exclude_header_footer:
            labels.add("header-footer")
        return frozenset(labels)


@dataclass(frozen=True)
class IndexedDocument:
    """Everything the search side needs about one document."""

    doc_id: str
    title: str
    year: int
    main_location: Optional[str]
    language: str
    text: str
    token_spans: Tuple[Tuple[int, int], ...]
    sentence_spans: Tuple[Tuple[int, int], ...]
    zones: Tuple[Tuple[str, int, int, Optional[int]], ...]
    zone_token_ranges: Tuple[Tuple[str, int, int], ...]
    entity_counts: Mapping[str, int]
    entity_total: int
    date_intervals: Tuple[Tuple[Optional[int], Optional[int]], ...]
    geo_points: Tuple[Tuple[float, float], ...]
    boxes: Tuple[Tuple[int, int, int, int, int, int, int], ...]
    dl: int

    def token_ranges_for(self, label: str) -> Tuple[Tuple[int, int], ...]:
        return tuple((ts, te) for lbl, ts, te in self.zone_token_ranges
                     if lbl == label)


class CorpusIndex:
    """Read-only snapshot; build once, search concurrently."""

    def __init__(self, docs, postings, options: BuildOptions, avgdl: float):
        self._docs = {doc_id: docs[doc_id] for doc_id in sorted(docs)}
        self._postings = postings
        self.options = options
        self.avgdl = avgdl
        self._version = None

    @property
    def doc_ids(self) -> Tuple[str, ...]:
        return tuple(self._docs)

    @property
    def doc_count(self) -> int:
        return len(self._docs)

    @property
    def vocabulary(self) -> Tuple[str, ...]:
        return tuple(sorted(self._postings))

    def document(self, doc_id: str) -> IndexedDocument:
        return self._docs[doc_id]

    def has_document(self, doc_id: str) -> bool:
        return doc_id in self._docs

    def postings(self, term: str) -> Mapping[str, Tuple[int, ...]]:
        return self._postings.get(term, {})

    def document_frequency(self, term: str) -> int:
        return len(self._postings.get(term, {}))

    @property
    def index_version(self) -> str:
        if self._version is None:
            payload = _canonical_bytes(_to_payload(self))
            self._version = hashlib.sha256(payload).hexdigest()
        return self._version


def _token_range_in_zone(starts, ends, z_start, z_end):
    """Half-open token index range of the tokens fully inside [z_start, z_end)."""
    ts = bisect.bisect_left(starts, z_start)
    te = ts
    while te < len(ends) and ends[te] <= z_end:
        te += 1
    return ts, te


def _date_interval_ordinals(value):
    if isinstance(value, CalendarPoint):
        return value.first_day().toordinal(), value.last_day().toordinal()
    if isinstance(value, CalendarInterval):
        lo = None if value.open_start else value.start.first_day().toordinal()
        hi = None if value.open_end else value.end.last_day().toordinal()
        return lo, hi
    return None


def _indexable(surface: str) -> bool:
    return surface[0].isalnum()


def build_index(docs: Iterable[AnnotatedDocument],
                options: BuildOptions = BuildOptions(),
                lexicon: Optional[EntityLexicon] = None,
                gazetteer: Optional[Gazetteer] = None) -> CorpusIndex:
    """Index validated documents into an immutable snapshot.

    A lexicon sweep runs over each document so entities the annotation
    stage missed still land in the facet tables, and location entities
    are resolved to gazetteer coordinates.
    """
    lexicon = lexicon if lexicon is not None else default_lexicon()
    gazetteer = gazetteer if gazetteer is not None else default_gazetteer()
    excluded_labels = options.excluded_labels()

    entries = {}
    postings = {}
    for doc in docs:
        doc_id = doc.metadata.doc_id
        if doc_id in entries:
            raise DuplicateDocumentError(f"duplicate document id {doc_id!r}")
        tokens = doc.tokens
        sentences = doc.sentences
        if not tokens:
            tokens, sentences = analyze_text(doc.text)

        starts = [t.span.start for t in tokens]
        ends = [t.span.end for t in tokens]
        zone_token_ranges = []
        excluded = [False] * len(tokens)
        for zone in doc.zones:
            ts, te = _token_range_in_zone(starts, ends, zone.span.start, zone.span.end)
            zone_token_ranges.append((zone.label, ts, te))
            if zone.label in excluded_labels:
                for i in range(ts, te):
                    excluded[i] = True

        missed = match_lexicon_entities(tokens, lexicon, doc.text)
        entities = merge_entities(doc.entities, missed)

        entity_counts = {}
        date_intervals = []
        geo_points = []
        for ent in entities:
            entity_counts[ent.entity_type] = entity_counts.get(ent.entity_type, 0) + 1
            ords = _date_interval_ordinals(ent.normalized)
            if ords is not None:
                date_intervals.append(ords)
        for ent in entities:
            if ent.entity_type != "location":
                continue
            resolution = resolve(ent, geo_points, gazetteer)
            if resolution is not None:
                geo_points.append((resolution.chosen.latitude,
                                   resolution.chosen.longitude))

        dl = 0
        for i, tok in enumerate(tokens):
            if excluded[i] or not _indexable(tok.surface):
                continue
            postings.setdefault(tok.lower, {}).setdefault(doc_id, []).append(i)
            dl += 1

        boxes = tuple(
            (b.page, b.x, b.y, b.w, b.h, b.char_span.start, b.char_span.end)
            for b in doc.word_boxes if b.char_span is not None)

        entries[doc_id] = IndexedDocument(
            doc_id=doc_id,
            title=doc.metadata.title,
            year=doc.metadata.publication_year,
            main_location=doc.metadata.main_location,
            language=doc.metadata.language,
            text=doc.text,
            token_spans=tuple((t.span.start, t.span.end) for t in tokens),
            sentence_spans=tuple((s.span.start, s.span.end) for s in sentences),
            zones=tuple((z.label, z.span.start, z.span.end, z.page_number)
                        for z in doc.zones),
            zone_token_ranges=tuple(zone_token_ranges),
            entity_counts=entity_counts,
            entity_total=len(entities),
            date_intervals=tuple(date_intervals),
            geo_points=tuple(geo_points),
            boxes=boxes,
            dl=dl,
        )

    frozen = {term: {d: tuple(ps) for d, ps in docs_.items()}
              for term, docs_ in postings.items()}
    total = sum(e.dl for e in entries.values())
    avgdl = total / len(entries) if entries else 0.0
    return CorpusIndex(entries, frozen, options, avgdl)


# --------------------------------------------------------------------------
# Persistence: data.json holds the full snapshot in canonical JSON, and
# manifest.json records the format version and a sha256 over the data so
# rebuilds from identical sources are byte-identical and verifiable.


def _doc_payload(d: IndexedDocument):
    return {
        "doc_id": d.doc_id,
        "title": d.title,
        "year": d.year,
        "main_location": d.main_location,
        "language": d.language,
        "text": d.text,
        "token_spans": [list(t) for t in d.token_spans],
        "sentence_spans": [list(s) for s in d.sentence_spans],
        "zones": [list(z) for z in d.zones],
        "zone_token_ranges": [list(z) for z in d.zone_token_ranges],
        "entity_counts": dict(d.entity_counts),
        "entity_total": d.entity_total,
        "date_intervals": [list(iv) for iv in d.date_intervals],
        "geo_points": [list(p) for p in d.geo_points],
        "boxes": [list(b) for b in d.boxes],
        "dl": d.dl,
    }


def _doc_from_payload(p) -> IndexedDocument:
    return IndexedDocument(
        doc_id=p["doc_id"],
        title=p["title"],
        year=p["year"],
        main_location=p["main_location"],
        language=p["language"],
        text=p["text"],
        token_spans=tuple((a, b) for a, b in p["token_spans"]),
        sentence_spans=tuple((a, b) for a, b in p["sentence_spans"]),
        zones=tuple((label, a, b, page) for label, a, b, page in p["zones"]),
        zone_token_ranges=tuple((label, a, b) for label, a, b in p["zone_token_ranges"]),
        entity_counts=dict(p["entity_counts"]),
        entity_total=p["entity_total"],
        date_intervals=tuple((a, b) for a, b in p["date_intervals"]),
        geo_points=tuple((a, b) for a, b in p["geo_points"]),
        boxes=tuple(tuple(b) for b in p["boxes"]),
        dl=p["dl"],
    )


def _to_payload(index: CorpusIndex):
    return {
        "format_version": FORMAT_VERSION,
        "options": {
            "exclude_table_zones": index.options.exclude_table_zones,
            "exclude_header_footer": index.options.exclude_header_footer,
        },
        "avgdl": index.avgdl,
        "docs": {doc_id: _doc_payload(index.document(doc_id))
                 for doc_id in index.doc_ids},
        "postings": {term: {d: list(ps) for d, ps in index.postings(term).items()}
                     for term in index.vocabulary},
    }


def _canonical_bytes(payload) -> bytes:
    return json.dumps(payload, sort_keys=True, ensure_ascii=False,
                      separators=(",", ":")).encode("utf-8")


def save_index(index: CorpusIndex, directory) -> str:
    """Write the snapshot to a directory; returns its index_version."""
    path = Path(directory)
    path.mkdir(parents=True, exist_ok=True)
    data = _canonical_bytes(_to_payload(index))
    version = hashlib.sha256(data).hexdigest()
    (path / "data.json").write_bytes(data)
    manifest = {
        "format_version": FORMAT_VERSION,
        "doc_count": index.doc_count,
        "options": {
            "exclude_table_zones": index.options.exclude_table_zones,
            "exclude_header_footer": index.options.exclude_header_footer,
        },
        "index_version": version,
    }
    (path / "manifest.json").write_bytes(_canonical_bytes(manifest))
    return version


def load_index(directory) -> CorpusIndex:
    path = Path(directory)
    manifest_path = path / "manifest.json"
    data_path = path / "data.json"
    if not manifest_path.is_file() or not data_path.is_file():
        raise FileFormatError("not an index directory", path=str(path))
    manifest = json.loads(manifest_path.read_text("utf-8"))
    if manifest.get("format_version") != FORMAT_VERSION:
        raise FileFormatError(
            f"unsupported index format {manifest.get('format_version')!r}",
            path=str(manifest_path))
    raw = data_path.read_bytes()
    digest = hashlib.sha256(raw).hexdigest()
    if digest != manifest.get("index_version"):
        raise FileFormatError("index checksum mismatch", path=str(data_path))
    payload = json.loads(raw.decode("utf-8"))
    docs = {doc_id: _doc_from_payload(p) for doc_id, p in payload["docs"].items()}
    postings = {term: {d: tuple(ps) for d, ps in per_doc.items()}
                for term, per_doc in payload["postings"].items()}
    options = BuildOptions(**payload["options"])
    index = CorpusIndex(docs, postings, options, payload["avgdl"])
    index._version = digest
    return index
