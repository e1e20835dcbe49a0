"""Corpus directory I/O and the document ingestion sequence.

One report lives in one directory:

    corpus/<doc_id>/
        text.txt        raw OCR text, UTF-8
        meta.json       title, publication_year, optional location/language
        ann.ann         standoff annotations (optional)
        alto/           <doc_id>_p<page>.xml coordinate files (optional)

Ingestion: hyphenation repair (remapping annotation offsets), spelling
corrections from annotator notes, text analysis, automatic entity
annotation, then ALTO alignment against the final text.
"""

from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Iterable, List, Optional, Tuple

from .alto import align_text_to_alto, parse_alto
from .annotate import annotate_entities
from .errors import FileFormatError
from .lexicon import EntityLexicon
from .model import (
    AnnotatedDocument,
    DocumentMetadata,
    EntityAnnotation,
    Span,
    ZoneAnnotation,
)
from .pipeline import analyze_text, repair_hyphenation
from .resources import default_vocabulary
from .standoff import apply_corrections, emit_standoff, parse_standoff

_META_KEYS = {"doc_id", "title", "publication_year", "main_location", "language"}


class RawDocument:
    def __init__(self, doc_id: str, text: str, ann: str,
                 metadata: DocumentMetadata,
                 alto_pages: Tuple[Tuple[int, str], ...] = ()):
        self.doc_id = doc_id
        self.text = text
        self.ann = ann
        self.metadata = metadata
        self.alto_pages = alto_pages


def _read_meta(path: Path, doc_id: str) -> DocumentMetadata:
    try:
        raw = json.loads(path.read_text("utf-8"))
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"bad JSON: {exc}", path=str(path)) from None
    if not isinstance(raw, dict):
        raise FileFormatError("metadata must be a JSON object", path=str(path))
    unknown = set(raw) - _META_KEYS
    if unknown:
        raise FileFormatError(f"unknown metadata keys: {sorted(unknown)}",
                              path=str(path))
    if raw.get("doc_id", doc_id) != doc_id:
        raise FileFormatError(
            f"metadata doc_id {raw['doc_id']!r} does not match directory {doc_id!r}",
            path=str(path))
    for key in ("title", "publication_year"):
        if key not in raw:
            raise FileFormatError(f"metadata missing {key!r}", path=str(path))
    if not isinstance(raw["publication_year"], int):
        raise FileFormatError("publication_year must be an integer",
                              path=str(path))
    return DocumentMetadata(
        doc_id=doc_id,
        title=raw["title"],
        publication_year=raw["publication_year"],
        main_location=raw.get("main_location"),
        language=raw.get("language", "en"),
    )


def read_raw_document(directory) -> RawDocument:
    path = Path(directory)
    doc_id = path.name
    text_path = path / "text.txt"
    meta_path = path / "meta.json"
    if not text_path.is_file():
        raise FileFormatError("missing text.txt", path=str(path))
    if not meta_path.is_file():
        raise FileFormatError("missing meta.json", path=str(path))
    text = text_path.read_text("utf-8")
    metadata = _read_meta(meta_path, doc_id)
    ann_path = path / "ann.ann"
    ann = ann_path.read_text("utf-8") if ann_path.is_file() else ""

    alto_pages: List[Tuple[int, str]] = []
    alto_dir = path / "alto"
    if alto_dir.is_dir():
        pattern = re.compile(rf"^{re.escape(doc_id)}_p(\d+)\.xml$")
        for entry in sorted(alto_dir.iterdir()):
            match = pattern.match(entry.name)
            if not match:
                raise FileFormatError(
                    f"ALTO file {entry.name!r} not named {doc_id}_p<page>.xml",
                    path=str(entry))
            alto_pages.append((int(match.group(1)), entry.read_text("utf-8")))
    alto_pages.sort(key=lambda pair: pair[0])
    return RawDocument(doc_id, text, ann, metadata, tuple(alto_pages))


def _remap_span(span: Span, offmap) -> Span:
    return Span(offmap[span.start], offmap[span.end])


def process_document(raw: RawDocument, vocabulary=None,
                     lexicon: Optional[EntityLexicon] = None) -> AnnotatedDocument:
    """Run the full ingestion sequence on one raw document."""
    vocabulary = vocabulary if vocabulary is not None else default_vocabulary()
    text, offmap = repair_hyphenation(raw.text, vocabulary)
    frag = parse_standoff(raw.text, raw.ann)
    zones = tuple(
        ZoneAnnotation(z.label, _remap_span(z.span, offmap), z.page_number)
        for z in frag.zones)
    entities = []
    for e in frag.entities:
        span = _remap_span(e.span, offmap)
        entities.append(EntityAnnotation(
            e.entity_type, span, text[span.start:span.end],
            corrected=e.corrected, normalized=e.normalized,
            provenance=e.provenance, unnormalizable=e.unnormalizable,
            relative=e.relative))
    doc = AnnotatedDocument(metadata=raw.metadata, text=text,
                            zones=zones, entities=tuple(entities))
    doc, _ = apply_corrections(doc)
    tokens, sentences = analyze_text(doc.text)
    doc = doc.replace(tokens=tuple(tokens), sentences=tuple(sentences))
    doc = annotate_entities(doc, lexicon)

    if raw.alto_pages:
        boxes = []
        for page, xml in raw.alto_pages:
            boxes.extend(parse_alto(xml, page))
        doc = doc.replace(word_boxes=tuple(align_text_to_alto(doc.text, boxes)))
    return doc


def list_document_dirs(root) -> List[Path]:
    path = Path(root)
    if not path.is_dir():
        raise FileFormatError("corpus root is not a directory", path=str(path))
    return sorted(p for p in path.iterdir() if p.is_dir())


def load_corpus(root, vocabulary=None,
                lexicon: Optional[EntityLexicon] = None) -> List[AnnotatedDocument]:
    """Process every document directory under root, ordered by doc id."""
    return [process_document(read_raw_document(p), vocabulary, lexicon)
            for p in list_document_dirs(root)]


def write_document(doc: AnnotatedDocument, directory) -> None:
    """Write text.txt, meta.json and ann.ann for a processed document."""
    path = Path(directory)
    path.mkdir(parents=True, exist_ok=True)
    (path / "text.txt").write_text(doc.text, "utf-8")
    meta = {
        "doc_id": doc.metadata.doc_id,
        "title": doc.metadata.title,
        "publication_year": doc.metadata.publication_year,
        "main_location": doc.metadata.main_location,
        "language": doc.metadata.language,
    }
    (path / "meta.json").write_text(
        json.dumps(meta, indent=2, sort_keys=True, ensure_ascii=False) + "\n",
        "utf-8")
    (path / "ann.ann").write_text(emit_standoff(doc), "utf-8")
