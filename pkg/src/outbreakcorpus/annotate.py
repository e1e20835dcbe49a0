"""Automatic annotation pass: lexicon + temporal + measurement entities,
merged with any existing (manual) annotations, then a normalization fill-in
that also covers corrected forms."""

from __future__ import annotations

from dataclasses import replace

from . import resources
from .lexicon import EntityLexicon, match_lexicon_entities
from .measurements import normalize_measurement_string, recognize_measurements
from .model import AnnotatedDocument, EntityAnnotation, entity_sort_key
from .pipeline import analyze_text
from .temporal import normalize_temporal_string, recognize_temporal

TEMPORAL_TYPES = frozenset({"date", "date-range", "time", "duration"})
MEASURE_TYPES = frozenset({"distance", "percent"})


def merge_entities(existing, candidates) -> list[EntityAnnotation]:
    """Resolve span conflicts: manual beats automatic, then longer span,
    then earlier start. Losers of a conflict are dropped entirely."""
    pool = sorted(
        list(existing) + list(candidates),
        key=lambda e: (0 if e.provenance == "manual" else 1,
                       -(e.span.end - e.span.start),
                       e.span.start, e.entity_type))
    kept: list[EntityAnnotation] = []
    for e in pool:
        if any(e.span.overlaps(k.span) for k in kept):
            continue
        kept.append(e)
    kept.sort(key=entity_sort_key)
    return kept


def fill_normalization(e: EntityAnnotation, pub_year: int) -> EntityAnnotation:
    """Normalize from the corrected form when present, else the surface.

    Entities of normally-normalized types that no grammar rule can parse get
    the unnormalizable flag instead of a value."""
    if e.normalized is not None or e.unnormalizable:
        return e
    source = e.corrected if e.corrected is not None else e.surface
    if e.entity_type in TEMPORAL_TYPES:
        parsed = normalize_temporal_string(source, pub_year)
        if parsed is not None:
            _etype, normalized, unnorm, relative = parsed
            return replace(e, normalized=normalized, unnormalizable=unnorm,
                           relative=relative or e.relative)
        if e.entity_type != "time":  # time is not normalization-mandatory
            return replace(e, unnormalizable=True)
        return e
    if e.entity_type in MEASURE_TYPES:
        parsed = normalize_measurement_string(source)
        if parsed is not None:
            return replace(e, normalized=parsed[1])
        return replace(e, unnormalizable=True)
    return e


def annotate_entities(doc: AnnotatedDocument,
                      lexicon: EntityLexicon | None = None) -> AnnotatedDocument:
    """Run all recognizers over the document and merge results into it.

    Ensures tokens/sentences exist (running the text pipeline if needed);
    existing entities (typically manual ones from an annotation file) take
    precedence over automatic candidates on any span conflict."""
    if lexicon is None:
        lexicon = resources.default_lexicon()
    if not doc.tokens:
        tokens, sentences = analyze_text(doc.text)
        doc = doc.replace(tokens=tuple(tokens), sentences=tuple(sentences))
    pub_year = doc.metadata.publication_year
    candidates = match_lexicon_entities(list(doc.tokens), lexicon, doc.text)
    candidates += recognize_temporal(list(doc.tokens), pub_year, doc.text)
    candidates += recognize_measurements(list(doc.tokens), doc.text)
    merged = merge_entities(doc.entities, candidates)
    merged = [fill_normalization(e, pub_year) for e in merged]
    return doc.replace(entities=tuple(merged))
