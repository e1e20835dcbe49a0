"""Standoff annotation files (.ann): parse, emit, apply corrections.

Line formats handled:
  T<n><TAB><label> <start> <end><TAB><covered text>
  A<n><TAB><Name> T<k> [<value>]
  #<n><TAB>AnnotatorNotes T<k><TAB><note text>

Zone labels and entity types share the T namespace and are told apart by the
label. Attribute names: Page (zone page number), Provenance (automatic;
absent means manual), Norm (encoded normalized value), Unnormalizable,
Relative. A note holds the spelling-corrected form of the entity it
references. Offsets count characters, end-exclusive. The covered-text field
is informational on parse (the surface is re-read from the text), with
newlines flattened to spaces as the format requires single-line records.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import CorpusError, CorrectionOverlapError, FileFormatError
from .model import (
    ENTITY_TYPES,
    ZONE_LABELS,
    AnnotatedDocument,
    EntityAnnotation,
    Span,
    ZoneAnnotation,
    encode_normalized,
    entity_sort_key,
    parse_normalized,
    zone_sort_key,
)


@dataclass(frozen=True)
class StandoffFragment:
    """Zones and entities recovered from one .ann file, canonically ordered."""

    zones: tuple[ZoneAnnotation, ...]
    entities: tuple[EntityAnnotation, ...]


def _flatten(s: str) -> str:
    return s.replace("\n", " ").replace("\t", " ")


def emit_standoff(doc: AnnotatedDocument) -> str:
    """Serialize zones and entities; inverse of parse_standoff."""
    lines: list[str] = []
    tid = aid = nid = 0

    def attr(text: str):
        nonlocal aid
        aid += 1
        lines.append(f"A{aid}\t{text}")

    for z in doc.zones:
        tid += 1
        covered = _flatten(doc.text[z.span.start:z.span.end])
        lines.append(f"T{tid}\t{z.label} {z.span.start} {z.span.end}\t{covered}")
        if z.page_number is not None:
            attr(f"Page T{tid} {z.page_number}")
    for e in doc.entities:
        tid += 1
        covered = _flatten(doc.text[e.span.start:e.span.end])
        lines.append(f"T{tid}\t{e.entity_type} {e.span.start} {e.span.end}\t{covered}")
        if e.provenance == "automatic":
            attr(f"Provenance T{tid} automatic")
        if e.normalized is not None:
            attr(f"Norm T{tid} {encode_normalized(e.normalized)}")
        if e.unnormalizable:
            attr(f"Unnormalizable T{tid}")
        if e.relative:
            attr(f"Relative T{tid}")
        if e.corrected is not None:
            if "\n" in e.corrected or "\t" in e.corrected:
                raise CorpusError("corrected form cannot contain tab or newline")
            nid += 1
            lines.append(f"#{nid}\tAnnotatorNotes T{tid}\t{e.corrected}")
    return "\n".join(lines) + ("\n" if lines else "")


def parse_standoff(text: str, ann_content: str) -> StandoffFragment:
    """Parse an .ann file against its text; raises FileFormatError on
    malformed lines, unknown labels, out-of-bounds spans, or dangling
    references."""
    zones: dict[str, dict] = {}
    entities: dict[str, dict] = {}
    deferred: list[tuple[int, str, list[str]]] = []  # attribute/note lines

    for lineno, line in enumerate(ann_content.splitlines(), 1):
        if not line.strip():
            continue
        fields = line.split("\t")
        head = fields[0]
        if head.startswith("T"):
            if len(fields) < 2:
                raise FileFormatError("T line needs a tab-separated body", line=lineno)
            body = fields[1].split(" ")
            if len(body) != 3:
                raise FileFormatError(
                    "expected '<label> <start> <end>' (discontinuous spans unsupported)",
                    line=lineno)
            label, start_s, end_s = body
            try:
                start, end = int(start_s), int(end_s)
            except ValueError:
                raise FileFormatError(f"non-integer offsets {start_s!r} {end_s!r}", line=lineno)
            if not 0 <= start < end <= len(text):
                raise FileFormatError(
                    f"span ({start}, {end}) out of bounds for text of length {len(text)}",
                    line=lineno)
            if label in ZONE_LABELS:
                zones[head] = {"label": label, "span": Span(start, end), "page": None}
            elif label in ENTITY_TYPES:
                entities[head] = {
                    "type": label, "span": Span(start, end), "corrected": None,
                    "normalized": None, "provenance": "manual",
                    "unnormalizable": False, "relative": False,
                }
            else:
                raise FileFormatError(f"unknown label {label!r}", line=lineno)
        elif head.startswith("A") or head.startswith("#"):
            deferred.append((lineno, head, fields))
        else:
            raise FileFormatError(f"unrecognized line kind {head!r}", line=lineno)

    for lineno, head, fields in deferred:
        if head.startswith("A"):
            if len(fields) < 2:
                raise FileFormatError("attribute line needs a body", line=lineno)
            parts = fields[1].split(" ")
            if len(parts) < 2:
                raise FileFormatError("attribute needs a name and a target", line=lineno)
            name, ref = parts[0], parts[1]
            value = " ".join(parts[2:]) if len(parts) > 2 else None
            if name == "Page":
                if ref not in zones:
                    raise FileFormatError(f"Page attribute references missing {ref}", line=lineno)
                if value is None or not value.lstrip("-").isdigit():
                    raise FileFormatError(f"bad page number {value!r}", line=lineno)
                zones[ref]["page"] = int(value)
                continue
            if ref not in entities:
                raise FileFormatError(f"attribute references missing {ref}", line=lineno)
            ent = entities[ref]
            if name == "Provenance":
                if value not in ("automatic", "manual"):
                    raise FileFormatError(f"bad provenance {value!r}", line=lineno)
                ent["provenance"] = value
            elif name == "Norm":
                if value is None:
                    raise FileFormatError("Norm attribute needs a value", line=lineno)
                try:
                    ent["normalized"] = parse_normalized(value)
                except (CorpusError, ValueError) as exc:
                    raise FileFormatError(f"bad Norm value {value!r}: {exc}", line=lineno)
            elif name == "Unnormalizable":
                ent["unnormalizable"] = True
            elif name == "Relative":
                ent["relative"] = True
            else:
                raise FileFormatError(f"unknown attribute {name!r}", line=lineno)
        else:  # note line
            if len(fields) < 3:
                raise FileFormatError("note line needs kind, target, and text", line=lineno)
            parts = fields[1].split(" ")
            if len(parts) != 2 or parts[0] != "AnnotatorNotes":
                raise FileFormatError(f"unsupported note kind {fields[1]!r}", line=lineno)
            ref = parts[1]
            if ref not in entities:
                raise FileFormatError(f"note references missing {ref}", line=lineno)
            entities[ref]["corrected"] = fields[2]

    zone_objs = sorted(
        (ZoneAnnotation(z["label"], z["span"], z["page"]) for z in zones.values()),
        key=zone_sort_key)
    entity_objs = sorted(
        (EntityAnnotation(e["type"], e["span"], text[e["span"].start:e["span"].end],
                          corrected=e["corrected"], normalized=e["normalized"],
                          provenance=e["provenance"], unnormalizable=e["unnormalizable"],
                          relative=e["relative"])
         for e in entities.values()),
        key=entity_sort_key)
    return StandoffFragment(tuple(zone_objs), tuple(entity_objs))


def apply_corrections(doc: AnnotatedDocument):
    """Substitute each corrected surface into the text and remap everything.

    Returns (new document, offset map) where the map has length
    len(old_text)+1 and is total and monotone. Overlapping corrected spans
    are an error. Offsets strictly inside a replaced region clamp to the
    replacement; an annotation that collapses to zero width under the remap
    is dropped. Applied corrections clear their corrected field (the surface
    now is the corrected form) and tokens/sentences are cleared for
    recomputation."""
    corrections = sorted(
        ((e.span, e.corrected) for e in doc.entities if e.corrected is not None),
        key=lambda t: (t[0].start, t[0].end))
    for (a, _), (b, _) in zip(corrections, corrections[1:]):
        if a.overlaps(b):
            raise CorrectionOverlapError(
                f"corrections at ({a.start},{a.end}) and ({b.start},{b.end}) overlap")

    old = doc.text
    out: list[str] = []
    offmap = [0] * (len(old) + 1)
    pos = 0
    new = 0
    for span, replacement in corrections:
        while pos < span.start:
            offmap[pos] = new
            out.append(old[pos])
            new += 1
            pos += 1
        for k in range(len(span)):
            offmap[pos + k] = new + min(k, len(replacement))
        out.append(replacement)
        new += len(replacement)
        pos = span.end
    while pos < len(old):
        offmap[pos] = new
        out.append(old[pos])
        new += 1
        pos += 1
    offmap[len(old)] = new
    new_text = "".join(out)

    corrected_spans = {(s.start, s.end) for s, _ in corrections}

    def remap(span: Span) -> Span | None:
        a, b = offmap[span.start], offmap[span.end]
        return Span(a, b) if a < b else None

    new_zones = []
    for z in doc.zones:
        span = remap(z.span)
        if span is not None:
            new_zones.append(replace(z, span=span))
    new_entities = []
    for e in doc.entities:
        span = remap(e.span)
        if span is None:
            continue
        surface = new_text[span.start:span.end]
        corrected = None if (e.span.start, e.span.end) in corrected_spans else e.corrected
        new_entities.append(replace(e, span=span, surface=surface, corrected=corrected))
    new_boxes = []
    for b in doc.word_boxes:
        if b.char_span is not None:
            new_boxes.append(replace(b, char_span=remap(b.char_span)))
        else:
            new_boxes.append(b)

    new_doc = doc.replace(text=new_text, zones=tuple(new_zones),
                          entities=tuple(new_entities), word_boxes=tuple(new_boxes),
                          tokens=(), sentences=())
    return new_doc, offmap


def validate_zones(zones, schema=ZONE_LABELS):
    """Zone-structure check usable without a full document."""
    from .model import Violation, validate_zone_structure
    out: list[Violation] = []
    validate_zone_structure(zones, out, schema)
    return out
