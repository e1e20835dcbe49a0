"""Core domain types: spans, zones, entities, normalized values, documents.

Offsets are always 0-based character offsets into the document's corrected
text, end-exclusive. Every type here is immutable after construction and can
be shared freely across threads.
"""

from __future__ import annotations

import calendar
import datetime as _dt
from dataclasses import dataclass, field

from .errors import CorpusError

# Narrative zone labels. The schema's section zones plus the page-apparatus
# labels (footnote, header-footer, table) used to exclude text from search.
ZONE_LABELS = frozenset({
    "title-matter", "preface", "content-page", "introduction",
    "disease-history", "outbreak-history", "local-conditions", "causes",
    "measures", "clinical-appearances", "laboratory", "treatment", "cases",
    "statistics", "epizootics", "appendix", "conclusion",
    "footnote", "header-footer", "table",
})

# Zone labels that may appear anywhere, including straddling other zones
# (page furniture breaks the narrative flow mid-zone).
FLOATING_ZONE_LABELS = frozenset({"header-footer", "footnote"})

ENTITY_TYPES = frozenset({
    "person", "location", "geographic-feature", "plague-ontology-term",
    "date", "date-range", "time", "duration", "distance", "population",
    "percent",
})

# Entity types whose annotations must carry a normalized value or an
# explicit unnormalizable flag.
NORMALIZED_TYPES = frozenset({"date", "date-range", "duration", "distance", "percent"})

POS_TAGS = frozenset({"NOUN", "VERB", "ADJ", "ADV", "PRON", "FUNC", "NUM", "PUNCT", "OTHER"})

PROVENANCES = frozenset({"automatic", "manual"})


@dataclass(frozen=True, order=True)
class Span:
    """Character interval [start, end) in corrected-text coordinates."""

    start: int
    end: int

    def __post_init__(self):
        if not (0 <= self.start < self.end):
            raise ValueError(f"invalid span ({self.start}, {self.end})")

    def __len__(self) -> int:
        return self.end - self.start

    def contains(self, other: "Span") -> bool:
        return self.start <= other.start and other.end <= self.end

    def overlaps(self, other: "Span") -> bool:
        return self.start < other.end and other.start < self.end


# Relations returned by span_relation.
DISJOINT = "disjoint"
A_CONTAINS_B = "a-contains-b"
B_CONTAINS_A = "b-contains-a"
EQUAL = "equal"
PARTIAL_OVERLAP = "partial-overlap"


def span_relation(a: Span, b: Span) -> str:
    """Classify the interval relation between two spans.

    Exactly one of {disjoint, a-contains-b, b-contains-a, equal,
    partial-overlap} is returned; containment is proper (equal spans are
    "equal", not containment).
    """
    if a == b:
        return EQUAL
    if not a.overlaps(b):
        return DISJOINT
    if a.contains(b):
        return A_CONTAINS_B
    if b.contains(a):
        return B_CONTAINS_A
    return PARTIAL_OVERLAP


# --------------------------------------------------------------------------
# Normalized values


@dataclass(frozen=True)
class CalendarPoint:
    """A calendar date at year, month, or day granularity."""

    year: int
    month: int | None = None
    day: int | None = None

    @property
    def granularity(self) -> str:
        if self.day is not None:
            return "day"
        if self.month is not None:
            return "month"
        return "year"

    def first_day(self) -> _dt.date:
        return _dt.date(self.year, self.month or 1, self.day or 1)

    def last_day(self) -> _dt.date:
        if self.day is not None:
            return _dt.date(self.year, self.month, self.day)
        if self.month is not None:
            return _dt.date(self.year, self.month, calendar.monthrange(self.year, self.month)[1])
        return _dt.date(self.year, 12, 31)


@dataclass(frozen=True)
class CalendarInterval:
    """Date range; an open side has a None endpoint and its flag set."""

    start: CalendarPoint | None
    end: CalendarPoint | None
    open_start: bool = False
    open_end: bool = False


@dataclass(frozen=True)
class ClockTime:
    hour: int
    minute: int


@dataclass(frozen=True)
class Duration:
    magnitude: int
    unit: str  # hour | day | week | month | year


@dataclass(frozen=True)
class Length:
    meters: float


@dataclass(frozen=True)
class Percentage:
    value: float


NormalizedValue = (
    CalendarPoint | CalendarInterval | ClockTime | Duration | Length | Percentage
)

_DURATION_UNITS = {"hour": "TH", "day": "D", "week": "W", "month": "M", "year": "Y"}
_DURATION_CODES = {"TH": "hour", "D": "day", "W": "week", "M": "month", "Y": "year"}


def encode_normalized(value: NormalizedValue) -> str:
    """Encode a normalized value as a single whitespace-free token.

    Calendar points use ISO prefixes (1897, 1897-02, 1897-02-04); intervals
    join two points with ".." and write "open" for an open side; durations
    use ISO-8601 duration syntax; lengths and percentages carry their unit.
    """
    if isinstance(value, CalendarPoint):
        out = f"{value.year:04d}"
        if value.month is not None:
            out += f"-{value.month:02d}"
        if value.day is not None:
            out += f"-{value.day:02d}"
        return out
    if isinstance(value, CalendarInterval):
        left = "open" if value.open_start else encode_normalized(value.start)
        right = "open" if value.open_end else encode_normalized(value.end)
        return f"{left}..{right}"
    if isinstance(value, ClockTime):
        return f"{value.hour:02d}:{value.minute:02d}"
    if isinstance(value, Duration):
        code = _DURATION_UNITS[value.unit]
        return f"P{code[:-1]}{value.magnitude}{code[-1]}" if code.startswith("T") else f"P{value.magnitude}{code}"
    if isinstance(value, Length):
        return f"{value.meters!r}m"
    if isinstance(value, Percentage):
        return f"{value.value!r}%"
    raise TypeError(f"not a normalized value: {value!r}")


def _parse_point(token: str) -> CalendarPoint:
    parts = token.split("-")
    if not 1 <= len(parts) <= 3 or not all(p.isdigit() for p in parts):
        raise CorpusError(f"bad calendar point {token!r}")
    nums = [int(p) for p in parts]
    return CalendarPoint(nums[0], nums[1] if len(nums) > 1 else None,
                         nums[2] if len(nums) > 2 else None)


def parse_normalized(token: str) -> NormalizedValue:
    """Inverse of :func:`encode_normalized`."""
    if ".." in token:
        left, right = token.split("..", 1)
        start = None if left == "open" else _parse_point(left)
        end = None if right == "open" else _parse_point(right)
        return CalendarInterval(start, end, open_start=start is None, open_end=end is None)
    if token.endswith("%"):
        return Percentage(float(token[:-1]))
    if token.endswith("m") and token[0].isdigit():
        return Length(float(token[:-1]))
    if token.startswith("P"):
        body = token[1:]
        code = "TH" if body.startswith("T") else body[-1]
        digits = body[1:-1] if body.startswith("T") else body[:-1]
        if code not in _DURATION_CODES or not digits.isdigit():
            raise CorpusError(f"bad duration {token!r}")
        return Duration(int(digits), _DURATION_CODES[code])
    if ":" in token:
        hh, mm = token.split(":", 1)
        return ClockTime(int(hh), int(mm))
    return _parse_point(token)


# --------------------------------------------------------------------------
# Annotations


@dataclass(frozen=True)
class DocumentMetadata:
    doc_id: str
    title: str
    publication_year: int
    main_location: str | None = None
    language: str = "en"


@dataclass(frozen=True)
class ZoneAnnotation:
    """A labeled narrative segment; zones may nest but not partially overlap."""

    label: str
    span: Span
    page_number: int | None = None


@dataclass(frozen=True)
class EntityAnnotation:
    """Typed mention with optional spelling correction and normalization.

    ``surface`` must equal the document text at ``span``. ``corrected`` holds
    the spelling-corrected form when the surface contains an OCR error.
    ``unnormalizable`` marks mentions of normally-normalized types that carry
    no value (vague durations, relative dates); ``relative`` additionally
    marks deictic dates ("next day") that would need an anchoring procedure.
    """

    entity_type: str
    span: Span
    surface: str
    corrected: str | None = None
    normalized: NormalizedValue | None = None
    provenance: str = "automatic"
    unnormalizable: bool = False
    relative: bool = False


@dataclass(frozen=True)
class PageWordBox:
    """A word's pixel box on a page image, from word-level ALTO output."""

    page: int
    text: str
    x: int
    y: int
    w: int
    h: int
    char_span: Span | None = None


@dataclass(frozen=True)
class Token:
    span: Span
    surface: str
    lower: str
    pos: str | None = None


@dataclass(frozen=True)
class Sentence:
    span: Span
    token_start: int
    token_end: int  # exclusive index into the token list


def zone_sort_key(z: ZoneAnnotation):
    return (z.span.start, -z.span.end, z.label, z.page_number if z.page_number is not None else -1)


def entity_sort_key(e: EntityAnnotation):
    return (e.span.start, -e.span.end, e.entity_type, e.provenance,
            e.corrected or "", encode_normalized(e.normalized) if e.normalized else "",
            e.unnormalizable, e.relative)


@dataclass(frozen=True)
class AnnotatedDocument:
    """A report's corrected text plus everything we know about it.

    Zones and entities are kept in a canonical order (start asc, end desc,
    then label/type) so that equality and serialization are stable regardless
    of the order annotations were produced in.
    """

    metadata: DocumentMetadata
    text: str
    zones: tuple[ZoneAnnotation, ...] = ()
    entities: tuple[EntityAnnotation, ...] = ()
    word_boxes: tuple[PageWordBox, ...] = ()
    tokens: tuple[Token, ...] = ()
    sentences: tuple[Sentence, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "zones", tuple(sorted(self.zones, key=zone_sort_key)))
        object.__setattr__(self, "entities", tuple(sorted(self.entities, key=entity_sort_key)))
        object.__setattr__(self, "word_boxes", tuple(self.word_boxes))
        object.__setattr__(self, "tokens", tuple(self.tokens))
        object.__setattr__(self, "sentences", tuple(self.sentences))

    def replace(self, **changes) -> "AnnotatedDocument":
        from dataclasses import replace as _replace
        return _replace(self, **changes)


# --------------------------------------------------------------------------
# Validation


@dataclass(frozen=True)
class Violation:
    """One invariant violation; validation reports these instead of raising."""

    code: str
    message: str

    def __str__(self) -> str:
        return f"{self.code}: {self.message}"


def _check_normalized(prefix: str, value: NormalizedValue, out: list[Violation]) -> None:
    def point_ok(p: CalendarPoint) -> bool:
        if p.month is not None and not 1 <= p.month <= 12:
            out.append(Violation("bad-month", f"{prefix}: month {p.month} out of range"))
            return False
        if p.day is not None:
            if p.month is None:
                out.append(Violation("bad-granularity", f"{prefix}: day without month"))
                return False
            last = calendar.monthrange(p.year, p.month)[1]
            if not 1 <= p.day <= last:
                out.append(Violation("bad-day", f"{prefix}: day {p.day} invalid for {p.year}-{p.month:02d}"))
                return False
        return True

    if isinstance(value, CalendarPoint):
        point_ok(value)
    elif isinstance(value, CalendarInterval):
        ok = True
        if value.open_start != (value.start is None) or value.open_end != (value.end is None):
            out.append(Violation("bad-interval", f"{prefix}: open flags disagree with endpoints"))
            ok = False
        for p in (value.start, value.end):
            if p is not None:
                ok = point_ok(p) and ok
        if ok and value.start is not None and value.end is not None:
            if value.start.first_day() > value.end.first_day():
                out.append(Violation("interval-order", f"{prefix}: interval start after end"))
    elif isinstance(value, ClockTime):
        if not (0 <= value.hour <= 23 and 0 <= value.minute <= 59):
            out.append(Violation("bad-time", f"{prefix}: invalid clock time"))
    elif isinstance(value, Duration):
        if value.unit not in _DURATION_UNITS or value.magnitude <= 0:
            out.append(Violation("bad-duration", f"{prefix}: invalid duration"))
    elif isinstance(value, Length):
        if not value.meters > 0:
            out.append(Violation("bad-length", f"{prefix}: meters must be > 0"))


def validate_zone_structure(zones, out: list[Violation], schema=ZONE_LABELS) -> None:
    """Flag unknown labels, missing table pages, and partial zone overlaps.

    Header-footer and footnote zones interrupt the narrative mid-flow, so
    pairs involving them are exempt from the no-partial-overlap rule.
    """
    zones = sorted(zones, key=zone_sort_key)
    for z in zones:
        if z.label not in schema:
            out.append(Violation("unknown-zone-label", f"zone label {z.label!r} not in schema"))
        if z.label == "table" and z.page_number is None:
            out.append(Violation("table-without-page", f"table zone at {z.span.start} lacks a page number"))
    for i, a in enumerate(zones):
        for b in zones[i + 1:]:
            if b.span.start >= a.span.end:
                break
            if a.label in FLOATING_ZONE_LABELS or b.label in FLOATING_ZONE_LABELS:
                continue
            if span_relation(a.span, b.span) == PARTIAL_OVERLAP:
                out.append(Violation(
                    "zone-partial-overlap",
                    f"zones {a.label}@({a.span.start},{a.span.end}) and "
                    f"{b.label}@({b.span.start},{b.span.end}) partially overlap"))


def validate_document(doc: AnnotatedDocument) -> list[Violation]:
    """Check every type invariant; returns an empty list iff the document is valid.

    Idempotent and independent of annotation list order (annotations are held
    in canonical order by construction).
    """
    out: list[Violation] = []
    n = len(doc.text)

    if not doc.metadata.doc_id:
        out.append(Violation("empty-doc-id", "doc_id must be nonempty"))
    if not 1850 <= doc.metadata.publication_year <= 1960:
        out.append(Violation("year-out-of-range",
                             f"publication_year {doc.metadata.publication_year} outside 1850-1960"))

    for z in doc.zones:
        if z.span.end > n:
            out.append(Violation("span-out-of-bounds",
                                 f"zone {z.label} span ({z.span.start},{z.span.end}) exceeds text length {n}"))
    validate_zone_structure(doc.zones, out)

    for e in doc.entities:
        where = f"entity {e.entity_type}@({e.span.start},{e.span.end})"
        if e.entity_type not in ENTITY_TYPES:
            out.append(Violation("unknown-entity-type", f"{where}: type not in schema"))
        if e.span.end > n:
            out.append(Violation("span-out-of-bounds", f"{where}: span exceeds text length {n}"))
        elif doc.text[e.span.start:e.span.end] != e.surface:
            out.append(Violation("surface-mismatch", f"{where}: surface does not equal text at span"))
        if e.corrected is not None and e.corrected == e.surface:
            out.append(Violation("pointless-correction", f"{where}: corrected form equals surface"))
        if e.provenance not in PROVENANCES:
            out.append(Violation("bad-provenance", f"{where}: provenance {e.provenance!r}"))
        if e.entity_type in NORMALIZED_TYPES and e.normalized is None and not e.unnormalizable:
            out.append(Violation("missing-normalization",
                                 f"{where}: needs a normalized value or the unnormalizable flag"))
        if e.normalized is not None:
            _check_normalized(where, e.normalized, out)

    prev_end = -1
    for b in doc.word_boxes:
        if b.w <= 0 or b.h <= 0:
            out.append(Violation("bad-box", f"word box {b.text!r} on page {b.page} has non-positive size"))
        if b.char_span is not None:
            if b.char_span.start < prev_end:
                out.append(Violation("box-order", f"word box {b.text!r} char_span out of order"))
            prev_end = b.char_span.end

    if doc.sentences:
        bounds = [(s.span.start, s.span.end) for s in doc.sentences]
        for e in doc.entities:
            if e.span.end > n:
                continue
            if not any(s <= e.span.start and e.span.end <= t for s, t in bounds):
                out.append(Violation("entity-crosses-sentence",
                                     f"entity {e.entity_type}@({e.span.start},{e.span.end}) "
                                     "crosses a sentence boundary"))

    out.sort(key=lambda v: (v.code, v.message))
    return out
