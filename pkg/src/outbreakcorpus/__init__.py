"""Tools for turning OCR'd outbreak reports into an annotated, searchable corpus."""

from .model import (
    AnnotatedDocument,
    CalendarInterval,
    CalendarPoint,
    ClockTime,
    DocumentMetadata,
    Duration,
    EntityAnnotation,
    Length,
    PageWordBox,
    Percentage,
    Sentence,
    Span,
    Token,
    ZoneAnnotation,
    validate_document,
)

__version__ = "0.1.0"

__all__ = [
    "AnnotatedDocument",
    "CalendarInterval",
    "CalendarPoint",
    "ClockTime",
    "DocumentMetadata",
    "Duration",
    "EntityAnnotation",
    "Length",
    "PageWordBox",
    "Percentage",
    "Sentence",
    "Span",
    "Token",
    "ZoneAnnotation",
    "validate_document",
    "__version__",
]
