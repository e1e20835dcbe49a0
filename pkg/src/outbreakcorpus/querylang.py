"""Query language for corpus search.

Surface syntax: bare terms, "quoted phrases", term~N fuzzy matching,
field filters (zone:, type:, year:, date:, geo:), parentheses and
AND / OR / NOT operators. Adjacent clauses combine with an implicit AND.

  plague~1 zone:causes
  "he thought" AND year:[1894 TO 1896]
  date:[1896-09 TO 1897-02] geo:[18.0,72.0 TO 20.0,74.0]
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple, Union

from .errors import QuerySyntaxError
from .model import (
    ENTITY_TYPES,
    ZONE_LABELS,
    CalendarInterval,
    CalendarPoint,
    parse_normalized,
)
from .pipeline import tokenize


@dataclass(frozen=True)
class Term:
    text: str


@dataclass(frozen=True)
class Phrase:
    # words paired with their token offsets within the phrase, so that
    # punctuation inside the quoted text still constrains adjacency
    words: Tuple[str, ...]
    offsets: Tuple[int, ...]


@dataclass(frozen=True)
class Fuzzy:
    text: str
    max_edits: int


@dataclass(frozen=True)
class ZoneFilter:
    label: str


@dataclass(frozen=True)
class TypeFilter:
    entity_type: str


@dataclass(frozen=True)
class YearRange:
    start: int
    end: int


@dataclass(frozen=True)
class DateOverlap:
    interval: CalendarInterval


@dataclass(frozen=True)
class GeoBox:
    min_lat: float
    min_lon: float
    max_lat: float
    max_lon: float


@dataclass(frozen=True)
class And:
    items: Tuple["Query", ...]


@dataclass(frozen=True)
class Or:
    items: Tuple["Query", ...]


@dataclass(frozen=True)
class Not:
    item: "Query"


Query = Union[Term, Phrase, Fuzzy, ZoneFilter, TypeFilter, YearRange,
              DateOverlap, GeoBox, And, Or, Not]

_FIELDS = ("zone", "type", "year", "date", "geo")
_WORD_STOPPERS = set(' \t\n\r()"~')


@dataclass(frozen=True)
class _Tok:
    kind: str  # ( ) WORD PHRASE TILDE
    value: str
    pos: int


def _lex(text: str):
    toks = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c in "()":
            toks.append(_Tok(c, c, i))
            i += 1
            continue
        if c == '"':
            end = text.find('"', i + 1)
            if end < 0:
                raise QuerySyntaxError("unterminated phrase", i)
            toks.append(_Tok("PHRASE", text[i + 1:end], i))
            i = end + 1
            continue
        if c == "~":
            start = i
            i += 1
            digits = ""
            while i < n and text[i].isdigit():
                digits += text[i]
                i += 1
            toks.append(_Tok("TILDE", digits, start))
            continue
        start = i
        while i < n and text[i] not in _WORD_STOPPERS:
            if text[i] == ":" and i + 1 < n and text[i + 1] == "[":
                close = text.find("]", i + 1)
                if close < 0:
                    raise QuerySyntaxError("unterminated range", i + 1)
                i = close + 1
                break
            i += 1
        toks.append(_Tok("WORD", text[start:i], start))
    return toks


def _parse_year_value(value: str, pos: int) -> YearRange:
    if value.startswith("[") and value.endswith("]"):
        inner = value[1:-1]
        parts = inner.split(" TO ")
        if len(parts) != 2:
            raise QuerySyntaxError("year range must be [start TO end]", pos)
        lo, hi = (p.strip() for p in parts)
    else:
        lo = hi = value
    if not (lo.isdigit() and hi.isdigit()):
        raise QuerySyntaxError("year bounds must be integers", pos)
    start, end = int(lo), int(hi)
    if start > end:
        raise QuerySyntaxError("year range start exceeds end", pos)
    return YearRange(start, end)


def _parse_date_value(value: str, pos: int) -> DateOverlap:
    if not (value.startswith("[") and value.endswith("]")):
        raise QuerySyntaxError("date filter must be [start TO end]", pos)
    parts = value[1:-1].split(" TO ")
    if len(parts) != 2:
        raise QuerySyntaxError("date filter must be [start TO end]", pos)
    points = []
    for part in parts:
        try:
            parsed = parse_normalized(part.strip())
        except Exception:
            parsed = None
        if not isinstance(parsed, CalendarPoint):
            raise QuerySyntaxError(f"bad date bound: {part.strip()!r}", pos)
        points.append(parsed)
    if points[0].first_day() > points[1].last_day():
        raise QuerySyntaxError("date range start exceeds end", pos)
    return DateOverlap(CalendarInterval(points[0], points[1]))


def _parse_geo_value(value: str, pos: int) -> GeoBox:
    if not (value.startswith("[") and value.endswith("]")):
        raise QuerySyntaxError("geo filter must be [lat,lon TO lat,lon]", pos)
    parts = value[1:-1].split(" TO ")
    if len(parts) != 2:
        raise QuerySyntaxError("geo filter must be [lat,lon TO lat,lon]", pos)
    corners = []
    for part in parts:
        pieces = part.strip().split(",")
        if len(pieces) != 2:
            raise QuerySyntaxError(f"bad geo corner: {part.strip()!r}", pos)
        try:
            corners.append((float(pieces[0]), float(pieces[1])))
        except ValueError:
            raise QuerySyntaxError(f"bad geo corner: {part.strip()!r}", pos) from None
    (lat1, lon1), (lat2, lon2) = corners
    box = GeoBox(min(lat1, lat2), min(lon1, lon2), max(lat1, lat2), max(lon1, lon2))
    if not (-90 <= box.min_lat <= box.max_lat <= 90):
        raise QuerySyntaxError("latitude out of range", pos)
    if not (-180 <= box.min_lon <= box.max_lon <= 180):
        raise QuerySyntaxError("longitude out of range", pos)
    return box


def _parse_filter(word: str, pos: int) -> Query:
    field, _, value = word.partition(":")
    if not value:
        raise QuerySyntaxError(f"missing value for filter {field!r}", pos)
    if field == "zone":
        if value not in ZONE_LABELS:
            raise QuerySyntaxError(f"unknown zone label: {value!r}", pos)
        return ZoneFilter(value)
    if field == "type":
        if value not in ENTITY_TYPES:
            raise QuerySyntaxError(f"unknown entity type: {value!r}", pos)
        return TypeFilter(value)
    if field == "year":
        return _parse_year_value(value, pos)
    if field == "date":
        return _parse_date_value(value, pos)
    if field == "geo":
        return _parse_geo_value(value, pos)
    raise QuerySyntaxError(f"unknown filter field: {field!r}", pos)


def _phrase_node(content: str, pos: int) -> Phrase:
    words = []
    offsets = []
    for offset, tok in enumerate(tokenize(content)):
        if tok.surface[0].isalnum():
            words.append(tok.lower)
            offsets.append(offset)
    if not words:
        raise QuerySyntaxError("phrase contains no searchable words", pos)
    return Phrase(tuple(words), tuple(offsets))


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _lex(text)
        self.i = 0

    def peek(self) -> Optional[_Tok]:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def next(self) -> _Tok:
        tok = self.peek()
        if tok is None:
            raise QuerySyntaxError("unexpected end of query", len(self.text))
        self.i += 1
        return tok

    def parse(self) -> Query:
        node = self.or_expr()
        tok = self.peek()
        if tok is not None:
            raise QuerySyntaxError(f"unexpected {tok.value!r}", tok.pos)
        return node

    def or_expr(self) -> Query:
        items = [self.and_expr()]
        while True:
            tok = self.peek()
            if tok is not None and tok.kind == "WORD" and tok.value == "OR":
                self.next()
                items.append(self.and_expr())
            else:
                break
        return items[0] if len(items) == 1 else Or(tuple(items))

    def and_expr(self) -> Query:
        items = [self.unary()]
        while True:
            tok = self.peek()
            if tok is None or tok.kind == ")" or (
                    tok.kind == "WORD" and tok.value == "OR"):
                break
            if tok.kind == "WORD" and tok.value == "AND":
                self.next()
                tok = self.peek()
                if tok is None:
                    raise QuerySyntaxError("dangling AND", len(self.text))
            items.append(self.unary())
        return items[0] if len(items) == 1 else And(tuple(items))

    def unary(self) -> Query:
        tok = self.peek()
        if tok is not None and tok.kind == "WORD" and tok.value == "NOT":
            self.next()
            return Not(self.unary())
        return self.atom()

    def atom(self) -> Query:
        tok = self.next()
        if tok.kind == "(":
            node = self.or_expr()
            closing = self.next()
            if closing.kind != ")":
                raise QuerySyntaxError("expected ')'", closing.pos)
            return node
        if tok.kind == ")":
            raise QuerySyntaxError("unexpected ')'", tok.pos)
        if tok.kind == "PHRASE":
            return self._maybe_reject_tilde(_phrase_node(tok.value, tok.pos))
        if tok.kind == "TILDE":
            raise QuerySyntaxError("fuzzy marker must follow a term", tok.pos)
        # WORD
        if ":" in tok.value:
            return self._maybe_reject_tilde(_parse_filter(tok.value, tok.pos))
        nxt = self.peek()
        if nxt is not None and nxt.kind == "TILDE":
            self.next()
            if not nxt.value:
                raise QuerySyntaxError("expected edit count after '~'", nxt.pos)
            edits = int(nxt.value)
            if edits not in (1, 2):
                raise QuerySyntaxError("edit distance must be 1 or 2", nxt.pos)
            return Fuzzy(tok.value.lower(), edits)
        return Term(tok.value.lower())

    def _maybe_reject_tilde(self, node: Query) -> Query:
        nxt = self.peek()
        if nxt is not None and nxt.kind == "TILDE":
            raise QuerySyntaxError("fuzzy marker must follow a term", nxt.pos)
        return node


def parse_query(text: str) -> Query:
    """Parse a query string into an AST, raising QuerySyntaxError on bad input."""
    if not text or not text.strip():
        raise QuerySyntaxError("empty query", 0)
    return _Parser(text).parse()
