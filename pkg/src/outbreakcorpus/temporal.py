"""Grammar-based recognition of dates, date ranges, clock times, durations.

The grammar is deliberately small and deterministic: it works off token
surfaces, resolves missing years from the right range endpoint or the
document's publication year, and emits open-ended intervals for "since X".
Deictic phrases ("next day") are recognized but flagged relative and
unnormalizable; vague spans ("winter", "a long time") become unnormalizable
durations.
"""

from __future__ import annotations

from .model import (
    CalendarInterval,
    CalendarPoint,
    ClockTime,
    Duration,
    EntityAnnotation,
    Span,
    Token,
)

MONTHS = {
    "january": 1, "february": 2, "march": 3, "april": 4, "may": 5, "june": 6,
    "july": 7, "august": 8, "september": 9, "october": 10, "november": 11,
    "december": 12,
    "jan": 1, "feb": 2, "mar": 3, "apr": 4, "jun": 6, "jul": 7, "aug": 8,
    "sep": 9, "sept": 9, "oct": 10, "nov": 11, "dec": 12,
}

YEAR_WINDOW = (1850, 1960)

_ONES = {"one": 1, "two": 2, "three": 3, "four": 4, "five": 5, "six": 6,
         "seven": 7, "eight": 8, "nine": 9}
_TEENS = {"ten": 10, "eleven": 11, "twelve": 12, "thirteen": 13,
          "fourteen": 14, "fifteen": 15, "sixteen": 16, "seventeen": 17,
          "eighteen": 18, "nineteen": 19}
_TENS = {"twenty": 20, "thirty": 30, "forty": 40, "fifty": 50, "sixty": 60,
         "seventy": 70, "eighty": 80, "ninety": 90}
WORD_NUMBERS = {**_ONES, **_TEENS, **_TENS}

DURATION_UNITS = {"hour": "hour", "hours": "hour", "day": "day", "days": "day",
                  "week": "week", "weeks": "week", "month": "month",
                  "months": "month", "year": "year", "years": "year"}

SEASONS = frozenset({"winter", "spring", "summer", "autumn"})

# vague duration phrases, longest first
VAGUE_PHRASES = (
    ("a", "considerable", "time"), ("a", "long", "time"), ("a", "short", "time"),
    ("a", "long", "period"), ("some", "time"),
)

RELATIVE_UNITS = frozenset({"day", "morning", "evening", "night", "week",
                            "month", "year"})


def _word_number(token: Token):
    """Spelled-out cardinal for one token, or None. Handles hyphenated
    composites (twenty-one) and plain lookups up to ninety-nine."""
    s = token.lower
    if s in WORD_NUMBERS:
        return WORD_NUMBERS[s]
    if "-" in s:
        parts = s.split("-")
        if len(parts) == 2 and parts[0] in _TENS and parts[1] in _ONES:
            return _TENS[parts[0]] + _ONES[parts[1]]
    return None


def match_number(tokens: list[Token], i: int):
    """Number starting at token i: digits (with separators) or spelled-out
    words up to one hundred. Returns (tokens consumed, value) or None."""
    t = tokens[i]
    s = t.lower
    if s[:1].isdigit():
        digits = s.replace(",", "")
        try:
            value = float(digits) if "." in digits else int(digits)
        except ValueError:
            return None
        return 1, value
    w = _word_number(t)
    if w is not None:
        if w < 10 and i + 1 < len(tokens) and tokens[i + 1].lower == "hundred":
            return 2, w * 100
        return 1, w
    if s in ("a", "an") and i + 1 < len(tokens) and tokens[i + 1].lower == "hundred":
        return 2, 100
    return None


def _match_month(tokens, i):
    if i < len(tokens) and tokens[i].lower in MONTHS:
        return MONTHS[tokens[i].lower]
    return None


def _match_year_token(tokens, i):
    if i >= len(tokens):
        return None
    s = tokens[i].surface
    if len(s) == 4 and s.isdigit():
        y = int(s)
        if YEAR_WINDOW[0] <= y <= YEAR_WINDOW[1]:
            return y
    return None


def _match_day_token(tokens, i):
    """Day-of-month token: 4, 04, 4th, 22nd..."""
    if i >= len(tokens):
        return None
    s = tokens[i].lower
    for suffix in ("st", "nd", "rd", "th"):
        if s.endswith(suffix):
            s = s[:-len(suffix)]
            break
    if s.isdigit() and 1 <= len(s) <= 2:
        d = int(s)
        if 1 <= d <= 31:
            return d
    return None


class _Point:
    """Partially specified calendar point; year may be left to inheritance."""

    __slots__ = ("n", "year", "month", "day")

    def __init__(self, n, year=None, month=None, day=None):
        self.n = n  # tokens consumed
        self.year = year
        self.month = month
        self.day = day

    def resolve(self, year_fallback: int) -> CalendarPoint:
        return CalendarPoint(self.year if self.year is not None else year_fallback,
                             self.month, self.day)


def _match_point(tokens, i) -> _Point | None:
    """Day-month[-year], month-day[-year], month[-year], or bare year."""
    day = _match_day_token(tokens, i)
    if day is not None and _match_month(tokens, i + 1) is not None:
        month = _match_month(tokens, i + 1)
        year = _match_year_token(tokens, i + 2)
        # "4" alone is ambiguous, require an ordinal or a following month
        return _Point(3 if year else 2, year, month, day)
    month = _match_month(tokens, i)
    if month is not None:
        day = _match_day_token(tokens, i + 1)
        if day is not None:
            j = i + 2
            if j < len(tokens) and tokens[j].surface == ",":
                j += 1
            year = _match_year_token(tokens, j)
            return _Point(j + 1 - i if year else i + 2 - i, year, month, day)
        year = _match_year_token(tokens, i + 1)
        if year is not None:
            return _Point(2, year, month)
        return _Point(1, None, month)
    year = _match_year_token(tokens, i)
    if year is not None:
        return _Point(1, year)
    return None


_RANGE_JOINERS = frozenset({"to", "until", "till", "-", "–", "—"})


def _match_range(tokens, i, pub_year):
    """Returns (n, CalendarInterval) or None."""
    if tokens[i].lower == "since":
        p = _match_point(tokens, i + 1)
        if p is not None and (p.year is not None or p.month is not None):
            start = p.resolve(pub_year)
            return 1 + p.n, CalendarInterval(start, None, open_end=True)
        return None
    left = _match_point(tokens, i)
    if left is None:
        return None
    j = i + left.n
    if j < len(tokens) and tokens[j].lower in _RANGE_JOINERS:
        right = _match_point(tokens, j + 1)
        if right is not None:
            # bare month on the left needs a month (not a lone year) match on
            # the right to count as a range like "March to June"
            end = right.resolve(pub_year)
            start = left.resolve(end.year)
            if (start.first_day() <= end.first_day()
                    and (left.year is not None or left.month is not None)
                    and (right.year is not None or right.month is not None)):
                return (j + 1 + right.n) - i, CalendarInterval(start, end)
    return None


_RELATIVE_LEADS = frozenset({"beginning", "end", "middle"})


def _match_relative_date(tokens, i):
    """Deictic/anchorless date phrases; returns token count or None."""
    lowers = [t.lower for t in tokens[i:i + 4]]
    if (len(lowers) >= 4 and lowers[0] == "the" and lowers[1] in _RELATIVE_LEADS
            and lowers[2] == "of" and lowers[3] in MONTHS):
        return 4
    if len(lowers) >= 3 and lowers[0] == "the" and lowers[1] in ("next", "following", "same") \
            and lowers[2] in RELATIVE_UNITS:
        return 3
    if len(lowers) >= 2 and lowers[0] == "next" and lowers[1] in RELATIVE_UNITS:
        return 2
    return None


_AM = frozenset({"a.m.", "a.m", "am"})
_PM = frozenset({"p.m.", "p.m", "pm"})


def _match_time(tokens, i):
    """Returns (n, ClockTime) or None."""
    s = tokens[i].lower
    if s == "noon":
        return 1, ClockTime(12, 0)
    if s == "midnight":
        return 1, ClockTime(0, 0)
    hour = minute = None
    n = 0
    if ":" in s:
        hh, _, mm = s.partition(":")
        if hh.isdigit() and mm.isdigit() and int(hh) <= 23 and int(mm) <= 59:
            hour, minute, n = int(hh), int(mm), 1
    elif s.isdigit() and 1 <= int(s) <= 12:
        hour, minute, n = int(s), 0, 1
    if hour is None:
        return None
    j = i + n
    if j < len(tokens) and tokens[j].lower in _AM:
        return n + 1, ClockTime(0 if hour == 12 else hour, minute)
    if j < len(tokens) and tokens[j].lower in _PM:
        return n + 1, ClockTime(hour if hour == 12 else hour + 12, minute)
    if j < len(tokens) and tokens[j].lower == "o'clock":
        return n + 1, ClockTime(hour, minute)
    if ":" in s:
        return n, ClockTime(hour, minute)
    return None  # a bare small number is not a time


def _match_duration(tokens, i):
    """Returns (n, Duration or None, unnormalizable) or None."""
    s = tokens[i].lower
    for phrase in VAGUE_PHRASES:
        if tuple(t.lower for t in tokens[i:i + len(phrase)]) == phrase:
            return len(phrase), None, True
    if s in SEASONS:
        return 1, None, True
    if s in ("a", "an") and i + 1 < len(tokens) and tokens[i + 1].lower in DURATION_UNITS:
        unit = DURATION_UNITS[tokens[i + 1].lower]
        return 2, Duration(1, unit), False
    num = match_number(tokens, i)
    if num is not None:
        n, value = num
        j = i + n
        if j < len(tokens) and tokens[j].lower in DURATION_UNITS:
            if isinstance(value, int) or float(value).is_integer():
                return n + 1, Duration(int(value), DURATION_UNITS[tokens[j].lower]), False
            return None
    # a bare plural unit with no count: "months", "days"
    if s in DURATION_UNITS and s.endswith("s"):
        return 1, None, True
    return None


def recognize_temporal(tokens: list[Token], pub_year: int,
                       text: str) -> list[EntityAnnotation]:
    """Scan tokens and emit date/date-range/time/duration entities."""
    out: list[EntityAnnotation] = []
    i = 0
    n_tokens = len(tokens)

    def emit(n, etype, normalized=None, unnormalizable=False, relative=False):
        span = Span(tokens[i].span.start, tokens[i + n - 1].span.end)
        out.append(EntityAnnotation(etype, span, text[span.start:span.end],
                                    normalized=normalized, provenance="automatic",
                                    unnormalizable=unnormalizable, relative=relative))
        return i + n

    while i < n_tokens:
        rng = _match_range(tokens, i, pub_year)
        if rng is not None:
            i = emit(rng[0], "date-range", rng[1])
            continue
        rel = _match_relative_date(tokens, i)
        if rel is not None:
            i = emit(rel, "date", unnormalizable=True, relative=True)
            continue
        tm = _match_time(tokens, i)
        if tm is not None:
            i = emit(tm[0], "time", tm[1])
            continue
        point = _match_point(tokens, i)
        if point is not None:
            month_only = point.year is None and point.day is None
            # a lone month must look like one ("May" as auxiliary is too common)
            surface_ok = tokens[i].surface[0].isupper() and tokens[i].lower != "may"
            if not month_only or surface_ok:
                i = emit(point.n, "date", point.resolve(pub_year))
                continue
        dur = _match_duration(tokens, i)
        if dur is not None:
            i = emit(dur[0], "duration", dur[1], unnormalizable=dur[2])
            continue
        i += 1
    return out


def normalize_temporal_string(s: str, pub_year: int):
    """Normalize a full mention string (surface or corrected form).

    Returns (entity_type, normalized, unnormalizable, relative) or None when
    the string is not a temporal expression at all. The whole string must be
    consumed by one grammar rule."""
    from .pipeline import tokenize
    tokens = tokenize(s)
    if not tokens:
        return None
    n_tokens = len(tokens)
    rng = _match_range(tokens, 0, pub_year)
    if rng and rng[0] == n_tokens:
        return "date-range", rng[1], False, False
    rel = _match_relative_date(tokens, 0)
    if rel == n_tokens:
        return "date", None, True, True
    tm = _match_time(tokens, 0)
    if tm and tm[0] == n_tokens:
        return "time", tm[1], False, False
    point = _match_point(tokens, 0)
    if point and point.n == n_tokens:
        return "date", point.resolve(pub_year), False, False
    dur = _match_duration(tokens, 0)
    if dur and dur[0] == n_tokens:
        return "duration", dur[1], dur[2], False
    return None
