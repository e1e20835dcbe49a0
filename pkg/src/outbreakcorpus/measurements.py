"""Distance and percentage recognition with unit conversion to meters."""

from __future__ import annotations

from .model import EntityAnnotation, Length, Percentage, Span, Token
from .temporal import match_number

METERS_PER_UNIT = {
    "mile": 1609.344, "miles": 1609.344,
    "yard": 0.9144, "yards": 0.9144,
    "foot": 0.3048, "feet": 0.3048,
    "metre": 1.0, "metres": 1.0, "meter": 1.0, "meters": 1.0,
    "km": 1000.0, "kilometre": 1000.0, "kilometres": 1000.0,
    "kilometer": 1000.0, "kilometers": 1000.0,
}


def _match_measurement(tokens: list[Token], i: int):
    """Returns (tokens consumed, entity_type, normalized) or None."""
    num = match_number(tokens, i)
    if num is None:
        return None
    n, value = num
    j = i + n
    if j >= len(tokens):
        return None
    unit = tokens[j].lower
    if unit in METERS_PER_UNIT:
        if value <= 0:
            return None
        return n + 1, "distance", Length(value * METERS_PER_UNIT[unit])
    if unit == "%":
        return n + 1, "percent", Percentage(float(value))
    if unit == "per" and j + 1 < len(tokens) and tokens[j + 1].lower in ("cent", "cent."):
        return n + 2, "percent", Percentage(float(value))
    if unit in ("percent", "percent."):
        return n + 1, "percent", Percentage(float(value))
    return None


def recognize_measurements(tokens: list[Token], text: str) -> list[EntityAnnotation]:
    """Emit distance and percent entities: number + length unit, "N %",
    "N per cent", with spelled-out numbers up to one hundred."""
    out: list[EntityAnnotation] = []
    i = 0
    while i < len(tokens):
        m = _match_measurement(tokens, i)
        if m is None:
            i += 1
            continue
        n, etype, normalized = m
        span = Span(tokens[i].span.start, tokens[i + n - 1].span.end)
        out.append(EntityAnnotation(etype, span, text[span.start:span.end],
                                    normalized=normalized, provenance="automatic"))
        i += n
    return out


def normalize_measurement_string(s: str):
    """Normalize a full distance/percent mention string; None if no rule
    consumes the entire string."""
    from .pipeline import tokenize
    tokens = tokenize(s)
    if not tokens:
        return None
    m = _match_measurement(tokens, 0)
    if m is not None and m[0] == len(tokens):
        return m[1], m[2]
    return None
