"""Gazetteer loading and place-name resolution.

The ranking heuristic is configuration, not ground truth: population
dominates via a log term, populated-place/admin classes get a fixed bonus,
and candidates near already-resolved places in the same document get a
context bonus. Weights live in ResolverWeights so deployments can retune.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

from .errors import FileFormatError
from .model import EntityAnnotation


@dataclass(frozen=True)
class GazetteerEntry:
    gaz_id: int
    name: str
    alternate_names: tuple[str, ...]
    latitude: float
    longitude: float
    feature_class: str
    population: int


class Gazetteer:
    """Case-insensitive name -> candidate entries, alternate names included."""

    def __init__(self, entries):
        self.entries = tuple(entries)
        self._by_name: dict[str, list[GazetteerEntry]] = {}
        for e in self.entries:
            for name in (e.name, *e.alternate_names):
                self._by_name.setdefault(name.lower(), []).append(e)

    def lookup(self, name: str) -> tuple[GazetteerEntry, ...]:
        return tuple(self._by_name.get(name.lower(), ()))

    def __len__(self):
        return len(self.entries)


def load_gazetteer(source) -> Gazetteer:
    """TSV columns: id, name, alternate_names ("|"-separated), lat, lon,
    feature_class, population."""
    name = str(source if isinstance(source, (str, Path)) else getattr(source, "name", source))
    if isinstance(source, (str, Path)):
        content = Path(source).read_text(encoding="utf-8")
    else:
        content = source.read_text(encoding="utf-8")
    entries = []
    for lineno, line in enumerate(content.splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.rstrip("\n").split("\t")
        if len(cols) != 7:
            raise FileFormatError(f"expected 7 columns, got {len(cols)}",
                                  path=name, line=lineno)
        try:
            gaz_id = int(cols[0])
            lat, lon = float(cols[3]), float(cols[4])
            population = int(cols[6])
        except ValueError as exc:
            raise FileFormatError(f"bad numeric field: {exc}", path=name, line=lineno)
        if not -90.0 <= lat <= 90.0:
            raise FileFormatError(f"latitude {lat} out of range", path=name, line=lineno)
        if not -180.0 <= lon <= 180.0:
            raise FileFormatError(f"longitude {lon} out of range", path=name, line=lineno)
        if population < 0:
            raise FileFormatError(f"negative population {population}", path=name, line=lineno)
        if not cols[1].strip():
            raise FileFormatError("empty place name", path=name, line=lineno)
        alternates = tuple(a.strip() for a in cols[2].split("|") if a.strip())
        entries.append(GazetteerEntry(gaz_id, cols[1].strip(), alternates, lat, lon,
                                      cols[5].strip(), population))
    return Gazetteer(entries)


@dataclass(frozen=True)
class ResolverWeights:
    class_bonus: float = 2.0
    bonus_classes: frozenset = frozenset({"P", "A"})
    context_bonus: float = 1.0
    context_degrees: float = 5.0


DEFAULT_WEIGHTS = ResolverWeights()


@dataclass(frozen=True)
class GeoResolution:
    name: str
    chosen: GazetteerEntry
    score: float
    alternatives: tuple  # (entry, score) pairs, ranked


def score_entry(entry: GazetteerEntry, context, weights: ResolverWeights = DEFAULT_WEIGHTS) -> float:
    score = math.log10(entry.population + 1)
    if entry.feature_class in weights.bonus_classes:
        score += weights.class_bonus
    for lat, lon in context:
        if math.hypot(entry.latitude - lat, entry.longitude - lon) <= weights.context_degrees:
            score += weights.context_bonus
            break
    return score


def resolve(entity, context, gazetteer: Gazetteer,
            weights: ResolverWeights = DEFAULT_WEIGHTS) -> GeoResolution | None:
    """Pick the best gazetteer entry for a location mention.

    `entity` may be an EntityAnnotation (corrected form preferred over
    surface) or a plain string. `context` is an iterable of (lat, lon) for
    places already resolved in the same document. Ties break toward larger
    population, then smaller gaz_id. Returns None when the gazetteer has no
    candidate at all."""
    if isinstance(entity, EntityAnnotation):
        name = entity.corrected if entity.corrected is not None else entity.surface
    else:
        name = str(entity)
    candidates = gazetteer.lookup(name)
    if not candidates:
        return None
    context = tuple(context)
    scored = sorted(((score_entry(e, context, weights), e) for e in candidates),
                    key=lambda t: (-t[0], -t[1].population, t[1].gaz_id))
    best_score, best = scored[0]
    return GeoResolution(name, best, best_score,
                         tuple((e, s) for s, e in scored[1:]))
