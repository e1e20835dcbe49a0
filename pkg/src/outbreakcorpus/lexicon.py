"""Lexicon-driven entity matching with plural rules and OCR-variant lookup.

Lexicon files are UTF-8 TSV. Three columns declare an entry
(match_form<TAB>canonical<TAB>entity_type), two columns declare an OCR
variant (variant<TAB>canonical). Files may mix both kinds; variants are
checked against the merged entry table after all files load.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from types import MappingProxyType

from .errors import FileFormatError, LexiconConflictError
from .model import ENTITY_TYPES, EntityAnnotation, Span, Token
from .pipeline import tokenize


def _singular_forms(word: str) -> list[str]:
    """Candidate base forms a plural token may have been built from.

    Suffix rules: +s, +es, y->ies, us->i (bacillus -> bacilli)."""
    forms = []
    if word.endswith("ies") and len(word) > 3:
        forms.append(word[:-3] + "y")
    if word.endswith("es") and len(word) > 2:
        forms.append(word[:-2])
    if word.endswith("s") and len(word) > 1:
        forms.append(word[:-1])
    if word.endswith("i") and len(word) > 1:
        forms.append(word[:-1] + "us")
    return forms


@dataclass(frozen=True)
class EntityLexicon:
    """Immutable merged lexicon; keys are lowercased token tuples."""

    entries: MappingProxyType  # token tuple -> (canonical, entity_type)
    variants: MappingProxyType  # token tuple -> (canonical string, entity_type)
    max_len: int

    def lookup(self, key: tuple[str, ...]):
        """Resolve a token-tuple key: exact entry, plural of last token, or
        OCR variant. Returns (canonical, entity_type, corrected) or None."""
        hit = self.entries.get(key)
        if hit:
            return hit[0], hit[1], None
        for base in _singular_forms(key[-1]):
            hit = self.entries.get(key[:-1] + (base,))
            if hit:
                return hit[0], hit[1], None
        var = self.variants.get(key)
        if var:
            return var[0], var[1], var[0]
        return None


def _match_key(form: str) -> tuple[str, ...]:
    return tuple(t.lower for t in tokenize(form))


def _resolve_entry(entries: dict, form: str):
    key = _match_key(form)
    hit = entries.get(key)
    if hit is None and key:
        for base in _singular_forms(key[-1]):
            hit = entries.get(key[:-1] + (base,))
            if hit:
                break
    return hit


def load_lexicon(sources) -> EntityLexicon:
    """Merge lexicon files; duplicate match forms with conflicting types and
    variants whose canonical form resolves to no entry are errors."""
    entries: dict[tuple[str, ...], tuple[str, str]] = {}
    pending_variants: list[tuple[str, str, str, int]] = []
    for source in sources:
        name = str(source if isinstance(source, (str, Path)) else getattr(source, "name", source))
        if isinstance(source, (str, Path)):
            content = Path(source).read_text(encoding="utf-8")
        else:
            content = source.read_text(encoding="utf-8")
        for lineno, line in enumerate(content.splitlines(), 1):
            if not line.strip() or line.startswith("#"):
                continue
            cols = line.rstrip("\n").split("\t")
            if len(cols) == 3:
                match_form, canonical, etype = (c.strip() for c in cols)
                if not match_form:
                    raise FileFormatError("empty match form", path=name, line=lineno)
                if etype not in ENTITY_TYPES:
                    raise FileFormatError(f"unknown entity type {etype!r}", path=name, line=lineno)
                key = _match_key(match_form)
                prior = entries.get(key)
                if prior and prior[1] != etype:
                    raise LexiconConflictError(
                        f"match form {match_form!r} declared both {prior[1]} and {etype}")
                if not prior:
                    entries[key] = (canonical, etype)
            elif len(cols) == 2:
                variant, canonical = (c.strip() for c in cols)
                if not variant:
                    raise FileFormatError("empty variant form", path=name, line=lineno)
                pending_variants.append((variant, canonical, name, lineno))
            else:
                raise FileFormatError(f"expected 2 or 3 tab-separated columns, got {len(cols)}",
                                      path=name, line=lineno)

    variants: dict[tuple[str, ...], tuple[str, str]] = {}
    for variant, canonical, name, lineno in pending_variants:
        target = _resolve_entry(entries, canonical)
        if target is None:
            raise FileFormatError(
                f"variant {variant!r} maps to {canonical!r}, which matches no lexicon entry",
                path=name, line=lineno)
        variants[_match_key(variant)] = (canonical, target[1])

    max_len = max((len(k) for k in list(entries) + list(variants)), default=1)
    return EntityLexicon(MappingProxyType(entries), MappingProxyType(variants), max_len)


def match_lexicon_entities(tokens: list[Token], lexicon: EntityLexicon,
                           text: str) -> list[EntityAnnotation]:
    """Longest-match-wins scan over the token sequence.

    Case-insensitive; plural suffix rules apply to the final token of an
    entry; a variant hit keeps the variant as surface and records the
    canonical string as the corrected form. Matches never overlap."""
    out: list[EntityAnnotation] = []
    i = 0
    n_tokens = len(tokens)
    while i < n_tokens:
        hit = None
        width = 0
        for n in range(min(lexicon.max_len, n_tokens - i), 0, -1):
            key = tuple(t.lower for t in tokens[i:i + n])
            hit = lexicon.lookup(key)
            if hit:
                width = n
                break
        if hit is None:
            i += 1
            continue
        _canonical, etype, corrected = hit
        span = Span(tokens[i].span.start, tokens[i + width - 1].span.end)
        surface = text[span.start:span.end]
        if corrected == surface:
            corrected = None
        out.append(EntityAnnotation(etype, span, surface, corrected=corrected,
                                    provenance="automatic"))
        i += width
    return out
