"""Word-coordinate (ALTO) file parsing and text-to-box alignment.

Only String elements are consumed: CONTENT plus the HPOS/VPOS/WIDTH/HEIGHT
pixel box. Alignment is greedy and in-order against the document's word
tokens, with a small skip tolerance so single joined/split words do not
derail the rest of a page.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import replace

from .errors import AlignmentError, FileFormatError
from .model import PageWordBox
from .pipeline import tokenize

_REQUIRED = ("HPOS", "VPOS", "WIDTH", "HEIGHT")


def parse_alto(xml_content: str, page: int) -> list[PageWordBox]:
    """One PageWordBox per String element, in reading (document) order."""
    try:
        root = ET.fromstring(xml_content)
    except ET.ParseError as exc:
        raise FileFormatError(f"not well-formed XML: {exc}")
    boxes: list[PageWordBox] = []
    count = 0
    for el in root.iter():
        if el.tag.rpartition("}")[2] != "String":
            continue
        count += 1
        content = el.get("CONTENT")
        if content is None:
            raise FileFormatError(f"String element {count} lacks CONTENT")
        values = []
        for attr in _REQUIRED:
            raw = el.get(attr)
            if raw is None:
                raise FileFormatError(
                    f"String element {count} ({content!r}) lacks {attr}")
            try:
                values.append(int(float(raw)))
            except ValueError:
                raise FileFormatError(
                    f"String element {count} ({content!r}) has bad {attr}={raw!r}")
        x, y, w, h = values
        boxes.append(PageWordBox(page, content, x, y, w, h))
    return boxes


def _norm(s: str) -> str:
    s = s.casefold()
    start, end = 0, len(s)
    while start < end and not s[start].isalnum():
        start += 1
    while end > start and not s[end - 1].isalnum():
        end -= 1
    return s[start:end]


def align_text_to_alto(text: str, boxes, skip_tolerance: int = 2,
                       max_failure: float = 0.2) -> list[PageWordBox]:
    """Assign each box the char span of its document word, greedily in order.

    A gap of up to `skip_tolerance` document words may be jumped to resync
    (hyphenation joins leave the text one word short of the box stream, and
    vice versa). Boxes that cannot be matched keep char_span=None rather
    than being misassigned. Raises AlignmentError when more than
    `max_failure` of the word-bearing boxes fail: the text and coordinate
    files likely belong to different pages."""
    words = [t for t in tokenize(text) if _norm(t.surface)]
    out: list[PageWordBox] = []
    considered = 0
    unaligned = 0
    j = 0
    for box in boxes:
        target = _norm(box.text)
        if not target:
            out.append(box)  # decorative/punctuation box, never alignable
            continue
        considered += 1
        hit = None
        for k in range(skip_tolerance + 1):
            if j + k < len(words) and _norm(words[j + k].surface) == target:
                hit = j + k
                break
        if hit is None:
            unaligned += 1
            out.append(box)
        else:
            out.append(replace(box, char_span=words[hit].span))
            j = hit + 1
    if considered and unaligned / considered > max_failure:
        raise AlignmentError(
            f"{unaligned} of {considered} word boxes failed to align; "
            "text and coordinates appear to be from different sources")
    return out
