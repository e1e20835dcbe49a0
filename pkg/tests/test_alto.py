import pytest

from outbreakcorpus.alto import align_text_to_alto, parse_alto
from outbreakcorpus.errors import AlignmentError, FileFormatError

ALTO_ONE = """<?xml version="1.0" encoding="UTF-8"?>
<alto xmlns="http://www.loc.gov/standards/alto/ns-v2#">
  <Layout><Page><PrintSpace><TextBlock><TextLine>
    <String CONTENT="plague" HPOS="100" VPOS="200" WIDTH="80" HEIGHT="20"/>
  </TextLine></TextBlock></PrintSpace></Page></Layout>
</alto>
"""


def alto_for(words, page_geometry=None):
    rows = []
    for i, w in enumerate(words):
        x, y, width, height = (page_geometry(i) if page_geometry
                               else (100 + 90 * i, 200, 80, 20))
        rows.append(f'<String CONTENT="{w}" HPOS="{x}" VPOS="{y}" '
                    f'WIDTH="{width}" HEIGHT="{height}"/>')
    return ("<alto><Layout><Page><TextLine>" + "".join(rows)
            + "</TextLine></Page></Layout></alto>")


class TestParseAlto:
    def test_single_string(self):
        boxes = parse_alto(ALTO_ONE, 3)
        assert len(boxes) == 1
        b = boxes[0]
        assert (b.text, b.x, b.y, b.w, b.h, b.page) == ("plague", 100, 200, 80, 20, 3)
        assert b.char_span is None

    def test_empty_page(self):
        assert parse_alto("<alto><Page/></alto>", 1) == []

    def test_missing_width_is_error(self):
        bad = '<alto><String CONTENT="x" HPOS="1" VPOS="2" HEIGHT="9"/></alto>'
        with pytest.raises(FileFormatError) as exc:
            parse_alto(bad, 1)
        assert "WIDTH" in str(exc.value)

    def test_reading_order_preserved(self):
        boxes = parse_alto(alto_for(["one", "two", "three"]), 1)
        assert [b.text for b in boxes] == ["one", "two", "three"]


class TestAlign:
    def test_identical_sequences_fully_aligned(self):
        text = "the plague spread fast"
        boxes = parse_alto(alto_for(["the", "plague", "spread", "fast"]), 1)
        aligned = align_text_to_alto(text, boxes)
        spans = [b.char_span for b in aligned]
        assert all(s is not None for s in spans)
        for a, b in zip(spans, spans[1:]):
            assert a.end <= b.start
        for box in aligned:
            assert text[box.char_span.start:box.char_span.end].casefold() == box.text.casefold()

    def test_punctuation_and_case_folded(self):
        text = "Plague, spread"
        boxes = parse_alto(alto_for(["plague,", "SPREAD"]), 1)
        aligned = align_text_to_alto(text, boxes)
        assert aligned[0].char_span is not None
        assert aligned[1].char_span is not None

    def test_extra_text_word_skipped(self):
        # text has one extra word relative to the box stream
        text = "the epidemic spread very fast"
        boxes = parse_alto(alto_for(["the", "spread", "very", "fast"]), 1)
        aligned = align_text_to_alto(text, boxes)
        assert all(b.char_span is not None for b in aligned)
        assert text[aligned[1].char_span.start:aligned[1].char_span.end] == "spread"

    def test_hyphen_join_boxes_flagged_rest_aligned(self):
        # OCR produced "epi-" "demic" as two boxes; repaired text has one word
        text = "the epidemic spread fast"
        boxes = parse_alto(alto_for(["the", "epi-", "demic", "spread", "fast"]), 1)
        aligned = align_text_to_alto(text, boxes, max_failure=0.5)
        assert aligned[0].char_span is not None
        assert aligned[1].char_span is None
        assert aligned[2].char_span is None
        assert aligned[3].char_span is not None
        assert aligned[4].char_span is not None

    def test_disjoint_texts_error(self):
        text = "completely different words here"
        boxes = parse_alto(alto_for(["alpha", "beta", "gamma", "delta"]), 1)
        with pytest.raises(AlignmentError):
            align_text_to_alto(text, boxes)

    def test_never_misassigned(self):
        text = "alpha beta gamma"
        boxes = parse_alto(alto_for(["alpha", "zeta", "gamma"]), 1)
        aligned = align_text_to_alto(text, boxes, max_failure=0.5)
        assert aligned[1].char_span is None
        assert text[aligned[2].char_span.start:aligned[2].char_span.end] == "gamma"
