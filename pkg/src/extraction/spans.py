"""Conversion between IOB tag sequences and entity spans."""

from dataclasses import dataclass
from typing import List, Optional, Sequence

from src.corpus.tagset import ENTITY_LABELS, OUTSIDE, canonicalize_tag
from src.errors import SpanError


@dataclass(frozen=True)
class EntitySpan:
    """Labelled token range [start, end], both ends inclusive."""
    label: str
    start: int
    end: int
    text: str

    @property
    def key(self):
        """(label, start, end): the identity used for exact-match scoring."""
        return self.label, self.start, self.end


def decode_spans(tokens: Sequence[str], tags: Sequence[str]) -> List[EntitySpan]:
    """
    Group B-X (I-X)* runs into spans.

    A stray I-X (after O, at the start, or after another class) opens a
    new span as if it were B-X. Long class names are accepted.

    Returns:
        Non-overlapping spans sorted by start
    """
    if len(tokens) != len(tags):
        raise ValueError(f"{len(tokens)} tokens but {len(tags)} tags")
    spans: List[EntitySpan] = []
    label: Optional[str] = None
    start = 0

    def close(end: int):
        spans.append(EntitySpan(label, start, end, " ".join(tokens[start:end + 1])))

    for i, raw in enumerate(tags):
        tag = canonicalize_tag(raw)
        if tag == OUTSIDE:
            if label is not None:
                close(i - 1)
            label = None
            continue
        prefix, current = tag.split("-", 1)
        if prefix == "I" and current == label:
            continue
        if label is not None:
            close(i - 1)
        label, start = current, i
    if label is not None:
        close(len(tags) - 1)
    return spans


def encode_spans(spans: Sequence[EntitySpan], length: int) -> List[str]:
    """
    Tag sequence of the given length with B-/I- tags over every span.

    Raises:
        SpanError: a span is out of range, has an unknown label or
            overlaps another
    """
    tags = [OUTSIDE] * length
    for span in sorted(spans, key=lambda s: (s.start, s.end)):
        if span.label not in ENTITY_LABELS:
            raise SpanError(f"unknown span label {span.label!r}")
        if not 0 <= span.start <= span.end < length:
            raise SpanError(f"span {span.label}({span.start},{span.end}) outside a sentence of length {length}")
        if any(tag != OUTSIDE for tag in tags[span.start:span.end + 1]):
            raise SpanError(f"span {span.label}({span.start},{span.end}) overlaps another span")
        tags[span.start] = f"B-{span.label}"
        for i in range(span.start + 1, span.end + 1):
            tags[i] = f"I-{span.label}"
    return tags
