"""The food-hazard event template and slot filling."""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

from src.corpus.tagset import ENTITY_LABELS
from src.errors import SpanError
from src.extraction.spans import EntitySpan

# Entity class -> template slot
SLOT_FOR_LABEL: Dict[str, str] = {
    "EVT": "hazard_type",
    "LOC": "location",
    "ORG": "organization",
    "PERS": "person",
    "QUANT": "quantity",
    "DTE": "date",
}

FIELD_ORDER = ("doc_id", "hazard_type", "location", "organization", "person", "quantity", "date", "extras")


def _empty_extras() -> Dict[str, List[str]]:
    return {label: [] for label in ENTITY_LABELS}


@dataclass
class HazardEvent:
    """One filled template: what was found, where, by whom, how much and when."""
    doc_id: Optional[str] = None
    hazard_type: Optional[str] = None
    location: Optional[str] = None
    organization: Optional[str] = None
    person: Optional[str] = None
    quantity: Optional[str] = None
    date: Optional[str] = None
    extras: Dict[str, List[str]] = field(default_factory=_empty_extras)

    @property
    def finder(self) -> Optional[str]:
        """The organization or person that found the hazard, organization first."""
        return self.organization if self.organization is not None else self.person

    def is_empty(self) -> bool:
        """True when no slot is filled and extras are empty."""
        slots = (getattr(self, slot) for slot in SLOT_FOR_LABEL.values())
        return all(value is None for value in slots) and not any(self.extras.values())

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for JSON serialization, fields in fixed order."""
        data: Dict[str, Any] = {name: getattr(self, name) for name in FIELD_ORDER[:-1]}
        data["extras"] = {label: list(self.extras.get(label, [])) for label in ENTITY_LABELS}
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "HazardEvent":
        """Create from dictionary."""
        extras = _empty_extras()
        for label, texts in (data.get("extras") or {}).items():
            extras[label] = list(texts)
        return cls(
            doc_id=data.get("doc_id"),
            hazard_type=data.get("hazard_type"),
            location=data.get("location"),
            organization=data.get("organization"),
            person=data.get("person"),
            quantity=data.get("quantity"),
            date=data.get("date"),
            extras=extras,
        )


def fill_template(spans: Sequence[EntitySpan], tokens: Sequence[str], doc_id: Optional[str] = None) -> HazardEvent:
    """
    Fill one event from the spans of one sentence.

    For each class the span with the lowest start takes the slot; later spans
    of that class are kept in extras.

    Args:
        spans: Spans decoded from `tokens`
        tokens: The sentence tokens
        doc_id: Source document id, if known

    Returns:
        HazardEvent for the sentence

    Raises:
        SpanError: a span lies outside the sentence
    """
    event = HazardEvent(doc_id=doc_id)
    for span in sorted(spans, key=lambda s: s.start):
        if not 0 <= span.start <= span.end < len(tokens):
            raise SpanError(f"span {span.label}({span.start},{span.end}) lies outside a {len(tokens)}-token sentence")
        slot = SLOT_FOR_LABEL[span.label]
        if getattr(event, slot) is None:
            setattr(event, slot, span.text)
        else:
            event.extras[span.label].append(span.text)
    return event
