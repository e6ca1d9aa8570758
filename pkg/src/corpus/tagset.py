"""IOB tag scheme over the six food-hazard entity classes."""

from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

from src.errors import TagValidationError

OUTSIDE = "O"

ENTITY_LABELS: Tuple[str, ...] = ("PERS", "LOC", "ORG", "QUANT", "EVT", "DTE")

LONG_LABELS: Dict[str, str] = {
    "PERSON": "PERS",
    "LOCATION": "LOC",
    "ORGANIZATION": "ORG",
    "QUANTITY": "QUANT",
    "EVENT": "EVT",
    "DATE": "DTE",
}


def canonicalize_label(label: str) -> str:
    """Map a short or long class name to its short uppercase form."""
    upper = label.strip().upper()
    upper = LONG_LABELS.get(upper, upper)
    if upper not in ENTITY_LABELS:
        raise TagValidationError(f"unknown entity class {label!r}")
    return upper


def canonicalize_tag(tag: str) -> str:
    """Uppercase a tag and replace a long class name by the short one."""
    text = tag.strip().upper()
    if text == OUTSIDE:
        return OUTSIDE
    prefix, sep, label = text.partition("-")
    if not sep or prefix not in ("B", "I"):
        raise TagValidationError(f"invalid tag {tag!r}")
    return f"{prefix}-{canonicalize_label(label)}"


@dataclass(frozen=True)
class TagViolation:
    """First position where a tag sequence breaks the IOB rules."""
    index: int
    reason: str

    def __str__(self) -> str:
        return f"index {self.index}: {self.reason}"


def validate_tags(tags: Sequence[str]) -> Optional[TagViolation]:
    """Check IOB validity.

    Args:
        tags: Tag strings; long class names are accepted.

    Returns:
        None when the sequence is valid, otherwise the first violation.
    """
    previous_label: Optional[str] = None
    for index, raw in enumerate(tags):
        try:
            tag = canonicalize_tag(raw)
        except TagValidationError as e:
            return TagViolation(index, str(e))
        if tag == OUTSIDE:
            previous_label = None
            continue
        prefix, label = tag.split("-", 1)
        if prefix == "I":
            if previous_label is None:
                return TagViolation(index, f"{tag} without a preceding B-{label}")
            if previous_label != label:
                return TagViolation(index, f"{tag} continues a {previous_label} entity")
        previous_label = label
    return None


@dataclass(frozen=True)
class TagSet:
    """Ordered tag inventory; "O" sits at index 0."""
    tags: Tuple[str, ...]

    def __post_init__(self):
        if not self.tags or self.tags[0] != OUTSIDE:
            raise TagValidationError("tag set must start with 'O'")
        if len(set(self.tags)) != len(self.tags):
            raise TagValidationError("tag set has duplicate tags")
        object.__setattr__(self, "_index", {tag: i for i, tag in enumerate(self.tags)})

    @classmethod
    def from_labels(cls, labels: Sequence[str] = ENTITY_LABELS) -> "TagSet":
        tags = [OUTSIDE]
        for label in labels:
            tags.extend((f"B-{label}", f"I-{label}"))
        return cls(tuple(tags))

    def __len__(self) -> int:
        return len(self.tags)

    def index(self, tag: str) -> int:
        canonical = canonicalize_tag(tag)
        try:
            return self._index[canonical]
        except KeyError:
            raise TagValidationError(f"tag {tag!r} not in tag set")

    def encode(self, tags: Sequence[str]) -> list:
        return [self.index(tag) for tag in tags]

    def decode(self, indices: Sequence[int]) -> list:
        return [self.tags[i] for i in indices]

    @staticmethod
    def split(tag: str) -> Tuple[str, Optional[str]]:
        """("B"|"I"|"O", label or None) for a canonical tag."""
        if tag == OUTSIDE:
            return OUTSIDE, None
        prefix, label = tag.split("-", 1)
        return prefix, label


DEFAULT_TAGSET = TagSet.from_labels()
