"""Data models for documents and annotated sentences."""

from dataclasses import dataclass, field
from datetime import date
from typing import Any, Dict, List, Optional, Tuple

from src.corpus.tagset import canonicalize_tag, validate_tags
from src.errors import TagValidationError

DOCUMENT_SOURCES = ("report", "website", "social")


@dataclass(frozen=True)
class Document:
    """Raw collected document: technical report, website page or social post."""
    id: str
    text: str
    source: str
    date: Optional[str] = None

    def __post_init__(self):
        if not self.id:
            raise ValueError("document id must be nonempty")
        if not self.text:
            raise ValueError(f"document {self.id!r} has empty text")
        if self.source not in DOCUMENT_SOURCES:
            raise ValueError(f"document {self.id!r} has unknown source {self.source!r}")
        if self.date is not None:
            try:
                date.fromisoformat(self.date)
            except ValueError:
                raise ValueError(f"document {self.id!r} has non ISO-8601 date {self.date!r}")

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for JSON serialization."""
        data: Dict[str, Any] = {"id": self.id, "text": self.text, "source": self.source}
        if self.date is not None:
            data["date"] = self.date
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Document":
        """Create from dictionary."""
        return cls(
            id=data["id"],
            text=data["text"],
            source=data["source"],
            date=data.get("date"),
        )


@dataclass(frozen=True)
class Sentence:
    """Tokenized sentence without annotation."""
    tokens: Tuple[str, ...]
    doc_id: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"tokens": list(self.tokens)}
        if self.doc_id is not None:
            data["doc_id"] = self.doc_id
        return data


@dataclass(frozen=True)
class AnnotatedSentence:
    """Token sequence paired with its IOB tag sequence."""
    tokens: Tuple[str, ...]
    tags: Tuple[str, ...]
    doc_id: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))
        object.__setattr__(self, "tags", tuple(canonicalize_tag(t) for t in self.tags))
        if not self.tokens:
            raise ValueError("annotated sentence must have at least one token")
        if len(self.tokens) != len(self.tags):
            raise ValueError(f"{len(self.tokens)} tokens but {len(self.tags)} tags")
        violation = validate_tags(self.tags)
        if violation is not None:
            raise TagValidationError(f"invalid tag sequence at {violation}")

    def __len__(self) -> int:
        return len(self.tokens)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for JSON serialization."""
        data: Dict[str, Any] = {"tokens": list(self.tokens), "tags": list(self.tags)}
        if self.doc_id is not None:
            data["doc_id"] = self.doc_id
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "AnnotatedSentence":
        """Create from dictionary."""
        return cls(
            tokens=tuple(data["tokens"]),
            tags=tuple(data["tags"]),
            doc_id=data.get("doc_id"),
        )


@dataclass(frozen=True)
class TaggedSentence:
    """Tokens with one predicted tag each; may be empty and need not be valid IOB."""
    tokens: Tuple[str, ...]
    tags: Tuple[str, ...]
    doc_id: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))
        object.__setattr__(self, "tags", tuple(canonicalize_tag(t) for t in self.tags))
        if len(self.tokens) != len(self.tags):
            raise ValueError(f"{len(self.tokens)} tokens but {len(self.tags)} tags")

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for JSON serialization (corpus record layout)."""
        data: Dict[str, Any] = {"tokens": list(self.tokens), "tags": list(self.tags)}
        if self.doc_id is not None:
            data["doc_id"] = self.doc_id
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "TaggedSentence":
        """Create from dictionary."""
        return cls(
            tokens=tuple(data["tokens"]),
            tags=tuple(data["tags"]),
            doc_id=data.get("doc_id"),
        )


@dataclass(frozen=True)
class CorpusSplit:
    """Train/dev/test partition of a corpus."""
    train: List[AnnotatedSentence] = field(default_factory=list)
    dev: List[AnnotatedSentence] = field(default_factory=list)
    test: List[AnnotatedSentence] = field(default_factory=list)

    def sizes(self) -> Tuple[int, int, int]:
        return len(self.train), len(self.dev), len(self.test)
