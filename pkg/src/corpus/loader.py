"""Line-delimited JSON readers and writers for corpora and raw documents."""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Iterable, Iterator, List, Tuple, Union

from src.corpus.models import AnnotatedSentence, Document, Sentence, TaggedSentence
from src.corpus.tagset import canonicalize_tag, validate_tags
from src.errors import CorpusFormatError, TagValidationError

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def _iter_records(path: PathLike) -> Iterator[Tuple[int, Dict[str, Any]]]:
    """Yield (line number, JSON object) for every nonblank line."""
    with open(path, "r", encoding="utf-8") as f:
        for line_number, line in enumerate(f, 1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as e:
                raise CorpusFormatError(f"invalid JSON ({e.msg})", str(path), line_number)
            if not isinstance(record, dict):
                raise CorpusFormatError("record is not an object", str(path), line_number)
            yield line_number, record


def _string_list(record: Dict[str, Any], key: str, path: PathLike, line_number: int) -> List[str]:
    value = record.get(key)
    if not isinstance(value, list) or not all(isinstance(item, str) for item in value):
        raise CorpusFormatError(f'field "{key}" must be an array of strings', str(path), line_number)
    return value


def _optional_string(record: Dict[str, Any], key: str, path: PathLike, line_number: int):
    value = record.get(key)
    if value is not None and not isinstance(value, str):
        raise CorpusFormatError(f'field "{key}" must be a string', str(path), line_number)
    return value


def parse_annotated(record: Dict[str, Any], path: PathLike = "<memory>", line_number: int = 0) -> AnnotatedSentence:
    """Validate one corpus record and build the sentence."""
    tokens = _string_list(record, "tokens", path, line_number)
    raw_tags = _string_list(record, "tags", path, line_number)
    doc_id = _optional_string(record, "doc_id", path, line_number)
    if not tokens:
        raise CorpusFormatError("sentence has no tokens", str(path), line_number)
    if len(tokens) != len(raw_tags):
        raise CorpusFormatError(
            f"{len(tokens)} tokens but {len(raw_tags)} tags", str(path), line_number
        )
    try:
        tags = [canonicalize_tag(tag) for tag in raw_tags]
    except TagValidationError as e:
        raise CorpusFormatError(str(e), str(path), line_number)
    violation = validate_tags(tags)
    if violation is not None:
        raise CorpusFormatError(f"invalid tag sequence at {violation}", str(path), line_number)
    return AnnotatedSentence(tokens=tuple(tokens), tags=tuple(tags), doc_id=doc_id)


def load_corpus(path: PathLike) -> List[AnnotatedSentence]:
    """
    Load an annotated corpus, one sentence record per line.

    Args:
        path: UTF-8 JSON Lines file with "tokens", "tags" and optional "doc_id"

    Returns:
        Sentences in file order

    Raises:
        CorpusFormatError: naming the offending line
    """
    sentences = [parse_annotated(record, path, line_number) for line_number, record in _iter_records(path)]
    logger.info(f"Loaded {len(sentences)} annotated sentences from {path}")
    return sentences


def load_sentences(path: PathLike) -> List[Sentence]:
    """Load tokenized sentences; a "tags" field, if present, is ignored."""
    sentences = []
    for line_number, record in _iter_records(path):
        tokens = _string_list(record, "tokens", path, line_number)
        doc_id = _optional_string(record, "doc_id", path, line_number)
        sentences.append(Sentence(tokens=tuple(tokens), doc_id=doc_id))
    logger.info(f"Loaded {len(sentences)} sentences from {path}")
    return sentences


def load_tagged(path: PathLike) -> List[TaggedSentence]:
    """
    Load predicted tag records.

    Tags must be known tag strings of the right count, but the IOB order is
    not checked: a stray I-X is kept and later scored as if it were B-X.

    Raises:
        CorpusFormatError: naming the offending line
    """
    sentences = []
    for line_number, record in _iter_records(path):
        tokens = _string_list(record, "tokens", path, line_number)
        tags = _string_list(record, "tags", path, line_number)
        doc_id = _optional_string(record, "doc_id", path, line_number)
        try:
            sentences.append(TaggedSentence(tokens=tuple(tokens), tags=tuple(tags), doc_id=doc_id))
        except ValueError as e:
            raise CorpusFormatError(str(e), str(path), line_number)
    logger.info(f"Loaded {len(sentences)} tagged sentences from {path}")
    return sentences


def load_documents(path: PathLike) -> List[Document]:
    """
    Load raw-document records ("id", "text", "source", optional "date").

    Raises:
        CorpusFormatError: malformed record or duplicate id
    """
    documents: List[Document] = []
    seen = set()
    for line_number, record in _iter_records(path):
        for key in ("id", "text", "source"):
            if not isinstance(record.get(key), str):
                raise CorpusFormatError(f'field "{key}" must be a string', str(path), line_number)
        _optional_string(record, "date", path, line_number)
        try:
            document = Document.from_dict(record)
        except ValueError as e:
            raise CorpusFormatError(str(e), str(path), line_number)
        if document.id in seen:
            raise CorpusFormatError(f"duplicate document id {document.id!r}", str(path), line_number)
        seen.add(document.id)
        documents.append(document)
    logger.info(f"Loaded {len(documents)} documents from {path}")
    return documents


def dump_records(records: Iterable[Any]) -> str:
    """Serialize objects exposing to_dict() as JSON Lines."""
    return "".join(json.dumps(r.to_dict(), ensure_ascii=False) + "\n" for r in records)


def dump_corpus(sentences: Iterable[AnnotatedSentence]) -> str:
    return dump_records(sentences)


def save_corpus(sentences: Iterable[AnnotatedSentence], path: PathLike) -> None:
    Path(path).write_text(dump_corpus(sentences), encoding="utf-8")


def save_sentences(sentences: Iterable[Sentence], path: PathLike) -> None:
    Path(path).write_text(dump_records(sentences), encoding="utf-8")
