"""Stage functions chaining preprocessing, tagging and template filling."""

import logging
from typing import Iterable, List, Optional, Sequence, Union

from src.arabic.tokenizer import split_sentences
from src.corpus.models import AnnotatedSentence, Document, Sentence, TaggedSentence
from src.errors import ConfigError
from src.extraction.spans import decode_spans
from src.extraction.template import HazardEvent, fill_template
from src.tagger.model import TaggerModel, tag

logger = logging.getLogger(__name__)

AnySentence = Union[Sentence, AnnotatedSentence, TaggedSentence]


def preprocess(documents: Iterable[Document]) -> List[Sentence]:
    """
    Normalize, sentence-split and tokenize documents.

    Returns:
        Sentences in document order, each carrying its document id
    """
    sentences: List[Sentence] = []
    count = 0
    for document in documents:
        count += 1
        parts = split_sentences(document.text)
        logger.debug(f"Document {document.id}: {len(parts)} sentences")
        sentences.extend(Sentence(tokens=tuple(tokens), doc_id=document.id) for tokens in parts)
    logger.info(f"✅ Preprocessed {count} documents into {len(sentences)} sentences")
    return sentences


def tag_sentences(sentences: Iterable[AnySentence], model: Optional[TaggerModel] = None) -> List[TaggedSentence]:
    """
    Attach one tag per token.

    With a model, tags are decoded by it; without one, every sentence must
    already carry tags and they pass through unchanged.

    Raises:
        ConfigError: no model and an untagged sentence
    """
    tagged: List[TaggedSentence] = []
    for sentence in sentences:
        if model is not None:
            tags = tag(model, sentence.tokens)
        elif isinstance(sentence, (AnnotatedSentence, TaggedSentence)):
            tags = sentence.tags
        else:
            raise ConfigError("no model given and the input sentences carry no tags")
        tagged.append(TaggedSentence(tokens=sentence.tokens, tags=tuple(tags), doc_id=sentence.doc_id))
    source = "model" if model is not None else "input tags"
    logger.info(f"✅ Tagged {len(tagged)} sentences from {source}")
    return tagged


def fill_events(sentences: Sequence[TaggedSentence], skip_empty: bool = False) -> List[HazardEvent]:
    """
    One event per tagged sentence, in input order.

    Args:
        sentences: Tagged sentences
        skip_empty: Drop events with no filled slot and no extras
    """
    events: List[HazardEvent] = []
    for sentence in sentences:
        event = fill_template(decode_spans(sentence.tokens, sentence.tags), sentence.tokens, sentence.doc_id)
        if skip_empty and event.is_empty():
            logger.debug(f"Skipping empty event for document {sentence.doc_id}")
            continue
        events.append(event)
    logger.info(f"✅ Filled {len(events)} events from {len(sentences)} sentences")
    return events
