"""Whitespace/punctuation tokenizer with character offsets."""

import re
from dataclasses import dataclass
from typing import List

from src.arabic.normalizer import normalize

PUNCTUATION = ".,،؛;:!?؟\"'«»()[]"
SENTENCE_TERMINATORS = frozenset({".", "\u06D4", "؟", "?", "!"})

_DIGITS = "0-9\u0660-\u0669\u06F0-\u06F9"
_PUNCT_CLASS = re.escape(PUNCTUATION + "\u06D4")
_TOKEN_RE = re.compile(
    rf"[{_DIGITS}]+"          # ASCII or Arabic-Indic digit run
    rf"|[{_PUNCT_CLASS}]"     # single punctuation mark
    rf"|[^\s{_DIGITS}{_PUNCT_CLASS}]+"
)


@dataclass(frozen=True)
class Token:
    """Surface string with [start, end) offsets into the normalized text."""
    surface: str
    start: int
    end: int


def tokenize(text: str) -> List[Token]:
    """Split normalized text into word, digit-run and punctuation tokens."""
    return [Token(m.group(), m.start(), m.end()) for m in _TOKEN_RE.finditer(text)]


def split_sentences(text: str) -> List[List[str]]:
    """
    Normalize and cut raw text into tokenized sentences.

    Boundaries are newlines and sentence-final marks; the mark stays at the
    end of its sentence.
    """
    sentences: List[List[str]] = []
    for line in normalize(text).splitlines():
        current: List[str] = []
        for token in tokenize(line):
            current.append(token.surface)
            if token.surface in SENTENCE_TERMINATORS:
                sentences.append(current)
                current = []
        if current:
            sentences.append(current)
    return sentences
