"""Token vocabulary with reserved PAD/UNK indices, one-hot and term-frequency encodings."""

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Sequence

import numpy as np

logger = logging.getLogger(__name__)

PAD_TOKEN = "<pad>"
UNK_TOKEN = "<unk>"
PAD_INDEX = 0
UNK_INDEX = 1


@dataclass(frozen=True)
class Vocabulary:
    """Injective token -> index map; indices 0 and 1 are PAD and UNK."""
    tokens: Sequence[str]
    min_freq: int = 1
    _index: Dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        tokens = tuple(self.tokens)
        if tokens[:2] != (PAD_TOKEN, UNK_TOKEN):
            raise ValueError("vocabulary must start with the PAD and UNK tokens")
        if len(set(tokens)) != len(tokens):
            raise ValueError("vocabulary tokens must be unique")
        object.__setattr__(self, "tokens", tokens)
        object.__setattr__(self, "_index", {token: i for i, token in enumerate(tokens)})

    def __len__(self) -> int:
        return len(self.tokens)

    def __contains__(self, token: str) -> bool:
        return token in self._index

    def index(self, token: str) -> int:
        """Index of the token, UNK_INDEX when out of vocabulary or reserved."""
        if token == PAD_TOKEN:
            return UNK_INDEX
        return self._index.get(token, UNK_INDEX)

    def encode(self, tokens: Iterable[str]) -> List[int]:
        return [self.index(token) for token in tokens]


def build_vocab(sentences: Iterable[Sequence[str]], min_freq: int = 1) -> Vocabulary:
    """
    Index tokens seen at least min_freq times.

    Args:
        sentences: Token sequences
        min_freq: Minimum corpus frequency (>= 1)

    Returns:
        Vocabulary ordered by descending frequency, ties lexicographic
    """
    if min_freq < 1:
        raise ValueError(f"min_freq must be >= 1, got {min_freq}")
    counts = Counter(token for tokens in sentences for token in tokens)
    for reserved in (PAD_TOKEN, UNK_TOKEN):
        counts.pop(reserved, None)
    kept = sorted((t for t, c in counts.items() if c >= min_freq), key=lambda t: (-counts[t], t))
    logger.info(f"Vocabulary: {len(kept)} of {len(counts)} token types kept at min_freq={min_freq}")
    return Vocabulary(tokens=(PAD_TOKEN, UNK_TOKEN, *kept), min_freq=min_freq)


def one_hot(index: int, size: int) -> np.ndarray:
    """Vector of length `size` with a single 1.0 at `index`."""
    if not 0 <= index < size:
        raise ValueError(f"index {index} outside [0, {size})")
    vector = np.zeros(size, dtype=np.float64)
    vector[index] = 1.0
    return vector


@dataclass(frozen=True)
class TermFrequencyVector:
    """Sparse count vector over a vocabulary."""
    size: int
    counts: Dict[int, int]

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def __getitem__(self, index: int) -> int:
        return self.counts.get(index, 0)

    def to_dense(self) -> np.ndarray:
        dense = np.zeros(self.size, dtype=np.float64)
        for index, count in self.counts.items():
            dense[index] = count
        return dense


def tf_vector(tokens: Iterable[str], vocab: Vocabulary) -> TermFrequencyVector:
    """Count tokens by vocabulary index; out-of-vocabulary tokens accumulate on UNK."""
    counts = Counter(vocab.index(token) for token in tokens)
    return TermFrequencyVector(size=len(vocab), counts=dict(sorted(counts.items())))
