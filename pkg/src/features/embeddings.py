"""Embedding matrices: seeded initialisation and the plain-text vectors format."""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

import numpy as np

from src.errors import EmbeddingFormatError
from src.features.vocab import PAD_INDEX, PAD_TOKEN, UNK_TOKEN, Vocabulary
from src.rng import Lcg64

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EmbeddingMatrix:
    """V x d float64 matrix, one row per vocabulary index."""
    vectors: np.ndarray

    def __post_init__(self):
        vectors = np.asarray(self.vectors, dtype=np.float64)
        if vectors.ndim != 2:
            raise ValueError(f"embedding matrix must be 2-D, got shape {vectors.shape}")
        if not np.all(np.isfinite(vectors)):
            raise ValueError("embedding matrix has non-finite entries")
        object.__setattr__(self, "vectors", vectors)

    @property
    def vocab_size(self) -> int:
        return self.vectors.shape[0]

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]


def random_init(vocab_size: int, dim: int, seed: int, scale: float) -> EmbeddingMatrix:
    """Uniform [-scale, +scale] rows from Lcg64(seed), row-major; PAD row zero."""
    if vocab_size < 2:
        raise ValueError(f"vocabulary size must be >= 2, got {vocab_size}")
    if dim < 1:
        raise ValueError(f"embedding dimension must be >= 1, got {dim}")
    vectors = Lcg64(seed).uniform_array((vocab_size, dim), scale)
    vectors[PAD_INDEX] = 0.0
    return EmbeddingMatrix(vectors)


def _parse_reals(fields, path, line_number) -> np.ndarray:
    try:
        return np.array([float(x) for x in fields], dtype=np.float64)
    except ValueError:
        raise EmbeddingFormatError("non-numeric vector component", str(path), line_number)


def load_pretrained(
    path: Union[str, Path],
    vocab: Vocabulary,
    dim: Optional[int] = None,
    seed: int = 13,
    scale: float = 0.1,
) -> EmbeddingMatrix:
    """
    Build an embedding matrix from a "V d" header plus "token x1 .. xd" rows.

    Vocabulary tokens found in the file take the file's numbers; every other
    row, PAD and UNK included, comes from random_init(seed, scale).

    Args:
        path: UTF-8 vectors file
        vocab: Vocabulary whose rows are filled
        dim: Expected dimension; a header declaring another one is an error
        seed: Seed for rows not found in the file
        scale: Half-width of the random interval

    Raises:
        EmbeddingFormatError: bad header, wrong row width, non-numeric value
    """
    with open(path, "r", encoding="utf-8") as f:
        header = f.readline().split()
        if len(header) != 2 or not all(h.isdigit() for h in header):
            raise EmbeddingFormatError('header must be "V d"', str(path), 1)
        declared_rows, declared_dim = int(header[0]), int(header[1])
        if dim is not None and declared_dim != dim:
            raise EmbeddingFormatError(
                f"file declares dimension {declared_dim}, configuration expects {dim}", str(path), 1
            )
        matrix = random_init(len(vocab), declared_dim, seed, scale).vectors
        rows = found = 0
        for line_number, line in enumerate(f, 2):
            fields = line.split()
            if not fields:
                continue
            rows += 1
            token, values = fields[0], fields[1:]
            if len(values) != declared_dim:
                raise EmbeddingFormatError(
                    f"row has {len(values)} components, header declares {declared_dim}", str(path), line_number
                )
            vector = _parse_reals(values, path, line_number)
            if token in (PAD_TOKEN, UNK_TOKEN) or token not in vocab:
                continue
            matrix[vocab.index(token)] = vector
            found += 1
    if rows != declared_rows:
        raise EmbeddingFormatError(f"header declares {declared_rows} rows, file has {rows}", str(path))
    logger.info(f"✅ Pretrained vectors cover {found} of {len(vocab) - 2} vocabulary tokens")
    return EmbeddingMatrix(matrix)


def save_embeddings(path: Union[str, Path], vocab: Vocabulary, matrix: EmbeddingMatrix) -> None:
    """Write every vocabulary row in the vectors format."""
    if matrix.vocab_size != len(vocab):
        raise ValueError(f"matrix has {matrix.vocab_size} rows for {len(vocab)} tokens")
    lines = [f"{matrix.vocab_size} {matrix.dim}"]
    for token, row in zip(vocab.tokens, matrix.vectors):
        lines.append(" ".join([token, *(repr(float(x)) for x in row)]))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
