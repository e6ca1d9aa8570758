"""Versioned plain-text model file.

Layout, one item per line:

    HAZARDTAG 1
    CONFIG n          n "key value" lines (TrainConfig snapshot)
    TAGSET T          T tags
    VOCAB V min_freq  V tokens
    EMB V d           V rows of d reals
    LSTM_FWD h d      4h rows of d, 4h rows of h, one bias row of 4h
    LSTM_BWD h d      same
    PROJ T 2h         T rows of 2h, one bias row of T
    CRF T             T transition rows, start row, end row
    END

Reals use Python's shortest round-trip repr, so load(save(m)) is exact.
"""

import logging
from pathlib import Path
from typing import Iterator, List, Tuple, Union

import numpy as np

from src.corpus.tagset import TagSet, canonicalize_tag
from src.errors import ConfigError, HazardError, ModelFormatError, TagValidationError
from src.features.embeddings import EmbeddingMatrix
from src.features.vocab import Vocabulary
from src.tagger.config import TrainConfig
from src.tagger.crf import CrfParams
from src.tagger.lstm import LstmParams
from src.tagger.model import TaggerModel

logger = logging.getLogger(__name__)

MAGIC = "HAZARDTAG"
FORMAT_VERSION = 1


def _real(x: float) -> str:
    return repr(float(x))


def _row(values) -> str:
    return " ".join(_real(x) for x in values)


def _config_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return _real(value)
    return str(value)


def _lstm_lines(name: str, params: LstmParams) -> Iterator[str]:
    yield f"{name} {params.hidden_size} {params.input_size}"
    for row in params.w_input:
        yield _row(row)
    for row in params.w_hidden:
        yield _row(row)
    yield _row(params.bias)


def dump_model(model: TaggerModel) -> str:
    """Serialize a model to the text format."""
    lines: List[str] = [f"{MAGIC} {FORMAT_VERSION}"]
    config = model.config.to_dict()
    lines.append(f"CONFIG {len(config)}")
    lines.extend(f"{key} {_config_value(value)}" for key, value in config.items())

    lines.append(f"TAGSET {len(model.tagset)}")
    lines.extend(model.tagset.tags)

    for token in model.vocab.tokens:
        if not token or token != token.strip() or "\n" in token:
            raise ValueError(f"vocabulary token {token!r} cannot be written one per line")
    lines.append(f"VOCAB {len(model.vocab)} {model.vocab.min_freq}")
    lines.extend(model.vocab.tokens)

    vectors = model.embeddings.vectors
    lines.append(f"EMB {vectors.shape[0]} {vectors.shape[1]}")
    lines.extend(_row(row) for row in vectors)

    lines.extend(_lstm_lines("LSTM_FWD", model.forward))
    lines.extend(_lstm_lines("LSTM_BWD", model.backward))

    t, two_h = model.projection.shape
    lines.append(f"PROJ {t} {two_h}")
    lines.extend(_row(row) for row in model.projection)
    lines.append(_row(model.projection_bias))

    lines.append(f"CRF {model.crf.num_tags}")
    lines.extend(_row(row) for row in model.crf.transitions)
    lines.append(_row(model.crf.start))
    lines.append(_row(model.crf.end))
    lines.append("END")
    return "\n".join(lines) + "\n"


def save_model(model: TaggerModel, path: Union[str, Path]) -> None:
    Path(path).write_text(dump_model(model), encoding="utf-8")
    logger.info(f"✅ Model saved to {path}")


class _Reader:
    """Line cursor that reports 1-based line numbers in errors."""

    def __init__(self, text: str):
        self._lines = text.split("\n")
        if self._lines and self._lines[-1] == "":
            self._lines.pop()
        self._position = 0

    @property
    def line_number(self) -> int:
        return self._position

    def next(self) -> str:
        if self._position >= len(self._lines):
            raise ModelFormatError("unexpected end of file", self._position + 1)
        line = self._lines[self._position]
        self._position += 1
        return line

    def header(self, name: str, arity: int) -> Tuple[int, ...]:
        fields = self.next().split()
        if not fields or fields[0] != name:
            raise ModelFormatError(f"expected section {name}", self.line_number)
        if len(fields) != arity + 1 or not all(f.isdigit() for f in fields[1:]):
            raise ModelFormatError(f"{name} header needs {arity} non-negative integer(s)", self.line_number)
        return tuple(int(f) for f in fields[1:])

    def row(self, width: int) -> np.ndarray:
        fields = self.next().split()
        if len(fields) != width:
            raise ModelFormatError(f"expected {width} values, found {len(fields)}", self.line_number)
        try:
            values = np.array([float(f) for f in fields], dtype=np.float64)
        except ValueError:
            raise ModelFormatError("non-numeric value", self.line_number)
        if not np.all(np.isfinite(values)):
            raise ModelFormatError("non-finite value", self.line_number)
        return values

    def matrix(self, rows: int, cols: int) -> np.ndarray:
        if rows == 0:
            return np.zeros((0, cols))
        return np.vstack([self.row(cols) for _ in range(rows)])

    def lstm(self, name: str, expected_input: int) -> LstmParams:
        h, d = self.header(name, 2)
        if d != expected_input:
            raise ModelFormatError(f"{name} input size {d} != embedding dim {expected_input}", self.line_number)
        return LstmParams(self.matrix(4 * h, d), self.matrix(4 * h, h), self.row(4 * h))


def parse_model(text: str) -> TaggerModel:
    """
    Parse the text format.

    Raises:
        ModelFormatError: wrong magic or version, malformed section,
            inconsistent dimensions
    """
    reader = _Reader(text)
    magic = reader.next().split()
    if magic != [MAGIC, str(FORMAT_VERSION)]:
        raise ModelFormatError(f'expected "{MAGIC} {FORMAT_VERSION}" header', 1)

    (n,) = reader.header("CONFIG", 1)
    settings = {}
    for _ in range(n):
        key, _, value = reader.next().partition(" ")
        settings[key] = value
    try:
        config = TrainConfig.from_dict(settings)
    except ConfigError as e:
        raise ModelFormatError(f"bad CONFIG section: {e}", reader.line_number)

    (t,) = reader.header("TAGSET", 1)
    try:
        tags = tuple(reader.next() for _ in range(t))
        for tag in tags:
            if canonicalize_tag(tag) != tag:
                raise TagValidationError(f"tag {tag!r} is not in canonical form")
        tagset = TagSet(tags)
    except HazardError as e:
        if isinstance(e, ModelFormatError):
            raise
        raise ModelFormatError(f"bad TAGSET section: {e}", reader.line_number)

    v, min_freq = reader.header("VOCAB", 2)
    tokens = tuple(reader.next() for _ in range(v))
    try:
        vocab = Vocabulary(tokens, min_freq)
    except ValueError as e:
        raise ModelFormatError(f"bad VOCAB section: {e}", reader.line_number)

    rows, d = reader.header("EMB", 2)
    if rows != v:
        raise ModelFormatError(f"EMB has {rows} rows for {v} vocabulary tokens", reader.line_number)
    embeddings = EmbeddingMatrix(reader.matrix(rows, d))

    forward = reader.lstm("LSTM_FWD", d)
    backward = reader.lstm("LSTM_BWD", d)

    proj_t, two_h = reader.header("PROJ", 2)
    projection = reader.matrix(proj_t, two_h)
    projection_bias = reader.row(proj_t)

    (crf_t,) = reader.header("CRF", 1)
    crf = CrfParams(reader.matrix(crf_t, crf_t), reader.row(crf_t), reader.row(crf_t))

    if reader.next() != "END":
        raise ModelFormatError("expected END", reader.line_number)

    try:
        return TaggerModel(
            embeddings=embeddings,
            forward=forward,
            backward=backward,
            projection=projection,
            projection_bias=projection_bias,
            crf=crf,
            tagset=tagset,
            vocab=vocab,
            config=config,
        )
    except ValueError as e:
        raise ModelFormatError(str(e))


def load_model(path: Union[str, Path]) -> TaggerModel:
    model = parse_model(Path(path).read_text(encoding="utf-8"))
    logger.info(f"✅ Loaded model from {path}: V={len(model.vocab)}, h={model.hidden_size}, T={len(model.tagset)}")
    return model
