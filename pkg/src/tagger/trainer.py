"""Per-sentence gradient descent with global-norm clipping."""

import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from src.corpus.models import AnnotatedSentence
from src.errors import TrainingDivergenceError
from src.rng import Lcg64
from src.tagger.config import TrainConfig
from src.tagger.gradients import Gradients, loss_and_gradients
from src.tagger.model import TaggerModel, tag

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EpochLog:
    """Mean training loss and dev token accuracy (None when dev has no tokens)."""
    epoch: int
    train_loss: float
    dev_accuracy: Optional[float]

    def format(self) -> str:
        accuracy = "n/a" if self.dev_accuracy is None else f"{self.dev_accuracy:.4f}"
        return f"epoch {self.epoch} loss {self.train_loss:.6f} dev_acc {accuracy}"


@dataclass
class TrainResult:
    model: TaggerModel
    log: List[EpochLog] = field(default_factory=list)

    def format_log(self) -> str:
        return "".join(entry.format() + "\n" for entry in self.log)


def clip_gradients(grads: Gradients, threshold: float) -> float:
    """Rescale in place so the global L2 norm is at most threshold; returns the original norm."""
    norm = grads.global_norm()
    if norm > threshold:
        grads.scale(threshold / norm)
    return norm


def apply_gradients(model: TaggerModel, grads: Gradients, learning_rate: float) -> None:
    params = model.parameters()
    for name, g in grads.dense.items():
        params[name] -= learning_rate * g
    vectors = params["embeddings"]
    for row, g in grads.embedding_rows.items():
        vectors[row] -= learning_rate * g


def token_accuracy(model: TaggerModel, sentences: Sequence[AnnotatedSentence]) -> Optional[float]:
    """Share of tokens whose decoded tag equals the gold tag; None without tokens."""
    correct = total = 0
    for sentence in sentences:
        predicted = tag(model, sentence.tokens)
        correct += sum(p == g for p, g in zip(predicted, sentence.tags))
        total += len(sentence.tokens)
    return correct / total if total else None


def train(
    train_set: Sequence[AnnotatedSentence],
    dev_set: Sequence[AnnotatedSentence],
    config: TrainConfig,
    initial: TaggerModel,
) -> TrainResult:
    """
    Train a copy of `initial`; the initial model is left untouched.

    Each epoch visits every training sentence once (shuffled by Lcg64(seed)
    when config.shuffle), takes one clipped gradient step per sentence, then
    measures dev token accuracy.

    Raises:
        ValueError: empty training set with epochs > 0
        TrainingDivergenceError: a non-finite sentence loss
    """
    model = initial.copy().with_config(config)
    if config.epochs == 0:
        return TrainResult(model)
    if not train_set:
        raise ValueError("training set is empty")

    encoded = [
        (position, model.token_ids(s.tokens), model.tagset.encode(s.tags))
        for position, s in enumerate(train_set)
        if s.tokens
    ]
    if not encoded:
        raise ValueError("training set has no tokens")

    rng = Lcg64(config.seed)
    order = list(range(len(encoded)))
    result = TrainResult(model)
    for epoch in range(1, config.epochs + 1):
        if config.shuffle:
            rng.shuffle(order)
        total = 0.0
        for index in order:
            position, token_ids, gold = encoded[index]
            loss, grads = loss_and_gradients(model, token_ids, gold)
            if not math.isfinite(loss):
                logger.error(f"❌ Non-finite loss at epoch {epoch}, sentence {position}")
                raise TrainingDivergenceError(epoch, position, loss)
            clip_gradients(grads, config.clip)
            apply_gradients(model, grads, config.learning_rate)
            total += loss
        entry = EpochLog(epoch, total / len(encoded), token_accuracy(model, dev_set))
        result.log.append(entry)
        logger.info(f"✅ {entry.format()}")
    return result
