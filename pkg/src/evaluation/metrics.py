"""Token- and entity-level precision, recall, F1 and accuracy."""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Sequence, Union

import numpy as np
from tabulate import tabulate

from src.corpus.models import AnnotatedSentence, TaggedSentence
from src.corpus.tagset import DEFAULT_TAGSET, ENTITY_LABELS, OUTSIDE, TagSet
from src.errors import EvaluationError
from src.extraction.spans import EntitySpan, decode_spans

logger = logging.getLogger(__name__)

SCORE_HEADERS = ["precision", "recall", "f1", "tp", "fp", "fn"]


def _ratio(numerator: int, denominator: int) -> float:
    return numerator / denominator if denominator else 0.0


def _score_row(name: str, s: "Scores") -> List[Any]:
    return [name, s.precision, s.recall, s.f1, s.tp, s.fp, s.fn]


@dataclass(frozen=True)
class Scores:
    """Counts and the P/R/F1 derived from them; every 0/0 is 0."""
    tp: int
    fp: int
    fn: int

    @property
    def precision(self) -> float:
        return _ratio(self.tp, self.tp + self.fp)

    @property
    def recall(self) -> float:
        return _ratio(self.tp, self.tp + self.fn)

    @property
    def f1(self) -> float:
        # equals 2PR/(P+R) whenever that is defined
        return _ratio(2 * self.tp, 2 * self.tp + self.fp + self.fn)


@dataclass(frozen=True)
class ConfusionMatrix:
    """Rows are gold tags, columns predicted tags, in tag-set order."""
    tagset: TagSet
    counts: np.ndarray

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def is_diagonal(self) -> bool:
        return self.total == int(np.trace(self.counts))

    def scores(self, tag: str) -> Scores:
        k = self.tagset.index(tag)
        tp = int(self.counts[k, k])
        return Scores(tp=tp, fp=int(self.counts[:, k].sum()) - tp, fn=int(self.counts[k, :].sum()) - tp)


def confusion_matrix(
    gold: Sequence[Sequence[str]],
    pred: Sequence[Sequence[str]],
    tagset: TagSet = DEFAULT_TAGSET,
) -> ConfusionMatrix:
    """
    Tally (gold tag, predicted tag) pairs over aligned sentences.

    Raises:
        EvaluationError: different sentence counts, or a sentence whose
            gold and predicted lengths differ
    """
    if len(gold) != len(pred):
        raise EvaluationError(f"{len(gold)} gold sentences but {len(pred)} predicted")
    counts = np.zeros((len(tagset), len(tagset)), dtype=np.int64)
    for index, (gold_tags, pred_tags) in enumerate(zip(gold, pred)):
        if len(gold_tags) != len(pred_tags):
            raise EvaluationError(
                f"sentence {index}: {len(gold_tags)} gold tags but {len(pred_tags)} predicted"
            )
        for g, p in zip(gold_tags, pred_tags):
            counts[tagset.index(g), tagset.index(p)] += 1
    return ConfusionMatrix(tagset, counts)


@dataclass(frozen=True)
class TokenMetrics:
    per_tag: Dict[str, Scores]
    accuracy: float
    macro_precision: float
    macro_recall: float
    macro_f1: float


def token_metrics(cm: ConfusionMatrix) -> TokenMetrics:
    """
    Per-tag scores, accuracy and macro averages.

    Macro averages are unweighted means over every tag except "O".

    Raises:
        EvaluationError: the matrix counts no tokens
    """
    if cm.total == 0:
        raise EvaluationError("confusion matrix is empty")
    per_tag = {tag: cm.scores(tag) for tag in cm.tagset.tags}
    entity_tags = [tag for tag in cm.tagset.tags if tag != OUTSIDE]
    n = len(entity_tags)
    return TokenMetrics(
        per_tag=per_tag,
        accuracy=float(np.trace(cm.counts)) / cm.total,
        macro_precision=sum(per_tag[t].precision for t in entity_tags) / n if n else 0.0,
        macro_recall=sum(per_tag[t].recall for t in entity_tags) / n if n else 0.0,
        macro_f1=sum(per_tag[t].f1 for t in entity_tags) / n if n else 0.0,
    )


@dataclass(frozen=True)
class EntityMetrics:
    """Micro-aggregated exact-match scores plus one Scores per class."""
    overall: Scores
    per_label: Dict[str, Scores] = field(default_factory=dict)

    @property
    def precision(self) -> float:
        return self.overall.precision

    @property
    def recall(self) -> float:
        return self.overall.recall

    @property
    def f1(self) -> float:
        return self.overall.f1


def entity_metrics(
    gold: Sequence[Sequence[EntitySpan]],
    pred: Sequence[Sequence[EntitySpan]],
) -> EntityMetrics:
    """
    Exact-match entity scoring.

    A predicted span is a true positive iff the same sentence has a gold
    span with identical label, start and end.
    """
    if len(gold) != len(pred):
        raise EvaluationError(f"{len(gold)} gold sentences but {len(pred)} predicted")
    counts = {label: [0, 0, 0] for label in ENTITY_LABELS}
    for gold_spans, pred_spans in zip(gold, pred):
        gold_keys = {span.key for span in gold_spans}
        pred_keys = {span.key for span in pred_spans}
        for label, _, _ in pred_keys & gold_keys:
            counts[label][0] += 1
        for label, _, _ in pred_keys - gold_keys:
            counts[label][1] += 1
        for label, _, _ in gold_keys - pred_keys:
            counts[label][2] += 1
    per_label = {label: Scores(*c) for label, c in counts.items()}
    overall = Scores(
        tp=sum(s.tp for s in per_label.values()),
        fp=sum(s.fp for s in per_label.values()),
        fn=sum(s.fn for s in per_label.values()),
    )
    return EntityMetrics(overall, per_label)


@dataclass(frozen=True)
class MetricsReport:
    confusion: ConfusionMatrix
    token: TokenMetrics
    entity: EntityMetrics

    def to_record(self) -> Dict[str, Any]:
        """Flat record with fixed field order."""
        record: Dict[str, Any] = {
            "token_accuracy": self.token.accuracy,
            "macro_precision": self.token.macro_precision,
            "macro_recall": self.token.macro_recall,
            "macro_f1": self.token.macro_f1,
            "entity_precision": self.entity.precision,
            "entity_recall": self.entity.recall,
            "entity_f1": self.entity.f1,
            "entity_tp": self.entity.overall.tp,
            "entity_fp": self.entity.overall.fp,
            "entity_fn": self.entity.overall.fn,
        }
        for tag, s in self.token.per_tag.items():
            record.update({
                f"{tag}.precision": s.precision,
                f"{tag}.recall": s.recall,
                f"{tag}.f1": s.f1,
                f"{tag}.tp": s.tp,
                f"{tag}.fp": s.fp,
                f"{tag}.fn": s.fn,
            })
        for label, s in self.entity.per_label.items():
            record.update({
                f"entity.{label}.precision": s.precision,
                f"entity.{label}.recall": s.recall,
                f"entity.{label}.f1": s.f1,
            })
        return record

    def format_table(self) -> str:
        """Per-tag and per-label tables plus accuracy and macro averages."""
        tag_rows = [_score_row(tag, s) for tag, s in self.token.per_tag.items()]
        entity_rows = [_score_row(label, s) for label, s in self.entity.per_label.items()]
        entity_rows.append(_score_row("all", self.entity.overall))
        lines: List[str] = [
            tabulate(tag_rows, headers=["tag", *SCORE_HEADERS], floatfmt=".4f"),
            "",
            f"token accuracy   {self.token.accuracy:.4f}",
            f"macro P/R/F1     {self.token.macro_precision:.4f} "
            f"{self.token.macro_recall:.4f} {self.token.macro_f1:.4f}",
            "",
            tabulate(entity_rows, headers=["entity", *SCORE_HEADERS], floatfmt=".4f"),
        ]
        return "\n".join(lines) + "\n"


def evaluate(
    gold: Sequence[AnnotatedSentence],
    pred: Sequence[Union[AnnotatedSentence, TaggedSentence]],
    tagset: TagSet = DEFAULT_TAGSET,
) -> MetricsReport:
    """
    Confusion matrix, token metrics and entity metrics for aligned corpora.

    Predicted tags need not be valid IOB; spans are read with the stray-I rule.
    """
    cm = confusion_matrix([s.tags for s in gold], [s.tags for s in pred], tagset)
    entities = entity_metrics(
        [decode_spans(s.tokens, s.tags) for s in gold],
        [decode_spans(s.tokens, s.tags) for s in pred],
    )
    report = MetricsReport(cm, token_metrics(cm), entities)
    logger.info(
        f"✅ Evaluated {len(gold)} sentences: accuracy {report.token.accuracy:.4f}, entity F1 {entities.f1:.4f}"
    )
    return report
