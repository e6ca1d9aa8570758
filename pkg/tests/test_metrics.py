import pytest
from hypothesis import given, strategies as st

from src.corpus.models import AnnotatedSentence, TaggedSentence
from src.corpus.tagset import DEFAULT_TAGSET, ENTITY_LABELS
from src.errors import EvaluationError
from src.evaluation.metrics import (
    Scores,
    confusion_matrix,
    entity_metrics,
    evaluate,
    token_metrics,
)
from src.extraction.spans import EntitySpan, decode_spans


def spans_strategy():
    """Sorted, disjoint spans over a 12-token sentence."""
    @st.composite
    def build(draw):
        cuts = sorted(draw(st.sets(st.integers(min_value=0, max_value=12), max_size=8)))
        spans = []
        for start, stop in zip(cuts, cuts[1:]):
            if draw(st.booleans()):
                spans.append(EntitySpan(draw(st.sampled_from(ENTITY_LABELS)), start, stop - 1, ""))
        return spans
    return build()


class TestScores:
    def test_values(self):
        s = Scores(tp=2, fp=1, fn=1)
        assert s.precision == pytest.approx(2 / 3)
        assert s.recall == pytest.approx(2 / 3)
        assert s.f1 == pytest.approx(2 / 3)

    def test_all_zero(self):
        s = Scores(0, 0, 0)
        assert (s.precision, s.recall, s.f1) == (0.0, 0.0, 0.0)

    @given(st.integers(0, 50), st.integers(0, 50), st.integers(0, 50))
    def test_f1_between_precision_and_recall(self, tp, fp, fn):
        s = Scores(tp, fp, fn)
        low, high = sorted((s.precision, s.recall))
        assert low - 1e-12 <= s.f1 <= high + 1e-12
        if s.precision + s.recall > 0:
            assert s.f1 == pytest.approx(2 * s.precision * s.recall / (s.precision + s.recall))


class TestConfusion:
    def test_identical_is_diagonal(self, sample_tags):
        cm = confusion_matrix([sample_tags], [sample_tags])
        assert cm.is_diagonal()
        assert cm.total == len(sample_tags)
        assert token_metrics(cm).accuracy == 1.0

    def test_missed_entity(self):
        cm = confusion_matrix([["O", "B-LOC"]], [["O", "O"]])
        assert cm.counts[0, 0] == 1
        assert cm.counts[DEFAULT_TAGSET.index("B-LOC"), 0] == 1
        assert cm.scores("B-LOC") == Scores(tp=0, fp=0, fn=1)
        assert cm.scores("O") == Scores(tp=1, fp=1, fn=0)
        assert token_metrics(cm).accuracy == 0.5

    def test_absent_tag_scores_zero(self, sample_tags):
        metrics = token_metrics(confusion_matrix([sample_tags], [sample_tags]))
        assert metrics.per_tag["B-PERS"] == Scores(0, 0, 0)
        assert metrics.per_tag["B-PERS"].f1 == 0.0

    def test_macro_excludes_outside(self):
        metrics = token_metrics(confusion_matrix([["O", "O"]], [["O", "O"]]))
        assert metrics.accuracy == 1.0
        assert metrics.macro_f1 == 0.0

    def test_empty_matrix(self):
        with pytest.raises(EvaluationError):
            token_metrics(confusion_matrix([], []))

    def test_length_mismatch_names_sentence(self):
        with pytest.raises(EvaluationError, match="sentence 1"):
            confusion_matrix([["O"], ["O", "O"]], [["O"], ["O"]])

    def test_sentence_count_mismatch(self):
        with pytest.raises(EvaluationError):
            confusion_matrix([["O"]], [])


class TestEntityMetrics:
    def test_partial_recall(self, sample_tokens, sample_tags):
        gold = decode_spans(sample_tokens, sample_tags)
        pred = [span for span in gold if span.label != "EVT"]
        m = entity_metrics([gold], [pred])
        assert m.precision == 1.0
        assert m.recall == pytest.approx(2 / 3)
        assert m.f1 == pytest.approx(0.8)
        assert m.per_label["EVT"] == Scores(tp=0, fp=0, fn=1)

    def test_wrong_label_is_fp_and_fn(self):
        m = entity_metrics([[EntitySpan("LOC", 0, 0, "x")]], [[EntitySpan("ORG", 0, 0, "x")]])
        assert m.overall == Scores(tp=0, fp=1, fn=1)

    def test_boundary_mismatch(self):
        m = entity_metrics([[EntitySpan("EVT", 0, 1, "")]], [[EntitySpan("EVT", 0, 0, "")]])
        assert m.overall == Scores(tp=0, fp=1, fn=1)

    @given(st.lists(st.tuples(spans_strategy(), spans_strategy()), max_size=5))
    def test_swap_exchanges_precision_and_recall(self, pairs):
        gold = [g for g, _ in pairs]
        pred = [p for _, p in pairs]
        forward = entity_metrics(gold, pred)
        backward = entity_metrics(pred, gold)
        assert forward.precision == pytest.approx(backward.recall)
        assert forward.recall == pytest.approx(backward.precision)
        assert forward.f1 == pytest.approx(backward.f1)

    @given(st.lists(spans_strategy(), max_size=5))
    def test_identical_predictions(self, gold):
        m = entity_metrics(gold, gold)
        assert m.overall.fp == 0 and m.overall.fn == 0
        if m.overall.tp:
            assert m.f1 == 1.0


class TestReport:
    def test_evaluate_sample(self, sample_sentence):
        pred = AnnotatedSentence(sample_sentence.tokens, ("O",) * len(sample_sentence.tokens), "sample")
        report = evaluate([sample_sentence], [pred])
        record = report.to_record()
        assert record["entity_fn"] == 3
        assert record["entity_tp"] == 0
        assert record["token_accuracy"] == pytest.approx(5 / 9)
        assert list(record)[:3] == ["token_accuracy", "macro_precision", "macro_recall"]
        assert "B-LOC.recall" in record and "entity.LOC.f1" in record

    def test_format_table(self, sample_sentence):
        table = evaluate([sample_sentence], [sample_sentence]).format_table()
        assert "token accuracy   1.0000" in table
        assert table.splitlines()[0].startswith("tag")
        assert any(line.startswith("all") for line in table.splitlines())

    def test_format_table_columns(self, sample_sentence):
        lines = evaluate([sample_sentence], [sample_sentence]).format_table().splitlines()
        assert lines[0].split() == ["tag", "precision", "recall", "f1", "tp", "fp", "fn"]
        assert set(lines[1]) == {"-", " "}
        [b_loc] = [line for line in lines if line.startswith("B-LOC")]
        assert b_loc.split() == ["B-LOC", "1.0000", "1.0000", "1.0000", "1", "0", "0"]

    def test_stray_inside_prediction_is_repaired(self):
        gold = AnnotatedSentence(("في", "سطيف"), ("B-LOC", "I-LOC"))
        pred = TaggedSentence(("في", "سطيف"), ("I-LOC", "I-LOC"))
        report = evaluate([gold], [pred])
        assert report.entity.overall == Scores(tp=1, fp=0, fn=0)
        assert report.token.accuracy == 0.5
