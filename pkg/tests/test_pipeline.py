import pytest

from src.corpus.models import AnnotatedSentence, Document, Sentence, TaggedSentence
from src.errors import ConfigError
from src.extraction.pipeline import fill_events, preprocess, tag_sentences
from src.extraction.template import HazardEvent


class TestPreprocess:
    def test_splits_sentences_in_document_order(self):
        documents = [
            Document(id="d1", text="حجز أكثر من قنطار. في سطيف\nمديرية التجارة", source="report"),
            Document(id="d2", text="وهران", source="social"),
        ]
        assert preprocess(documents) == [
            Sentence(("حجز", "اكثر", "من", "قنطار", "."), "d1"),
            Sentence(("في", "سطيف"), "d1"),
            Sentence(("مديرية", "التجارة"), "d1"),
            Sentence(("وهران",), "d2"),
        ]

    def test_no_documents(self):
        assert preprocess([]) == []


class TestTagSentences:
    def test_gold_tags_pass_through(self, sample_sentence):
        assert tag_sentences([sample_sentence]) == [
            TaggedSentence(sample_sentence.tokens, sample_sentence.tags, "sample")
        ]

    def test_untagged_without_model(self):
        with pytest.raises(ConfigError):
            tag_sentences([Sentence(("سطيف",))])

    def test_model_tags(self, lookup_model, sample_tokens, sample_tags):
        [tagged] = tag_sentences([Sentence(tuple(sample_tokens), "d1")], lookup_model)
        assert tagged.tags == tuple(sample_tags)
        assert tagged.doc_id == "d1"

    def test_empty_sentence_with_model(self, lookup_model):
        assert tag_sentences([Sentence(())], lookup_model) == [TaggedSentence((), ())]


class TestFillEvents:
    def test_skip_empty(self, sample_sentence):
        empty = AnnotatedSentence(("لا", "شيء"), ("O", "O"), "d2")
        events = fill_events(tag_sentences([sample_sentence, empty]), skip_empty=True)
        assert [event.doc_id for event in events] == ["sample"]

    def test_keeps_empty_by_default(self):
        events = fill_events(tag_sentences([AnnotatedSentence(("لا",), ("O",), "d3")]))
        assert events == [HazardEvent(doc_id="d3")]

    def test_stray_inside_tag_fills_slot(self):
        events = fill_events([TaggedSentence(("في", "سطيف"), ("O", "I-LOC"))])
        assert events[0].location == "سطيف"

    def test_document_to_event_with_model(self, lookup_model, sample_tokens):
        document = Document(id="d4", text=" ".join(sample_tokens), source="website")
        [event] = fill_events(tag_sentences(preprocess([document]), lookup_model))
        assert event.doc_id == "d4"
        assert event.quantity == "قنطار"
        assert event.hazard_type == "اللحم الحمراء"
        assert event.location == "سطيف"


class TestTaggedSentence:
    def test_may_be_empty(self):
        assert TaggedSentence((), ()).tags == ()

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            TaggedSentence(("a",), ())

    def test_canonicalizes_long_names(self):
        assert TaggedSentence(("a",), ("i-location",)).tags == ("I-LOC",)

    def test_dict_layout(self, sample_tokens, sample_tags):
        sentence = TaggedSentence(sample_tokens, sample_tags, "x")
        assert TaggedSentence.from_dict(sentence.to_dict()) == sentence
        assert list(sentence.to_dict()) == ["tokens", "tags", "doc_id"]
