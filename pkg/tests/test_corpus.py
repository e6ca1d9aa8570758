import json
from collections import Counter

import pytest
from hypothesis import given, strategies as st

from src.corpus.loader import dump_corpus, load_corpus, load_documents, load_sentences, load_tagged, save_corpus
from src.corpus.models import AnnotatedSentence, Document, TaggedSentence
from src.corpus.splitter import split_corpus
from src.corpus.synthetic import HAZARDS, LOCATIONS, QUANTITIES, VERBS, generate_synthetic_corpus
from src.corpus.tagset import validate_tags
from src.errors import CorpusFormatError, TagValidationError


def _write(path, records):
    path.write_text("".join(json.dumps(r, ensure_ascii=False) + "\n" for r in records), encoding="utf-8")
    return path


def _sentences(n):
    return [AnnotatedSentence(tokens=(f"w{i}",), tags=("O",), doc_id=str(i)) for i in range(n)]


class TestLoadCorpus:
    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.jsonl"
        path.write_text("", encoding="utf-8")
        assert load_corpus(path) == []

    def test_sample_sentence_with_long_tag_names(self, tmp_path, sample_tokens):
        tags = "O O O B-QUANT O B-EVENT I-EVENT O B-LOC".split()
        path = _write(tmp_path / "c.jsonl", [{"tokens": list(sample_tokens), "tags": tags}])
        (sentence,) = load_corpus(path)
        assert len(sentence) == 9
        assert sentence.tags[5:7] == ("B-EVT", "I-EVT")

    def test_length_mismatch_names_line(self, tmp_path, sample_tokens, sample_tags):
        good = {"tokens": list(sample_tokens), "tags": list(sample_tags)}
        bad = {"tokens": list(sample_tokens), "tags": list(sample_tags[:8])}
        path = _write(tmp_path / "c.jsonl", [good, bad])
        with pytest.raises(CorpusFormatError) as info:
            load_corpus(path)
        assert info.value.line_number == 2
        assert info.value.exit_code == 2

    def test_invalid_tag_string(self, tmp_path):
        path = _write(tmp_path / "c.jsonl", [{"tokens": ["a"], "tags": ["B-FOOD"]}])
        with pytest.raises(CorpusFormatError):
            load_corpus(path)

    def test_invalid_iob_sequence(self, tmp_path):
        path = _write(tmp_path / "c.jsonl", [{"tokens": ["a", "b"], "tags": ["B-LOC", "I-ORG"]}])
        with pytest.raises(CorpusFormatError, match="index 1"):
            load_corpus(path)

    def test_malformed_json(self, tmp_path):
        path = tmp_path / "c.jsonl"
        path.write_text('{"tokens": ["a"], "tags": ["O"]}\n{not json\n', encoding="utf-8")
        with pytest.raises(CorpusFormatError) as info:
            load_corpus(path)
        assert str(info.value).startswith(f"{path}:2:")

    def test_round_trip(self, tmp_path, sample_sentence):
        path = tmp_path / "c.jsonl"
        save_corpus([sample_sentence, AnnotatedSentence(("سطيف",), ("B-LOC",))], path)
        first = load_corpus(path)
        assert dump_corpus(first) == path.read_text(encoding="utf-8")
        assert load_corpus(path) == first

    def test_record_key_order(self, sample_sentence):
        line = dump_corpus([sample_sentence])
        assert list(json.loads(line)) == ["tokens", "tags", "doc_id"]


class TestSentencesAndDocuments:
    def test_load_sentences_ignores_tags(self, tmp_path):
        path = _write(tmp_path / "s.jsonl", [{"tokens": ["a", "b"], "tags": ["O", "O"], "doc_id": "d"}, {"tokens": []}])
        sentences = load_sentences(path)
        assert sentences[0].tokens == ("a", "b")
        assert sentences[0].doc_id == "d"
        assert sentences[1].tokens == ()

    def test_load_documents(self, tmp_path):
        path = _write(tmp_path / "d.jsonl", [
            {"id": "1", "text": "نص", "source": "report", "date": "2020-03-01"},
            {"id": "2", "text": "نص", "source": "social"},
        ])
        documents = load_documents(path)
        assert [d.id for d in documents] == ["1", "2"]
        assert documents[0].date == "2020-03-01"

    @pytest.mark.parametrize("record", [
        {"id": "", "text": "x", "source": "report"},
        {"id": "1", "text": "", "source": "report"},
        {"id": "1", "text": "x", "source": "newspaper"},
        {"id": "1", "text": "x", "source": "report", "date": "yesterday"},
        {"id": 1, "text": "x", "source": "report"},
    ])
    def test_invalid_documents(self, tmp_path, record):
        path = _write(tmp_path / "d.jsonl", [record])
        with pytest.raises(CorpusFormatError) as info:
            load_documents(path)
        assert info.value.line_number == 1

    def test_duplicate_document_id(self, tmp_path):
        record = {"id": "1", "text": "x", "source": "website"}
        path = _write(tmp_path / "d.jsonl", [record, record])
        with pytest.raises(CorpusFormatError, match="duplicate"):
            load_documents(path)

    def test_document_to_dict_round_trip(self):
        document = Document(id="a", text="نص", source="website", date="2019-12-31")
        assert Document.from_dict(document.to_dict()) == document


class TestAnnotatedSentence:
    def test_canonicalizes_tags(self):
        sentence = AnnotatedSentence(("a",), ("b-location",))
        assert sentence.tags == ("B-LOC",)

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            AnnotatedSentence((), ())

    def test_rejects_invalid_sequence(self):
        with pytest.raises(TagValidationError):
            AnnotatedSentence(("a",), ("I-LOC",))


class TestSplit:
    def test_everything_to_train(self):
        split = split_corpus(_sentences(10), (1.0, 0.0, 0.0), seed=3)
        assert split.sizes() == (10, 0, 0)

    def test_floor_then_remainder(self):
        assert split_corpus(_sentences(10), (0.8, 0.1, 0.1)).sizes() == (8, 1, 1)

    def test_decimal_ratio_tolerance(self):
        assert split_corpus(_sentences(100), (0.29, 0.71, 0.0)).sizes()[0] == 29

    def test_same_seed_same_order(self):
        corpus = _sentences(30)
        assert split_corpus(corpus, seed=5) == split_corpus(corpus, seed=5)

    def test_different_seed_differs(self):
        corpus = _sentences(30)
        assert split_corpus(corpus, seed=5).train != split_corpus(corpus, seed=6).train

    @pytest.mark.parametrize("ratios", [(0.5, 0.5, 0.5), (1.2, -0.1, -0.1), (0.5, 0.5)])
    def test_bad_ratios(self, ratios):
        with pytest.raises(ValueError):
            split_corpus(_sentences(4), ratios)

    def test_empty_corpus(self):
        with pytest.raises(ValueError):
            split_corpus([], (0.8, 0.1, 0.1))

    @given(st.integers(min_value=1, max_value=1000), st.integers(min_value=0, max_value=10_000))
    def test_partition_property(self, n, seed):
        corpus = _sentences(n)
        split = split_corpus(corpus, (0.8, 0.1, 0.1), seed)
        parts = split.train + split.dev + split.test
        assert len(parts) == n
        assert Counter(s.doc_id for s in parts) == Counter(s.doc_id for s in corpus)


class TestSynthetic:
    def test_shape_and_tags(self):
        corpus = generate_synthetic_corpus(count=50, seed=7)
        assert len(corpus) == 50
        for sentence in corpus:
            assert validate_tags(sentence.tags) is None
            assert sentence.tokens[0] in VERBS
            assert sentence.tokens[1] in QUANTITIES
            assert sentence.tokens[-2] == "في"
            assert sentence.tokens[-1] in LOCATIONS
            hazard = " ".join(sentence.tokens[2:-2])
            assert hazard in HAZARDS
            assert sentence.tags[1] == "B-QUANT"
            assert sentence.tags[-1] == "B-LOC"

    def test_deterministic(self):
        assert generate_synthetic_corpus(20, 1) == generate_synthetic_corpus(20, 1)

    def test_lexicon_sizes(self):
        assert len(VERBS) == len(QUANTITIES) == len(HAZARDS) == len(LOCATIONS) == 20
        assert all(1 <= len(h.split()) <= 3 for h in HAZARDS)


class TestLoadTagged:
    def test_stray_inside_accepted(self, tmp_path):
        path = _write(tmp_path / "p.jsonl", [{"tokens": ["a", "b"], "tags": ["I-LOC", "I-location"], "doc_id": "d"}])
        assert load_tagged(path) == [TaggedSentence(("a", "b"), ("I-LOC", "I-LOC"), "d")]

    def test_empty_sentence(self, tmp_path):
        path = _write(tmp_path / "p.jsonl", [{"tokens": [], "tags": []}])
        assert load_tagged(path) == [TaggedSentence((), ())]

    def test_unknown_tag_names_line(self, tmp_path):
        path = _write(tmp_path / "p.jsonl", [{"tokens": ["a"], "tags": ["O"]}, {"tokens": ["a"], "tags": ["B-FOOD"]}])
        with pytest.raises(CorpusFormatError) as info:
            load_tagged(path)
        assert info.value.line_number == 2

    def test_length_mismatch(self, tmp_path):
        path = _write(tmp_path / "p.jsonl", [{"tokens": ["a", "b"], "tags": ["O"]}])
        with pytest.raises(CorpusFormatError):
            load_tagged(path)
