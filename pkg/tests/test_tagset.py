import pytest

from src.corpus.tagset import DEFAULT_TAGSET, TagSet, canonicalize_tag, validate_tags
from src.errors import TagValidationError


def test_default_tagset_order():
    assert DEFAULT_TAGSET.tags == (
        "O", "B-PERS", "I-PERS", "B-LOC", "I-LOC", "B-ORG", "I-ORG",
        "B-QUANT", "I-QUANT", "B-EVT", "I-EVT", "B-DTE", "I-DTE",
    )
    assert len(DEFAULT_TAGSET) == 13


@pytest.mark.parametrize("raw, canonical", [
    ("o", "O"),
    ("b-event", "B-EVT"),
    ("I-LOCATION", "I-LOC"),
    ("B-quantity", "B-QUANT"),
    ("b-dte", "B-DTE"),
])
def test_canonicalize_tag(raw, canonical):
    assert canonicalize_tag(raw) == canonical


@pytest.mark.parametrize("raw", ["X-LOC", "B-FOOD", "LOC", "B-", ""])
def test_canonicalize_rejects_unknown(raw):
    with pytest.raises(TagValidationError):
        canonicalize_tag(raw)


def test_valid_chain():
    assert validate_tags(["O", "B-LOC", "I-LOC"]) is None


def test_sample_tags_with_long_names_are_valid():
    assert validate_tags("O O O B-QUANT O B-EVENT I-EVENT O B-LOC".split()) is None


def test_i_without_b():
    violation = validate_tags(["I-LOC", "O"])
    assert violation.index == 0


def test_label_switch_inside_entity():
    violation = validate_tags(["B-LOC", "I-ORG"])
    assert violation.index == 1


def test_unknown_tag_reported_as_violation():
    violation = validate_tags(["O", "B-FOOD"])
    assert violation.index == 1


def test_tagset_encode_decode():
    indices = DEFAULT_TAGSET.encode(["O", "B-EVENT", "I-EVT"])
    assert indices == [0, 9, 10]
    assert DEFAULT_TAGSET.decode(indices) == ["O", "B-EVT", "I-EVT"]


def test_tagset_must_start_with_outside():
    with pytest.raises(TagValidationError):
        TagSet(("B-LOC", "O"))


def test_split():
    assert TagSet.split("O") == ("O", None)
    assert TagSet.split("I-QUANT") == ("I", "QUANT")
