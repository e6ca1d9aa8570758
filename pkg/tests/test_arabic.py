import pytest
from hypothesis import given, strategies as st

from src.arabic.ngrams import ngrams
from src.arabic.normalizer import normalize
from src.arabic.stemmer import DEFAULT_RULES, StemRuleTable, load_stem_rules, stem
from src.arabic.tokenizer import split_sentences, tokenize
from src.errors import StemRuleError

arabic_text = st.text(alphabet=st.characters(min_codepoint=0x0600, max_codepoint=0x06FF) | st.sampled_from(" .،؟!"))


class TestNormalize:
    def test_removes_diacritics(self):
        assert normalize("سَطِيف") == "سطيف"

    def test_removes_tatweel(self):
        assert normalize("ســطيف") == "سطيف"

    def test_folds_alef_variants(self):
        assert normalize("أكثر إصابة آمن") == "اكثر اصابة امن"

    def test_keeps_teh_marbuta(self):
        assert normalize("النظافة") == "النظافة"

    def test_latin_untouched(self):
        assert normalize("food") == "food"

    @given(arabic_text)
    def test_idempotent(self, text):
        assert normalize(normalize(text)) == normalize(text)


class TestTokenize:
    def test_sample_sentence(self):
        tokens = tokenize(normalize("حجز أكثر من قنطار من اللحم الحمراء في سطيف"))
        assert len(tokens) == 9

    def test_empty(self):
        assert tokenize("") == []

    def test_trailing_punctuation(self):
        assert [t.surface for t in tokenize("سطيف.")] == ["سطيف", "."]

    def test_digit_runs(self):
        assert [t.surface for t in tokenize("حجز 25 كلغ و٣٠٠ لتر")] == ["حجز", "25", "كلغ", "و", "٣٠٠", "لتر"]

    def test_arabic_punctuation(self):
        assert [t.surface for t in tokenize("«سطيف»، وهران؟")] == ["«", "سطيف", "»", "،", "وهران", "؟"]

    def test_offsets(self):
        text = "في سطيف، اليوم"
        for token in tokenize(text):
            assert text[token.start:token.end] == token.surface

    def test_conjunction_stays_attached(self):
        assert [t.surface for t in tokenize("والأمن")] == ["والأمن"]

    @given(arabic_text)
    def test_token_stream_idempotent(self, text):
        text = normalize(text)
        surfaces = [t.surface for t in tokenize(text)]
        assert [t.surface for t in tokenize(" ".join(surfaces))] == surfaces


class TestSplitSentences:
    def test_cuts_after_terminators(self):
        sentences = split_sentences("حجز قنطار. اتلف طن؟ منع")
        assert sentences == [["حجز", "قنطار", "."], ["اتلف", "طن", "؟"], ["منع"]]

    def test_newline_is_boundary(self):
        assert split_sentences("حجز قنطار\nفي سطيف") == [["حجز", "قنطار"], ["في", "سطيف"]]

    def test_normalizes_first(self):
        assert split_sentences("أكثر")[0] == ["اكثر"]

    def test_blank_text(self):
        assert split_sentences(" \n\n ") == []


class TestStem:
    @pytest.mark.parametrize("token, expected", [
        ("اللحم", "لحم"),
        ("النظافة", "نظاف"),
        ("من", "من"),
        ("والامن", "امن"),
        ("المصابين", "مصاب"),
    ])
    def test_default_rules(self, token, expected):
        assert stem(token) == expected

    def test_never_below_min_length(self):
        assert stem("وه") == "وه"

    def test_custom_rules_file(self, tmp_path):
        path = tmp_path / "rules.txt"
        path.write_text("# light rules\nprefix ال\nmin_stem_length 3\n", encoding="utf-8")
        rules = load_stem_rules(path)
        assert rules.prefixes == ("ال",)
        assert rules.suffixes == ()
        assert stem("الحمراء", rules) == "حمراء"
        assert stem("الدم", rules) == "الدم"

    @pytest.mark.parametrize("content, line", [
        ("prefix ال\ninfix x\n", 2),
        ("min_stem_length two\n", 1),
        ("prefix\n", 1),
    ])
    def test_rules_file_errors(self, tmp_path, content, line):
        path = tmp_path / "rules.txt"
        path.write_text(content, encoding="utf-8")
        with pytest.raises(StemRuleError) as info:
            load_stem_rules(path)
        assert info.value.line_number == line

    def test_rules_sorted_longest_first(self):
        table = StemRuleTable(prefixes=("و", "وال", "ال"))
        assert table.prefixes == ("وال", "ال", "و")

    @given(st.text(alphabet="الوبكفلاتونيهمةحرس", max_size=12))
    def test_stem_is_substring_and_long_enough(self, token):
        result = stem(token, DEFAULT_RULES)
        assert result in token
        if len(token) >= DEFAULT_RULES.min_stem_length:
            assert len(result) >= DEFAULT_RULES.min_stem_length


class TestNgrams:
    def test_bigrams_of_example(self):
        grams = ngrams(["تمكنت", "لجنة", "النظافة", "والأمن"], 2)
        assert "تمكنت لجنة" in grams
        assert "النظافة والأمن" in grams
        assert len(grams) == 3

    def test_unigrams_are_tokens(self):
        tokens = ["حجز", "قنطار", "من"]
        assert ngrams(tokens, 1) == tokens

    def test_window_larger_than_input(self):
        assert ngrams(["a", "b", "c", "d"], 5) == []

    def test_zero_n(self):
        with pytest.raises(ValueError):
            ngrams(["a"], 0)

    @given(st.lists(st.text(min_size=1, max_size=3), max_size=50), st.integers(min_value=1, max_value=8))
    def test_count_law(self, tokens, n):
        assert len(ngrams(tokens, n)) == max(0, len(tokens) - n + 1)
