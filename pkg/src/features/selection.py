"""Chi-square ranking of binary sentence features against a binary class."""

from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from src.arabic.ngrams import ngrams
from src.arabic.stemmer import StemRuleTable, stem
from src.corpus.models import AnnotatedSentence


@dataclass(frozen=True)
class FeatureScore:
    feature: str
    chi2: float


def chi_square(a: int, b: int, c: int, d: int) -> float:
    """
    chi2 of a 2x2 table; a zero margin yields 0.

    a: feature present, in class     b: feature present, not in class
    c: feature absent, in class      d: feature absent, not in class
    """
    denominator = (a + b) * (c + d) * (a + c) * (b + d)
    if denominator == 0:
        return 0.0
    n = a + b + c + d
    return n * (a * d - b * c) ** 2 / denominator


def chi_square_select(
    presence: Mapping[str, Sequence[bool]],
    labels: Sequence[bool],
    k: int,
) -> List[FeatureScore]:
    """
    Rank features by chi2 against the class indicator.

    Args:
        presence: Feature id -> per-sentence presence indicators
        labels: Per-sentence class indicators
        k: Number of features to return (clamped to the feature count)

    Returns:
        Top-k scores, chi2 descending then feature id ascending
    """
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    in_class = [bool(x) for x in labels]
    positives = sum(in_class)
    scores = []
    for feature, indicators in presence.items():
        if len(indicators) != len(in_class):
            raise ValueError(
                f"feature {feature!r} has {len(indicators)} indicators for {len(in_class)} labels"
            )
        a = sum(1 for present, cls in zip(indicators, in_class) if present and cls)
        b = sum(1 for present, cls in zip(indicators, in_class) if present and not cls)
        c = positives - a
        d = len(in_class) - positives - b
        scores.append(FeatureScore(feature, chi_square(a, b, c, d)))
    scores.sort(key=lambda s: (-s.chi2, s.feature))
    return scores[:k]


def ngram_presence(
    sentences: Sequence[AnnotatedSentence],
    n: int,
    label: str,
    rules: Optional[StemRuleTable] = None,
) -> Tuple[Dict[str, List[bool]], List[bool]]:
    """
    Build chi-square inputs from an annotated corpus.

    Features are word n-grams (stemmed when rules are given); a sentence is in
    class when one of its tags carries `label`.
    """
    grams_per_sentence = []
    for sentence in sentences:
        tokens = [stem(t, rules) for t in sentence.tokens] if rules is not None else list(sentence.tokens)
        grams_per_sentence.append(set(ngrams(tokens, n)))
    features = sorted(set().union(*grams_per_sentence)) if grams_per_sentence else []
    presence = {feature: [feature in grams for grams in grams_per_sentence] for feature in features}
    labels = [any(tag.endswith(f"-{label}") for tag in s.tags) for s in sentences]
    return presence, labels
