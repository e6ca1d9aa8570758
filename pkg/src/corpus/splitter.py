"""Deterministic seeded train/dev/test splitting."""

import logging
import math
from typing import Sequence, Tuple

from src.corpus.models import AnnotatedSentence, CorpusSplit
from src.rng import Lcg64

logger = logging.getLogger(__name__)

RATIO_TOLERANCE = 1e-9


def split_corpus(
    sentences: Sequence[AnnotatedSentence],
    ratios: Tuple[float, float, float] = (0.8, 0.1, 0.1),
    seed: int = 13,
) -> CorpusSplit:
    """
    Shuffle with Lcg64(seed) and cut into train/dev/test.

    Train receives floor(N*r1) sentences, dev floor(N*r2), test the rest.

    Args:
        sentences: Corpus to partition
        ratios: Three non-negative ratios summing to 1
        seed: PRNG seed

    Returns:
        CorpusSplit partitioning the input
    """
    if len(ratios) != 3:
        raise ValueError(f"expected three ratios, got {len(ratios)}")
    if any(r < 0 for r in ratios):
        raise ValueError(f"ratios must be non-negative: {ratios}")
    if abs(sum(ratios) - 1.0) > RATIO_TOLERANCE:
        raise ValueError(f"ratios must sum to 1, got {sum(ratios)}")
    n = len(sentences)
    if n == 0:
        raise ValueError("cannot split an empty corpus")

    order = list(range(n))
    Lcg64(seed).shuffle(order)
    shuffled = [sentences[i] for i in order]

    n_train = math.floor(n * ratios[0] + RATIO_TOLERANCE)
    n_dev = min(math.floor(n * ratios[1] + RATIO_TOLERANCE), n - n_train)
    split = CorpusSplit(
        train=shuffled[:n_train],
        dev=shuffled[n_train:n_train + n_dev],
        test=shuffled[n_train + n_dev:],
    )
    logger.info(f"Split {n} sentences into train/dev/test = {split.sizes()}")
    return split
