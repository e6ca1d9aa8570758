import os

import hypothesis
import numpy as np
import pytest

from src.arabic.normalizer import normalize
from src.corpus.models import AnnotatedSentence
from src.corpus.tagset import DEFAULT_TAGSET
from src.features.embeddings import EmbeddingMatrix
from src.features.vocab import PAD_TOKEN, UNK_TOKEN, Vocabulary
from src.tagger.config import TrainConfig
from src.tagger.crf import CrfParams
from src.tagger.lstm import LstmParams
from src.tagger.model import TaggerModel

np.seterr(all="warn")

hypothesis.settings.register_profile("default", max_examples=100, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

SAMPLE_TOKENS = ("حجز", "أكثر", "من", "قنطار", "من", "اللحم", "الحمراء", "في", "سطيف")
SAMPLE_TAGS = ("O", "O", "O", "B-QUANT", "O", "B-EVT", "I-EVT", "O", "B-LOC")


@pytest.fixture
def sample_tokens():
    return SAMPLE_TOKENS


@pytest.fixture
def sample_tags():
    return SAMPLE_TAGS


@pytest.fixture
def sample_sentence():
    return AnnotatedSentence(tokens=SAMPLE_TOKENS, tags=SAMPLE_TAGS, doc_id="sample")


def build_lookup_model(token_tags):
    """
    Tagger whose emissions favour a fixed tag per known token.

    Embeddings are one-hot, both LSTMs copy the current input into their
    state (input/output gates saturated open, forget gate shut), and the
    projection maps each token's state unit to its tag.
    """
    tokens = list(dict.fromkeys(normalize(token) for token, _ in token_tags))
    vocab = Vocabulary((PAD_TOKEN, UNK_TOKEN, *tokens))
    v = len(vocab)
    h = v
    embeddings = EmbeddingMatrix(np.eye(v))

    def copy_lstm():
        params = LstmParams.zeros(v, h)
        params.gate("i")[2][:] = 10.0
        params.gate("f")[2][:] = -10.0
        params.gate("o")[2][:] = 10.0
        params.gate("g")[0][:] = 3.0 * np.eye(h, v)
        return params

    t = len(DEFAULT_TAGSET)
    projection = np.zeros((t, 2 * h))
    for token, tag in token_tags:
        row = DEFAULT_TAGSET.index(tag)
        column = vocab.index(normalize(token))
        projection[row, column] = 10.0
        projection[row, h + column] = 10.0
    return TaggerModel(
        embeddings=embeddings,
        forward=copy_lstm(),
        backward=copy_lstm(),
        projection=projection,
        projection_bias=np.zeros(t),
        crf=CrfParams.zeros(t),
        tagset=DEFAULT_TAGSET,
        vocab=vocab,
        config=TrainConfig(hidden_size=h, embedding_dim=v, epochs=0),
    )


@pytest.fixture
def lookup_model():
    return build_lookup_model(list(zip(SAMPLE_TOKENS, SAMPLE_TAGS)))
