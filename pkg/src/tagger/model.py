"""The BiLSTM-CRF tagger: parameters, initialisation and decoding."""

import logging
from dataclasses import dataclass, replace
from typing import Dict, Iterable, List, Optional, Sequence

import numpy as np

from src.arabic.normalizer import normalize
from src.corpus.tagset import DEFAULT_TAGSET, TagSet
from src.features.embeddings import EmbeddingMatrix, random_init
from src.features.vocab import Vocabulary, build_vocab
from src.rng import Lcg64
from src.tagger.config import TrainConfig
from src.tagger.crf import CrfParams, constrain_transitions, viterbi_decode
from src.tagger.lstm import GATES, LstmParams, bilstm_encode

logger = logging.getLogger(__name__)

# Lcg64.derive stream for weight initialisation; stream 0 is the embeddings seed itself.
WEIGHT_STREAM = 1


@dataclass
class TaggerModel:
    """
    All trainable parameters plus the tag set, vocabulary and config they
    were trained with.

    Dimension chain: embeddings d -> forward h + backward h -> 2h -> T.
    """
    embeddings: EmbeddingMatrix
    forward: LstmParams
    backward: LstmParams
    projection: np.ndarray
    projection_bias: np.ndarray
    crf: CrfParams
    tagset: TagSet
    vocab: Vocabulary
    config: TrainConfig

    def __post_init__(self):
        self.projection = np.asarray(self.projection, dtype=np.float64)
        self.projection_bias = np.asarray(self.projection_bias, dtype=np.float64)
        d, h, t = self.embeddings.dim, self.forward.hidden_size, len(self.tagset)
        problems = []
        if self.embeddings.vocab_size != len(self.vocab):
            problems.append(f"{self.embeddings.vocab_size} embedding rows for {len(self.vocab)} tokens")
        if self.forward.input_size != d or self.backward.input_size != d:
            problems.append(f"LSTM input sizes {self.forward.input_size}/{self.backward.input_size} != d={d}")
        if self.backward.hidden_size != h:
            problems.append(f"backward hidden size {self.backward.hidden_size} != forward {h}")
        if self.projection.shape != (t, 2 * h) or self.projection_bias.shape != (t,):
            problems.append(f"projection {self.projection.shape}/{self.projection_bias.shape} for T={t}, 2h={2 * h}")
        if self.crf.num_tags != t:
            problems.append(f"CRF has {self.crf.num_tags} tags, tag set has {t}")
        if self.config.embedding_dim != d or self.config.hidden_size != h:
            problems.append(
                f"config says d={self.config.embedding_dim}, h={self.config.hidden_size}; parameters have d={d}, h={h}"
            )
        if problems:
            raise ValueError("inconsistent tagger model: " + "; ".join(problems))

    @property
    def hidden_size(self) -> int:
        return self.forward.hidden_size

    def copy(self) -> "TaggerModel":
        return TaggerModel(
            embeddings=EmbeddingMatrix(self.embeddings.vectors.copy()),
            forward=self.forward.copy(),
            backward=self.backward.copy(),
            projection=self.projection.copy(),
            projection_bias=self.projection_bias.copy(),
            crf=self.crf.copy(),
            tagset=self.tagset,
            vocab=self.vocab,
            config=self.config,
        )

    def with_config(self, config: TrainConfig) -> "TaggerModel":
        return replace(self, config=config)

    def parameters(self) -> Dict[str, np.ndarray]:
        """Live parameter arrays by name; updating them updates the model."""
        params = {"embeddings": self.embeddings.vectors}
        for prefix, lstm in (("forward", self.forward), ("backward", self.backward)):
            for name, array in lstm.arrays().items():
                params[f"{prefix}.{name}"] = array
        params["projection.weight"] = self.projection
        params["projection.bias"] = self.projection_bias
        params["crf.transitions"] = self.crf.transitions
        params["crf.start"] = self.crf.start
        params["crf.end"] = self.crf.end
        return params

    def token_ids(self, tokens: Iterable[str]) -> List[int]:
        """Normalize each token, then look it up (UNK fallback)."""
        return self.vocab.encode(normalize(token) for token in tokens)

    def emissions(self, token_ids: Sequence[int]) -> np.ndarray:
        """L x T emission scores for a nonempty sentence."""
        embedded = self.embeddings.vectors[np.asarray(token_ids, dtype=np.int64)]
        encoded = bilstm_encode(embedded, self.forward, self.backward)
        return emission_scores(encoded, self.projection, self.projection_bias)


def emission_scores(encoded: np.ndarray, weight: np.ndarray, bias: np.ndarray) -> np.ndarray:
    """Row t = weight @ encoded[t] + bias."""
    encoded = np.asarray(encoded, dtype=np.float64)
    weight = np.asarray(weight, dtype=np.float64)
    bias = np.asarray(bias, dtype=np.float64)
    if encoded.ndim != 2 or weight.shape != (bias.shape[0], encoded.shape[1]):
        raise ValueError(
            f"cannot project encoded {encoded.shape} with weight {weight.shape} and bias {bias.shape}"
        )
    return encoded @ weight.T + bias


def vocab_from_corpus(sentences: Iterable[Sequence[str]], min_freq: int = 1) -> Vocabulary:
    """Vocabulary over normalized tokens, matching TaggerModel.token_ids."""
    return build_vocab(([normalize(t) for t in tokens] for tokens in sentences), min_freq)


def _xavier(rng: Lcg64, rows: int, cols: int, fan_in: int, fan_out: int) -> np.ndarray:
    return rng.uniform_array((rows, cols), float(np.sqrt(6.0 / (fan_in + fan_out))))


def _init_lstm(rng: Lcg64, d: int, h: int) -> LstmParams:
    w_input = _xavier(rng, 4 * h, d, d, h)
    w_hidden = _xavier(rng, 4 * h, h, h, h)
    params = LstmParams(w_input, w_hidden, np.zeros(4 * h))
    params.gate("f")[2][:] = 1.0
    return params


def init_model(
    vocab: Vocabulary,
    config: TrainConfig,
    tagset: TagSet = DEFAULT_TAGSET,
    embeddings: Optional[EmbeddingMatrix] = None,
) -> TaggerModel:
    """
    Fresh tagger for a vocabulary.

    Embeddings come from random_init(config.seed, config.embedding_scale)
    unless pretrained ones are given. Weight matrices are drawn from
    Lcg64.derive(config.seed, WEIGHT_STREAM) in the order forward input,
    forward recurrent, backward input, backward recurrent, projection,
    transitions, each uniform in +-sqrt(6 / (fan_in + fan_out)). Biases are
    zero except the forget gate (1.0); start and end scores are zero.
    """
    d, h, t = config.embedding_dim, config.hidden_size, len(tagset)
    if embeddings is None:
        embeddings = random_init(len(vocab), d, config.seed, config.embedding_scale)
    rng = Lcg64.derive(config.seed, WEIGHT_STREAM)
    forward = _init_lstm(rng, d, h)
    backward = _init_lstm(rng, d, h)
    projection = _xavier(rng, t, 2 * h, 2 * h, t)
    transitions = _xavier(rng, t, t, t, t)
    model = TaggerModel(
        embeddings=embeddings,
        forward=forward,
        backward=backward,
        projection=projection,
        projection_bias=np.zeros(t),
        crf=CrfParams(transitions, np.zeros(t), np.zeros(t)),
        tagset=tagset,
        vocab=vocab,
        config=config,
    )
    logger.info(f"Initialised tagger: V={len(vocab)}, d={d}, h={h}, T={t}, gates={''.join(GATES)}")
    return model


def decode(model: TaggerModel, emissions: np.ndarray) -> List[str]:
    """Viterbi path under the IOB inference mask, as tag strings."""
    path, _ = viterbi_decode(emissions, constrain_transitions(model.crf, model.tagset))
    return model.tagset.decode(path)


def tag(model: TaggerModel, tokens: Sequence[str]) -> List[str]:
    """
    Tag a token sequence.

    Args:
        model: Trained tagger
        tokens: Surface tokens; unknown ones fall back to UNK

    Returns:
        One IOB tag per token (empty for empty input)
    """
    if not tokens:
        return []
    return decode(model, model.emissions(model.token_ids(tokens)))
