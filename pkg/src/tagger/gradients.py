"""Exact gradients of the CRF negative log-likelihood through the whole tagger."""

from dataclasses import dataclass, field
from typing import Dict, Sequence, Tuple

import numpy as np

from src.tagger.crf import crf_nll_gradients
from src.tagger.lstm import bilstm_backward, bilstm_forward
from src.tagger.model import TaggerModel


@dataclass
class Gradients:
    """
    Gradient set shaped like TaggerModel.parameters().

    Embeddings are sparse: only rows of tokens in the sentence appear in
    embedding_rows. Every other parameter has a dense entry in `dense`.
    """
    dense: Dict[str, np.ndarray]
    embedding_rows: Dict[int, np.ndarray] = field(default_factory=dict)

    def global_norm(self) -> float:
        total = sum(float(np.sum(g * g)) for g in self.dense.values())
        total += sum(float(np.sum(g * g)) for g in self.embedding_rows.values())
        return float(np.sqrt(total))

    def scale(self, factor: float) -> None:
        for g in self.dense.values():
            g *= factor
        for g in self.embedding_rows.values():
            g *= factor

    def embeddings_dense(self, vocab_size: int, dim: int) -> np.ndarray:
        """Full V x d embedding gradient, zero for rows not in the sentence."""
        full = np.zeros((vocab_size, dim))
        for row, g in self.embedding_rows.items():
            full[row] = g
        return full


def loss_and_gradients(
    model: TaggerModel, token_ids: Sequence[int], gold: Sequence[int]
) -> Tuple[float, Gradients]:
    """
    NLL of the gold tags and its gradient with respect to every parameter.

    Args:
        model: Tagger whose parameters are differentiated
        token_ids: Vocabulary indices of a nonempty sentence
        gold: Gold tag indices, same length

    Returns:
        (loss, gradients)
    """
    if len(token_ids) == 0:
        raise ValueError("cannot differentiate an empty sentence")
    ids = np.asarray(token_ids, dtype=np.int64)
    embedded = model.embeddings.vectors[ids]
    encoded, trace = bilstm_forward(embedded, model.forward, model.backward)
    emissions = encoded @ model.projection.T + model.projection_bias

    loss, d_emissions, crf_grads = crf_nll_gradients(emissions, model.crf, gold)

    d_encoded = d_emissions @ model.projection
    d_embedded, g_forward, g_backward = bilstm_backward(trace, d_encoded, model.forward, model.backward)

    dense = {}
    for prefix, grads in (("forward", g_forward), ("backward", g_backward)):
        for name, array in grads.arrays().items():
            dense[f"{prefix}.{name}"] = array
    dense["projection.weight"] = d_emissions.T @ encoded
    dense["projection.bias"] = d_emissions.sum(axis=0)
    dense["crf.transitions"] = crf_grads.transitions
    dense["crf.start"] = crf_grads.start
    dense["crf.end"] = crf_grads.end

    rows: Dict[int, np.ndarray] = {}
    for position, row in enumerate(token_ids):
        row = int(row)
        if row in rows:
            rows[row] = rows[row] + d_embedded[position]
        else:
            rows[row] = d_embedded[position].copy()
    return loss, Gradients(dense, rows)


def gradients(model: TaggerModel, token_ids: Sequence[int], gold: Sequence[int]) -> Gradients:
    """Gradient set of the NLL; see loss_and_gradients."""
    return loss_and_gradients(model, token_ids, gold)[1]
