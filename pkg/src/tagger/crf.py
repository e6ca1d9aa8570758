"""Linear-chain CRF: log-partition, sequence score, Viterbi, NLL and marginals.

score(y) = start[y0] + sum_t emissions[t, yt] + sum_t transitions[y(t-1), yt] + end[yL-1]

All arithmetic is float64. Every recursion accumulates in the same order as
crf_sequence_score, so a decoded path's score matches it exactly.
"""

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from src.corpus.tagset import TagSet

# "Impossible" score used for masked transitions; finite so x - max(x) never yields NaN.
IMPOSSIBLE = -1e30


@dataclass
class CrfParams:
    """transitions[i, j] scores tag j following tag i."""
    transitions: np.ndarray
    start: np.ndarray
    end: np.ndarray

    def __post_init__(self):
        self.transitions = np.asarray(self.transitions, dtype=np.float64)
        self.start = np.asarray(self.start, dtype=np.float64)
        self.end = np.asarray(self.end, dtype=np.float64)
        t = self.start.shape[0] if self.start.ndim == 1 else -1
        if self.transitions.shape != (t, t) or self.end.shape != (t,):
            raise ValueError(
                f"inconsistent CRF shapes: transitions {self.transitions.shape}, "
                f"start {self.start.shape}, end {self.end.shape}"
            )

    @property
    def num_tags(self) -> int:
        return self.start.shape[0]

    @classmethod
    def zeros(cls, num_tags: int) -> "CrfParams":
        return cls(np.zeros((num_tags, num_tags)), np.zeros(num_tags), np.zeros(num_tags))

    def copy(self) -> "CrfParams":
        return CrfParams(self.transitions.copy(), self.start.copy(), self.end.copy())


def log_sum_exp(x: np.ndarray, axis=None):
    """m + log(sum(exp(x - m))) with m the maximum along `axis`."""
    m = np.max(x, axis=axis, keepdims=True)
    result = m + np.log(np.sum(np.exp(x - m), axis=axis, keepdims=True))
    if axis is None:
        return float(result.reshape(()))
    return np.squeeze(result, axis=axis)


def _check(emissions: np.ndarray, crf: CrfParams) -> np.ndarray:
    emissions = np.asarray(emissions, dtype=np.float64)
    if emissions.ndim != 2 or emissions.shape[0] < 1:
        raise ValueError(f"emissions must be a nonempty L x T matrix, got shape {emissions.shape}")
    if emissions.shape[1] != crf.num_tags:
        raise ValueError(f"emissions have {emissions.shape[1]} tags, CRF has {crf.num_tags}")
    return emissions


def _check_tags(emissions: np.ndarray, tags: Sequence[int]) -> List[int]:
    tags = [int(t) for t in tags]
    if len(tags) != emissions.shape[0]:
        raise ValueError(f"{len(tags)} tags for {emissions.shape[0]} positions")
    if any(not 0 <= t < emissions.shape[1] for t in tags):
        raise ValueError(f"tag index out of range [0, {emissions.shape[1]})")
    return tags


def forward_scores(emissions: np.ndarray, crf: CrfParams) -> np.ndarray:
    """alphas[t, j]: log-sum of scores of prefixes ending in tag j at t."""
    emissions = _check(emissions, crf)
    alphas = np.empty_like(emissions)
    alphas[0] = crf.start + emissions[0]
    for t in range(1, emissions.shape[0]):
        alphas[t] = log_sum_exp(alphas[t - 1][:, None] + crf.transitions, axis=0) + emissions[t]
    return alphas


def backward_scores(emissions: np.ndarray, crf: CrfParams) -> np.ndarray:
    """betas[t, i]: log-sum of scores of suffixes after tag i at t, end included."""
    emissions = _check(emissions, crf)
    betas = np.empty_like(emissions)
    betas[-1] = crf.end
    for t in range(emissions.shape[0] - 2, -1, -1):
        betas[t] = log_sum_exp(crf.transitions + (emissions[t + 1] + betas[t + 1])[None, :], axis=1)
    return betas


def crf_log_partition(emissions: np.ndarray, crf: CrfParams) -> float:
    """log Z over all T**L tag sequences."""
    alphas = forward_scores(emissions, crf)
    return log_sum_exp(alphas[-1] + crf.end)


def crf_sequence_score(emissions: np.ndarray, crf: CrfParams, tags: Sequence[int]) -> float:
    emissions = _check(emissions, crf)
    tags = _check_tags(emissions, tags)
    score = crf.start[tags[0]] + emissions[0, tags[0]]
    for t in range(1, len(tags)):
        score = score + crf.transitions[tags[t - 1], tags[t]] + emissions[t, tags[t]]
    return float(score + crf.end[tags[-1]])


def viterbi_decode(emissions: np.ndarray, crf: CrfParams) -> Tuple[List[int], float]:
    """
    Highest-scoring tag path.

    Ties go to the lowest tag index, both for the final tag and at every
    backtracking step.

    Returns:
        (path, score) where score == crf_sequence_score(path)
    """
    emissions = _check(emissions, crf)
    num_tags = crf.num_tags
    columns = np.arange(num_tags)
    delta = crf.start + emissions[0]
    backpointers = []
    for t in range(1, emissions.shape[0]):
        candidates = delta[:, None] + crf.transitions
        best = np.argmax(candidates, axis=0)
        delta = candidates[best, columns] + emissions[t]
        backpointers.append(best)
    final = delta + crf.end
    path = [int(np.argmax(final))]
    for best in reversed(backpointers):
        path.append(int(best[path[-1]]))
    path.reverse()
    return path, float(final[path[-1]])


def nll_loss(emissions: np.ndarray, crf: CrfParams, gold: Sequence[int]) -> float:
    """-log p(gold | emissions) = log Z - score(gold)."""
    return crf_log_partition(emissions, crf) - crf_sequence_score(emissions, crf, gold)


def crf_marginals(emissions: np.ndarray, crf: CrfParams) -> Tuple[np.ndarray, np.ndarray, float]:
    """
    Forward-backward posteriors.

    Returns:
        (unary L x T, pairwise (L-1) x T x T, log Z)
    """
    emissions = _check(emissions, crf)
    alphas = forward_scores(emissions, crf)
    betas = backward_scores(emissions, crf)
    log_z = log_sum_exp(alphas[-1] + crf.end)
    unary = np.exp(alphas + betas - log_z)
    pairwise = np.exp(
        alphas[:-1, :, None] + crf.transitions[None, :, :] + (emissions[1:] + betas[1:])[:, None, :] - log_z
    )
    return unary, pairwise, log_z


def crf_nll_gradients(
    emissions: np.ndarray, crf: CrfParams, gold: Sequence[int]
) -> Tuple[float, np.ndarray, CrfParams]:
    """
    NLL together with its gradients.

    Returns:
        (loss, d loss / d emissions, CRF parameter gradients)
    """
    emissions = _check(emissions, crf)
    gold = _check_tags(emissions, gold)
    unary, pairwise, log_z = crf_marginals(emissions, crf)
    loss = log_z - crf_sequence_score(emissions, crf, gold)

    positions = np.arange(len(gold))
    d_emissions = unary.copy()
    d_emissions[positions, gold] -= 1.0

    grads = CrfParams(pairwise.sum(axis=0), unary[0].copy(), unary[-1].copy())
    grads.start[gold[0]] -= 1.0
    grads.end[gold[-1]] -= 1.0
    for prev, cur in zip(gold[:-1], gold[1:]):
        grads.transitions[prev, cur] -= 1.0
    return loss, d_emissions, grads


def constrain_transitions(crf: CrfParams, tagset: TagSet) -> CrfParams:
    """
    Copy of the CRF with IOB-invalid moves set to IMPOSSIBLE.

    Masked: start -> I-X, O -> I-X, B-X/I-X -> I-Y for X != Y.
    """
    masked = crf.copy()
    for j, tag in enumerate(tagset.tags):
        prefix, label = TagSet.split(tag)
        if prefix != "I":
            continue
        masked.start[j] = IMPOSSIBLE
        for i, previous in enumerate(tagset.tags):
            _, previous_label = TagSet.split(previous)
            if previous_label != label:
                masked.transitions[i, j] = IMPOSSIBLE
    return masked
