"""Word n-gram extraction."""

from typing import List, Sequence


def ngrams(tokens: Sequence[str], n: int) -> List[str]:
    """Space-joined sliding windows of width n, stride 1, in order."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return [" ".join(tokens[i:i + n]) for i in range(len(tokens) - n + 1)]
