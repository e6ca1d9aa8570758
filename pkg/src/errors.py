"""Exception hierarchy for the hazard extraction toolkit.

Library code raises these; only the CLI maps them to process exit codes.
"""

from typing import Optional


class HazardError(Exception):
    """Base class for all toolkit errors."""

    exit_code = 1


class ConfigError(HazardError):
    """Invalid configuration value, unknown key or missing required path."""

    exit_code = 2


class InputFormatError(HazardError, ValueError):
    """A malformed record in an input file."""

    exit_code = 2

    def __init__(self, reason: str, path: Optional[str] = None, line_number: Optional[int] = None):
        self.reason = reason
        self.path = path
        self.line_number = line_number
        super().__init__(self._render())

    def _render(self) -> str:
        location = ""
        if self.path is not None:
            location = f"{self.path}:"
        if self.line_number is not None:
            location += f"{self.line_number}:"
        return f"{location} {self.reason}" if location else self.reason


class CorpusFormatError(InputFormatError):
    """Malformed corpus or raw-document record."""


class EmbeddingFormatError(InputFormatError):
    """Malformed pretrained-embeddings file."""


class StemRuleError(InputFormatError):
    """Malformed stem rules file."""


class TagValidationError(HazardError, ValueError):
    """Tag string outside the tag scheme."""

    exit_code = 2


class SpanError(HazardError, ValueError):
    """Overlapping or out-of-range entity spans."""


class ModelFormatError(HazardError):
    """Unreadable or inconsistent model file."""

    def __init__(self, reason: str, line_number: Optional[int] = None):
        self.line_number = line_number
        super().__init__(f"line {line_number}: {reason}" if line_number is not None else reason)


class EvaluationError(HazardError, ValueError):
    """Gold and predicted sequences are not aligned."""


class TrainingDivergenceError(HazardError):
    """Non-finite loss during training."""

    def __init__(self, epoch: int, sentence_index: int, loss: float):
        self.epoch = epoch
        self.sentence_index = sentence_index
        self.loss = loss
        super().__init__(f"non-finite loss {loss} at epoch {epoch}, training sentence {sentence_index}")
