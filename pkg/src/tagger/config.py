"""Training hyperparameters."""

from dataclasses import asdict, dataclass, fields
from typing import Any, Dict

from src.errors import ConfigError

_TRUE = {"true", "yes", "1", "on"}
_FALSE = {"false", "no", "0", "off"}


def parse_bool(value: Any) -> bool:
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in _TRUE:
        return True
    if text in _FALSE:
        return False
    raise ConfigError(f"expected a boolean, got {value!r}")


@dataclass(frozen=True)
class TrainConfig:
    """Hyperparameters for one training run; snapshotted into the model file."""
    learning_rate: float = 0.05
    epochs: int = 10
    seed: int = 13
    hidden_size: int = 64
    embedding_dim: int = 100
    clip: float = 5.0
    shuffle: bool = True
    embedding_scale: float = 0.1

    def __post_init__(self):
        if not self.learning_rate > 0:
            raise ConfigError(f"learning_rate must be > 0, got {self.learning_rate}")
        if self.epochs < 0:
            raise ConfigError(f"epochs must be >= 0, got {self.epochs}")
        if not self.clip > 0:
            raise ConfigError(f"clip must be > 0, got {self.clip}")
        if self.hidden_size < 1:
            raise ConfigError(f"hidden_size must be >= 1, got {self.hidden_size}")
        if self.embedding_dim < 1:
            raise ConfigError(f"embedding_dim must be >= 1, got {self.embedding_dim}")
        if not self.embedding_scale > 0:
            raise ConfigError(f"embedding_scale must be > 0, got {self.embedding_scale}")

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for serialization."""
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "TrainConfig":
        """
        Create from a mapping whose values may be strings.

        Missing keys keep their defaults; unknown keys raise ConfigError.
        """
        known = {f.name: f.type for f in fields(cls)}
        unknown = sorted(set(data) - set(known))
        if unknown:
            raise ConfigError(f"unknown training option(s): {', '.join(unknown)}")
        values = {}
        for name, value in data.items():
            kind = known[name]
            try:
                if kind is bool:
                    values[name] = parse_bool(value)
                elif kind is int:
                    values[name] = int(value)
                else:
                    values[name] = float(value)
            except ValueError:
                raise ConfigError(f"invalid value for {name}: {value!r}")
        return cls(**values)
