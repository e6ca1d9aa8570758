"""Run configuration: a flat key = value file plus command-line overrides."""

import logging
import math
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Dict, Mapping, Optional, Tuple, Union

from src.errors import ConfigError
from src.tagger.config import TrainConfig

logger = logging.getLogger(__name__)

PATH_KEYS = ("corpus", "embeddings", "model", "output", "split_dir", "stem_rules")
TRAIN_KEYS = tuple(f.name for f in fields(TrainConfig))
RUN_KEYS = PATH_KEYS + ("split", "min_freq") + TRAIN_KEYS

DEFAULT_SPLIT = (0.8, 0.1, 0.1)


def parse_config_text(text: str, source: str = "<config>") -> Dict[str, str]:
    """
    Parse `key = value` lines; blank lines and `#` comments are skipped.

    Raises:
        ConfigError: a line without "=", an empty key, or a repeated key
    """
    settings: Dict[str, str] = {}
    for line_number, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        key, sep, value = stripped.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key:
            raise ConfigError(f"{source}:{line_number}: expected 'key = value', got {stripped!r}")
        if key in settings:
            raise ConfigError(f"{source}:{line_number}: key {key!r} given twice")
        settings[key] = value
    return settings


def parse_split(value: Union[str, Tuple[float, ...]]) -> Tuple[float, float, float]:
    if isinstance(value, str):
        parts = [p.strip() for p in value.split(",")]
        try:
            ratios = tuple(float(p) for p in parts)
        except ValueError:
            raise ConfigError(f"split must be three comma-separated numbers, got {value!r}")
    else:
        ratios = tuple(float(r) for r in value)
    if len(ratios) != 3:
        raise ConfigError(f"split needs three ratios, got {len(ratios)}")
    if any(r < 0 or not math.isfinite(r) for r in ratios):
        raise ConfigError(f"split ratios must be finite and non-negative, got {ratios}")
    if abs(sum(ratios) - 1.0) > 1e-9:
        raise ConfigError(f"split ratios must sum to 1, got {sum(ratios)}")
    return ratios


@dataclass(frozen=True)
class RunConfig:
    """Paths, split and vocabulary options for one command, plus training hyperparameters."""
    corpus: Optional[Path] = None
    embeddings: Optional[Path] = None
    model: Optional[Path] = None
    output: Optional[Path] = None
    split_dir: Optional[Path] = None
    stem_rules: Optional[Path] = None
    split: Tuple[float, float, float] = DEFAULT_SPLIT
    min_freq: int = 1
    train: TrainConfig = TrainConfig()

    def __post_init__(self):
        object.__setattr__(self, "split", parse_split(self.split))
        if self.min_freq < 1:
            raise ConfigError(f"min_freq must be >= 1, got {self.min_freq}")

    def require(self, key: str) -> Path:
        """The path stored under `key`, or ConfigError when it is unset."""
        value = getattr(self, key)
        if value is None:
            raise ConfigError(f"missing required setting {key!r}")
        return value

    @classmethod
    def from_settings(cls, settings: Mapping[str, str], base_dir: Optional[Path] = None) -> "RunConfig":
        """
        Build from string settings.

        Args:
            settings: key -> value strings (file entries merged with overrides)
            base_dir: Directory that relative paths resolve against

        Raises:
            ConfigError: unknown key or invalid value
        """
        unknown = sorted(set(settings) - set(RUN_KEYS))
        if unknown:
            raise ConfigError(f"unknown configuration key(s): {', '.join(unknown)}")
        paths = {}
        for key in PATH_KEYS:
            value = settings.get(key)
            if value:
                path = Path(value)
                if base_dir is not None and not path.is_absolute():
                    path = base_dir / path
                paths[key] = path
        try:
            min_freq = int(settings.get("min_freq", 1))
        except ValueError:
            raise ConfigError(f"invalid value for min_freq: {settings['min_freq']!r}")
        train = TrainConfig.from_dict({k: v for k, v in settings.items() if k in TRAIN_KEYS})
        return cls(
            split=parse_split(settings.get("split", DEFAULT_SPLIT)),
            min_freq=min_freq,
            train=train,
            **paths,
        )


def load_run_config(
    path: Optional[Union[str, Path]] = None,
    overrides: Optional[Mapping[str, Optional[str]]] = None,
) -> RunConfig:
    """
    Read the config file (if any) and apply overrides; overrides win.

    Relative paths from the file resolve against its directory; relative
    override paths resolve against the working directory.
    """
    settings: Dict[str, str] = {}
    base_dir: Optional[Path] = None
    if path is not None:
        path = Path(path)
        settings = parse_config_text(path.read_text(encoding="utf-8"), str(path))
        base_dir = path.parent
        logger.info(f"Loaded {len(settings)} settings from {path}")
    for key, value in (overrides or {}).items():
        if value is None:
            continue
        if key in PATH_KEYS:
            value = str(Path(value).resolve())
        settings[key] = str(value)
    return RunConfig.from_settings(settings, base_dir)
