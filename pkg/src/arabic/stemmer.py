"""Light affix-stripping stemmer driven by an ordered rule table."""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Tuple, Union

from src.errors import StemRuleError

logger = logging.getLogger(__name__)

DEFAULT_PREFIXES: Tuple[str, ...] = ("ال", "وال", "بال", "كال", "فال", "لل", "و", "ب", "ك", "ف")
DEFAULT_SUFFIXES: Tuple[str, ...] = ("ات", "ون", "ين", "ان", "ها", "هم", "ة", "ه", "ي")
DEFAULT_MIN_STEM_LENGTH = 2


def _longest_first(affixes) -> Tuple[str, ...]:
    # sorted() is stable, so equal-length affixes keep table order
    return tuple(sorted(dict.fromkeys(affixes), key=len, reverse=True))


@dataclass(frozen=True)
class StemRuleTable:
    """Prefix and suffix lists plus the minimum stem length."""
    prefixes: Tuple[str, ...] = DEFAULT_PREFIXES
    suffixes: Tuple[str, ...] = DEFAULT_SUFFIXES
    min_stem_length: int = DEFAULT_MIN_STEM_LENGTH

    def __post_init__(self):
        if self.min_stem_length < 1:
            raise ValueError(f"min_stem_length must be >= 1, got {self.min_stem_length}")
        if any(not affix for affix in self.prefixes + self.suffixes):
            raise ValueError("affixes must be nonempty")
        object.__setattr__(self, "prefixes", _longest_first(self.prefixes))
        object.__setattr__(self, "suffixes", _longest_first(self.suffixes))


DEFAULT_RULES = StemRuleTable()


def load_stem_rules(path: Union[str, Path]) -> StemRuleTable:
    """
    Read a rules file.

    Lines are "prefix <affix>", "suffix <affix>" or "min_stem_length <k>";
    blank lines and lines starting with "#" are skipped.
    """
    prefixes, suffixes = [], []
    min_stem_length = DEFAULT_MIN_STEM_LENGTH
    with open(path, "r", encoding="utf-8") as f:
        for line_number, line in enumerate(f, 1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            parts = text.split()
            if len(parts) != 2:
                raise StemRuleError(f"expected '<directive> <value>', got {text!r}", str(path), line_number)
            directive, value = parts
            if directive == "prefix":
                prefixes.append(value)
            elif directive == "suffix":
                suffixes.append(value)
            elif directive == "min_stem_length":
                try:
                    min_stem_length = int(value)
                except ValueError:
                    raise StemRuleError(f"min_stem_length must be an integer, got {value!r}", str(path), line_number)
                if min_stem_length < 1:
                    raise StemRuleError("min_stem_length must be >= 1", str(path), line_number)
            else:
                raise StemRuleError(f"unknown directive {directive!r}", str(path), line_number)
    rules = StemRuleTable(tuple(prefixes), tuple(suffixes), min_stem_length)
    logger.info(f"Loaded {len(rules.prefixes)} prefix and {len(rules.suffixes)} suffix rules from {path}")
    return rules


def stem(token: str, rules: StemRuleTable = DEFAULT_RULES) -> str:
    """
    Strip at most one prefix, then at most one suffix, longest rule first.

    A rule is skipped when removing it would leave fewer than
    rules.min_stem_length characters.
    """
    result = token
    for prefix in rules.prefixes:
        if result.startswith(prefix) and len(result) - len(prefix) >= rules.min_stem_length:
            result = result[len(prefix):]
            break
    for suffix in rules.suffixes:
        if result.endswith(suffix) and len(result) - len(suffix) >= rules.min_stem_length:
            result = result[:-len(suffix)]
            break
    return result
