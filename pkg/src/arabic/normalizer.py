"""Arabic orthographic normalization."""

import re

# Tashkeel and Quranic annotation marks
_DIACRITICS = re.compile(r"[\u0610-\u061A\u064B-\u065F\u0670\u06D6-\u06ED]")
_TATWEEL = "\u0640"

_ALEF_MAP = str.maketrans({
    "\u0623": "\u0627",  # hamza above → bare alef
    "\u0625": "\u0627",  # hamza below → bare alef
    "\u0622": "\u0627",  # madda → bare alef
    _TATWEEL: None,
})


def normalize(text: str) -> str:
    """
    Remove diacritics and tatweel, fold hamzated/madda alef to bare alef.

    Every other character, teh marbuta included, is left as is; the
    function is idempotent.
    """
    if not text:
        return text
    return _DIACRITICS.sub("", text).translate(_ALEF_MAP)
