"""
arabic/text.py – Tweet tokenization and character-level normalization.

Tokenization splits on whitespace and punctuation with NLTK's
RegexpTokenizer. Word characters include '_' so hashtag compounds such as
#دولة_الإسلامية survive as one token, and Arabic combining marks so
vowelized words are not split apart. '#', '@', emoji and symbols never form
part of a token.

Normalization then keeps only Arabic letters, digits (ASCII and
Arabic-Indic) and word-internal '_'.
"""

import unicodedata
from dataclasses import dataclass

from nltk.tokenize import RegexpTokenizer

# \w plus Arabic harakat / superscript alef, which Python does not count as \w
_TOKENIZER = RegexpTokenizer(r"[\w\u0610-\u061A\u064B-\u065F\u0670\u06D6-\u06ED]+")

ARABIC_BLOCKS: tuple[tuple[int, int], ...] = (
    (0x0600, 0x06FF),
    (0x0750, 0x077F),
    (0x08A0, 0x08FF),
)
TATWEEL = "\u0640"


@dataclass(frozen=True)
class Token:
    surface: str
    position: int

    @property
    def is_compound(self) -> bool:
        return "_" in self.surface


def is_arabic_codepoint(ch: str) -> bool:
    cp = ord(ch)
    return any(lo <= cp <= hi for lo, hi in ARABIC_BLOCKS)


def is_arabic_letter(ch: str) -> bool:
    """Letter codepoint inside one of the Arabic blocks (tatweel excluded)."""
    return ch != TATWEEL and unicodedata.category(ch).startswith("L") and is_arabic_codepoint(ch)


def tokenize(text: str) -> list[Token]:
    """Split *text* into word tokens with increasing positions."""
    return [Token(surface=s, position=i) for i, s in enumerate(_TOKENIZER.tokenize(text))]


def _keep(ch: str) -> bool:
    return ch == "_" or is_arabic_letter(ch) or unicodedata.category(ch) == "Nd"


def normalize(token: Token) -> Token | None:
    """
    Drop every character that is not an Arabic letter, a digit or '_'.

    Latin letters, tatweel, diacritics and stray punctuation disappear;
    '_' is trimmed at the token edges. Returns ``None`` when nothing is left.
    """
    surface = "".join(ch for ch in token.surface if _keep(ch)).strip("_")
    if not surface:
        return None
    if surface == token.surface:
        return token
    return Token(surface=surface, position=token.position)


def normalized_tokens(text: str) -> list[Token]:
    """tokenize + normalize, with removed tokens dropped."""
    out = []
    for token in tokenize(text):
        kept = normalize(token)
        if kept is not None:
            out.append(kept)
    return out
