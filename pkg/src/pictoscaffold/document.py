"""Core text types: tokens, sentences, documents."""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field

from .language import LanguageTag

# Group/decimal separators accepted inside a numeric token (at most one,
# strictly internal): Latin point/comma and Arabic decimal/thousands marks.
NUMERIC_SEPARATORS = frozenset({".", ",", "٫", "٬"})


def is_numeric_surface(surface: str) -> bool:
    """Digits only, with at most one internal group or decimal separator."""
    if not surface:
        return False
    sep_positions = [i for i, ch in enumerate(surface) if ch in NUMERIC_SEPARATORS]
    if len(sep_positions) > 1:
        return False
    if sep_positions and sep_positions[0] in (0, len(surface) - 1):
        return False
    digits = [ch for i, ch in enumerate(surface) if i not in sep_positions]
    return bool(digits) and all(ch.isdecimal() for ch in digits)


def is_punctuation_surface(surface: str) -> bool:
    return bool(surface) and all(
        unicodedata.category(ch)[0] in ("P", "S") for ch in surface
    )


@dataclass(frozen=True)
class Token:
    surface: str
    lemma: str
    start: int
    end: int
    is_numeric: bool
    is_stopword: bool

    def __post_init__(self):
        if not (0 <= self.start < self.end):
            raise ValueError(f"bad token span ({self.start}, {self.end})")
        if not self.lemma:
            raise ValueError("token lemma must be non-empty")

    @property
    def is_punctuation(self) -> bool:
        return is_punctuation_surface(self.surface)

    @property
    def is_word(self) -> bool:
        return not self.is_punctuation

    def to_dict(self) -> dict:
        return {
            "surface": self.surface,
            "lemma": self.lemma,
            "start": self.start,
            "end": self.end,
            "is_numeric": self.is_numeric,
            "is_stopword": self.is_stopword,
        }


@dataclass
class Sentence:
    index: int
    text: str
    tokens: list[Token] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "text": self.text,
            "tokens": [t.to_dict() for t in self.tokens],
        }


@dataclass
class Document:
    language: LanguageTag
    sentences: list[Sentence]
    source_id: str = ""

    def to_dict(self) -> dict:
        return {
            "language": {"code": self.language.code, "confidence": self.language.confidence},
            "sentences": [s.to_dict() for s in self.sentences],
            "source_id": self.source_id,
        }
