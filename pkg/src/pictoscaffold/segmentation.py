"""Sentence segmentation with per-language abbreviation suppression."""

from __future__ import annotations

from pathlib import Path

from . import resources
from .document import Sentence
from .language import LanguageTag

TERMINALS = frozenset({".", "!", "?", "…", "؟", "۔"})  # … ؟ ۔
_CLOSERS = frozenset({'"', "'", ")", "]", "}", "»", "”", "’"})
_OPENERS = frozenset({'"', "'", "(", "[", "{", "«", "“", "‘"})


def _abbreviation_before(text: str, dot: int, span_start: int, abbrevs: frozenset[str]) -> bool:
    left = dot
    while left > span_start and not text[left - 1].isspace():
        left -= 1
    word = text[left : dot + 1]
    while word and word[0] in _OPENERS:
        word = word[1:]
    return word.casefold() in abbrevs


def split_sentences(
    text: str, lang: LanguageTag | str, abbreviations_dir: Path | None = None
) -> list[Sentence]:
    """Split on terminal punctuation; every non-space character lands in exactly one sentence."""
    code = lang.code if isinstance(lang, LanguageTag) else lang
    abbrevs = resources.abbreviations(code, abbreviations_dir)

    spans: list[tuple[int, int]] = []
    n = len(text)
    start = 0
    i = 0
    while i < n:
        ch = text[i]
        if ch not in TERMINALS:
            i += 1
            continue
        nxt = text[i + 1] if i + 1 < n else ""
        # A dot glued to a following letter/digit is token-internal
        # ("3.14", "e.g.", "www.example.org"), never a boundary.
        if ch == "." and nxt and not nxt.isspace() and nxt not in TERMINALS and nxt not in _CLOSERS:
            i += 1
            continue
        if ch == "." and _abbreviation_before(text, i, start, abbrevs):
            i += 1
            continue
        j = i
        while j + 1 < n and text[j + 1] in TERMINALS:
            j += 1
        while j + 1 < n and text[j + 1] in _CLOSERS:
            j += 1
        spans.append((start, j + 1))
        start = j + 1
        i = j + 1
    if start < n:
        spans.append((start, n))

    sentences = []
    for lo, hi in spans:
        chunk = text[lo:hi].strip()
        if chunk:
            sentences.append(Sentence(index=len(sentences), text=chunk))
    return sentences
