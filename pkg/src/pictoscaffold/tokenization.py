"""Tokenization and the two-tier lemmatization cascade.

Lemma resolution order per token: primary analyzer lexicon (irregular
forms, one file per language), then the fallback lemma table, then the
case-folded surface itself. The cascade keeps hit counters so the tier
order stays observable.
"""

from __future__ import annotations

import unicodedata
from collections import Counter
from pathlib import Path

from . import resources
from .document import Sentence, Token, is_numeric_surface
from .errors import EmptyInput, UnsupportedLanguage
from .language import LanguageTag

_APOSTROPHES = frozenset({"'", "’"})
_ARABIC_CLITICS = "وفبكل"  # و ف ب ك ل

# Vowel-elision prefixes that split off as their own token ("l'avion"
# becomes "l'" + "avion"). English contractions stay whole.
_ELISION_PREFIXES = {
    "fr": frozenset(
        "c d j l m n s t qu jusqu lorsqu puisqu quoiqu quelqu presqu".split()
    ),
    "it": frozenset(
        "l un d c s m t v gl all dall dell nell sull agl degl negl sugl "
        "quell quest bell sant tutt mezz anch com dov senz".split()
    ),
}


def _is_word_char(ch: str) -> bool:
    return unicodedata.category(ch)[0] in ("L", "M", "N")


def _scan_word(text: str, i: int) -> int:
    n = len(text)
    j = i
    while j < n:
        ch = text[j]
        if _is_word_char(ch):
            j += 1
            continue
        nxt_is_word = j + 1 < n and _is_word_char(text[j + 1])
        if j > i and nxt_is_word and (ch in _APOSTROPHES or ch == "-"):
            j += 1
            continue
        if (
            j > i
            and j + 1 < n
            and ch in {".", ",", "٫", "٬"}
            and text[j - 1].isdecimal()
            and text[j + 1].isdecimal()
        ):
            j += 1
            continue
        break
    return j


def _split_elisions(surface: str, start: int, lang: str) -> list[tuple[str, int, int]]:
    prefixes = _ELISION_PREFIXES.get(lang)
    pieces = []
    while prefixes:
        cut = next((k for k, ch in enumerate(surface) if ch in _APOSTROPHES), None)
        if cut is None or cut + 1 >= len(surface):
            break
        if surface[:cut].casefold() not in prefixes:
            break
        pieces.append((surface[: cut + 1], start, start + cut + 1))
        surface = surface[cut + 1 :]
        start += cut + 1
    pieces.append((surface, start, start + len(surface)))
    return pieces


def tokenize(text: str, lang: LanguageTag | str) -> list[tuple[str, int, int]]:
    """Surface spans (surface, start, end); punctuation runs become their own tokens."""
    code = lang.code if isinstance(lang, LanguageTag) else lang
    out: list[tuple[str, int, int]] = []
    n = len(text)
    i = 0
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if _is_word_char(ch):
            j = _scan_word(text, i)
            out.extend(_split_elisions(text[i:j], i, code))
            i = j
            continue
        j = i
        while j < n and text[j] == ch:
            j += 1
        out.append((text[i:j], i, j))
        i = j
    return out


def _fold(surface: str) -> str:
    folded = unicodedata.normalize("NFC", surface).casefold()
    for apo in _APOSTROPHES:
        folded = folded.replace(apo, "'")
    return folded


def lookup_forms(surface: str, lang: str) -> list[str]:
    """Normalized lookup candidates, most specific first."""
    base = _fold(surface)
    forms = [base]
    if lang == "ar":
        bare = base.replace("ـ", "")  # tatweel
        if bare != base:
            forms.append(bare)
        stems = [bare]
        if len(bare) > 3 and bare[0] in _ARABIC_CLITICS:
            rest = bare[1:]
            stems.append(rest)
            if rest.startswith("ال") and len(rest) > 4:  # ال
                stems.append(rest[2:])
        if bare.startswith("ال") and len(bare) > 4:
            stems.append(bare[2:])
        if bare.startswith("لل") and len(bare) > 4:  # لل = li + al
            stems.append(bare[2:])
        for s in stems:
            if s not in forms:
                forms.append(s)
    return forms


class LemmatizerCascade:
    """Primary analyzer lexicon, then fallback table, then identity."""

    def __init__(self, analyzer_dir: Path | None = None, lemmas_dir: Path | None = None):
        self.analyzer_dir = analyzer_dir
        self.lemmas_dir = lemmas_dir
        self.counters: Counter = Counter()

    def covers(self, lang: str) -> bool:
        return (
            resources.analyzer_lexicon(lang, self.analyzer_dir) is not None
            or resources.lemma_table(lang, self.lemmas_dir) is not None
        )

    def primary_vocabulary(self, lang: str) -> frozenset[str]:
        lexicon = resources.analyzer_lexicon(lang, self.analyzer_dir)
        return frozenset(lexicon) if lexicon else frozenset()

    def lemma(self, surface: str, lang: str) -> str:
        primary = resources.analyzer_lexicon(lang, self.analyzer_dir)
        fallback = resources.lemma_table(lang, self.lemmas_dir)
        if primary is None and fallback is None:
            raise UnsupportedLanguage(f"no analyzer or lemma table for {lang!r}")
        forms = lookup_forms(surface, lang)
        if primary is not None:
            for form in forms:
                if form in primary:
                    self.counters["primary_hits"] += 1
                    return primary[form]
        if fallback is not None:
            self.counters["fallback_consults"] += 1
            for form in forms:
                if form in fallback:
                    self.counters["fallback_hits"] += 1
                    return fallback[form]
        self.counters["identity_fallbacks"] += 1
        return forms[0]


def tokenize_and_lemmatize(
    sentence: Sentence,
    lang: LanguageTag | str,
    cascade: LemmatizerCascade | None = None,
    stopwords_dir: Path | None = None,
) -> Sentence:
    """Populate sentence.tokens; raises UnsupportedLanguage when no tier covers lang."""
    if not sentence.text.strip():
        raise EmptyInput("sentence text is empty")
    code = lang.code if isinstance(lang, LanguageTag) else lang
    cascade = cascade or LemmatizerCascade()
    if not cascade.covers(code):
        raise UnsupportedLanguage(f"no analyzer or lemma table for {code!r}")
    stopset = resources.stopwords(code, stopwords_dir)

    tokens = []
    for surface, start, end in tokenize(sentence.text, code):
        numeric = is_numeric_surface(surface)
        folded = _fold(surface)
        if numeric or not any(_is_word_char(c) for c in surface):
            lemma = folded
        else:
            lemma = cascade.lemma(surface, code)
        tokens.append(
            Token(
                surface=surface,
                lemma=lemma,
                start=start,
                end=end,
                is_numeric=numeric,
                is_stopword=folded in stopset,
            )
        )
    sentence.tokens = tokens
    return sentence
