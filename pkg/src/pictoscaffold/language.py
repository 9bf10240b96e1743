"""Character n-gram language identification.

Profiles are built from bundled seed texts (one per known language) and
score an input by add-one-smoothed log-likelihood over character 1/2/3-grams.
Confidences are the softmax of the per-language log-likelihoods, so short or
script-ambiguous inputs yield a flat distribution and fall back to the
session default language.
"""

from __future__ import annotations

import math
import unicodedata
from collections import Counter
from dataclasses import dataclass

from . import resources
from .errors import EmptyInput, UnsupportedLanguage

SUPPORTED_LANGUAGES = ("ar", "en", "es", "fr", "it")
DEFAULT_CONFIDENCE_THRESHOLD = 0.5
_NGRAM_ORDERS = (1, 2, 3)
# Confidence is the softmax posterior scaled by letters/12 (capped at 1):
# a couple of characters never count as confident evidence, whatever the
# posterior says.
_MIN_EVIDENCE_LETTERS = 12


@dataclass(frozen=True)
class LanguageTag:
    code: str
    confidence: float

    def __post_init__(self):
        if len(self.code) != 2 or not self.code.islower():
            raise ValueError(f"language code must be two lowercase letters: {self.code!r}")
        if not 0.0 <= self.confidence <= 1.0:
            raise ValueError(f"confidence out of [0,1]: {self.confidence}")


def normalize_for_detection(text: str) -> str:
    """Casefolded letters only, runs of anything else collapsed to one space."""
    folded = unicodedata.normalize("NFC", text).casefold()
    out: list[str] = []
    prev_space = True
    for ch in folded:
        if unicodedata.category(ch).startswith("L"):
            out.append(ch)
            prev_space = False
        elif not prev_space:
            out.append(" ")
            prev_space = True
    return "".join(out).strip()


def char_ngrams(text: str, order: int) -> list[str]:
    padded = f" {text} "
    if len(padded) < order:
        return []
    return [padded[i : i + order] for i in range(len(padded) - order + 1)]


class LanguageDetector:
    """Detector over the bundled seed profiles.

    ``supported`` restricts what may be returned; profiles for other
    languages still participate in scoring so that confidently foreign
    text raises UnsupportedLanguage instead of being mislabeled.
    """

    def __init__(
        self,
        supported: tuple[str, ...] = SUPPORTED_LANGUAGES,
        threshold: float = DEFAULT_CONFIDENCE_THRESHOLD,
    ):
        self.supported = tuple(sorted(supported))
        self.threshold = threshold
        self._langs = resources.profile_languages()
        self._counts: dict[str, dict[int, Counter]] = {}
        self._totals: dict[str, dict[int, int]] = {}
        for lang in self._langs:
            seed = normalize_for_detection(resources.profile_seed(lang))
            per_order = {n: Counter(char_ngrams(seed, n)) for n in _NGRAM_ORDERS}
            self._counts[lang] = per_order
            self._totals[lang] = {n: sum(c.values()) for n, c in per_order.items()}
        self._vocab_sizes = {
            n: len(set().union(*(self._counts[lang][n] for lang in self._langs))) + 1
            for n in _NGRAM_ORDERS
        }

    def log_likelihoods(self, text: str) -> dict[str, float]:
        normalized = normalize_for_detection(text)
        scores = {}
        for lang in self._langs:
            ll = 0.0
            for n in _NGRAM_ORDERS:
                counts = self._counts[lang][n]
                denom = self._totals[lang][n] + self._vocab_sizes[n]
                for gram in char_ngrams(normalized, n):
                    ll += math.log((counts[gram] + 1) / denom)
            scores[lang] = ll
        return scores

    def confidences(self, text: str) -> dict[str, float]:
        scores = self.log_likelihoods(text)
        peak = max(scores.values())
        expd = {lang: math.exp(ll - peak) for lang, ll in scores.items()}
        total = sum(expd.values())
        letters = sum(1 for ch in normalize_for_detection(text) if ch != " ")
        evidence = min(1.0, letters / _MIN_EVIDENCE_LETTERS)
        return {lang: evidence * v / total for lang, v in expd.items()}

    def detect(self, text: str, default: LanguageTag | str) -> LanguageTag:
        if not text.strip():
            raise EmptyInput("text is empty or whitespace-only")
        default_code = default.code if isinstance(default, LanguageTag) else default
        if default_code not in self.supported:
            raise ValueError(f"default language {default_code!r} not in supported set")

        conf = self.confidences(text)
        ranked = sorted(conf.items(), key=lambda kv: (-kv[1], kv[0]))
        top_lang, top_conf = ranked[0]
        if top_lang not in self.supported and top_conf >= self.threshold:
            raise UnsupportedLanguage(
                f"detected {top_lang!r} with confidence {top_conf:.3f}, outside supported set"
            )
        for lang, value in ranked:
            if lang in self.supported:
                if value >= self.threshold:
                    return LanguageTag(lang, value)
                break
        return LanguageTag(default_code, conf[default_code])


def detect_language(
    text: str, default: LanguageTag | str, detector: LanguageDetector | None = None
) -> LanguageTag:
    return (detector or _shared_detector()).detect(text, default)


_DETECTOR: LanguageDetector | None = None


def _shared_detector() -> LanguageDetector:
    global _DETECTOR
    if _DETECTOR is None:
        _DETECTOR = LanguageDetector()
    return _DETECTOR
