"""End-to-end scaffolding: detect, segment, lemmatize, extract, match, reorder.

Language is detected once per document; YAKE term statistics are document
level while candidate retention is per sentence. Matches are emitted in
text order (span start ascending), not rank order. Stage timings use a
monotonic clock; document-level stages are amortized evenly across the
document's sentences so per-sentence totals add up to the document cost.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .document import Sentence
from .errors import EmptyInput
from .keywords import DEFAULT_TOP_K, DocumentTermStats, Keyword, extract_keywords
from .language import LanguageDetector, LanguageTag
from .matcher import MatcherConfig, PictogramMatch, SemanticMatcher
from .segmentation import split_sentences
from .store import PictoStore
from .tokenization import LemmatizerCascade, tokenize_and_lemmatize

MODE_CACHED = "cached"
MODE_REMOTE = "remote"


@dataclass(frozen=True)
class PipelineSettings:
    k_keywords: int = DEFAULT_TOP_K
    language_override: str | None = None
    mode: str = MODE_CACHED
    matcher: MatcherConfig = field(default_factory=MatcherConfig)

    def __post_init__(self):
        if self.k_keywords < 1:
            raise ValueError("k_keywords must be >= 1")
        if self.mode not in (MODE_CACHED, MODE_REMOTE):
            raise ValueError(f"unknown mode {self.mode!r}")


@dataclass(frozen=True)
class StageTiming:
    detect: float = 0.0
    segment: float = 0.0
    lemmatize: float = 0.0
    extract: float = 0.0
    retrieve: float = 0.0
    disambiguate: float = 0.0
    total: float = 0.0

    def to_dict(self) -> dict:
        return {
            "detect": self.detect,
            "segment": self.segment,
            "lemmatize": self.lemmatize,
            "extract": self.extract,
            "retrieve": self.retrieve,
            "disambiguate": self.disambiguate,
            "total": self.total,
        }


@dataclass
class ScaffoldedSentence:
    sentence: Sentence
    keywords: list[Keyword]
    matches: list[PictogramMatch]
    timing: StageTiming

    def to_dict(self, include_timing: bool = True) -> dict:
        payload = {
            "sentence": self.sentence.to_dict(),
            "keywords": [k.to_dict() for k in self.keywords],
            "matches": [m.to_dict() for m in self.matches],
        }
        if include_timing:
            payload["timing"] = self.timing.to_dict()
        return payload


def scaffold_to_json(scaffolded: list[ScaffoldedSentence], include_timing: bool = True) -> str:
    return json.dumps(
        [s.to_dict(include_timing=include_timing) for s in scaffolded],
        ensure_ascii=False,
    )


def scaffolded_from_dict(payload: dict) -> ScaffoldedSentence:
    """Inverse of ScaffoldedSentence.to_dict, used by session persistence."""
    from .document import Token

    sent = payload["sentence"]
    sentence = Sentence(
        index=sent["index"],
        text=sent["text"],
        tokens=[Token(**tok) for tok in sent["tokens"]],
    )

    def keyword_from(d: dict) -> Keyword:
        return Keyword(
            text=d["text"],
            lemma_text=d["lemma_text"],
            score=d["score"],
            rank=d["rank"],
            span=(d["span"][0], d["span"][1]),
            sentence_index=d["sentence_index"],
        )

    keywords = [keyword_from(d) for d in payload["keywords"]]
    matches = [
        PictogramMatch(
            keyword=keyword_from(d["keyword"]),
            pictogram_id=d["pictogram_id"],
            def_index=d["def_index"],
            similarity=d["similarity"],
            method=d["method"],
        )
        for d in payload["matches"]
    ]
    timing = StageTiming(**payload.get("timing", {}))
    return ScaffoldedSentence(sentence=sentence, keywords=keywords, matches=matches, timing=timing)


@dataclass(frozen=True)
class _DocumentShares:
    detect: float = 0.0
    segment: float = 0.0
    doc_stats: float = 0.0


def _ms(seconds: float) -> float:
    return seconds * 1000.0


class Scaffolder:
    """Holds the loaded analyzers and stores; scaffolding itself is pure."""

    def __init__(
        self,
        store: PictoStore,
        embedder,
        embedding_store=None,
        detector: LanguageDetector | None = None,
        cascade: LemmatizerCascade | None = None,
        settings: PipelineSettings | None = None,
        default_language: str = "en",
        abbreviations_dir: Path | None = None,
        stopwords_dir: Path | None = None,
    ):
        self.store = store
        self.embedder = embedder
        self.embedding_store = embedding_store
        self.detector = detector or LanguageDetector()
        self.cascade = cascade or LemmatizerCascade()
        self.settings = settings or PipelineSettings()
        self.default_language = default_language
        self.abbreviations_dir = abbreviations_dir
        self.stopwords_dir = stopwords_dir

    def _matcher(self, settings: PipelineSettings) -> SemanticMatcher:
        return SemanticMatcher(
            embedder=self.embedder,
            config=settings.matcher,
            embedding_store=self.embedding_store,
            picto_store=self.store,
        )

    def scaffold_document(
        self,
        text: str,
        settings: PipelineSettings | None = None,
        max_workers: int = 0,
    ) -> list[ScaffoldedSentence]:
        settings = settings or self.settings
        if not text.strip():
            raise EmptyInput("document text is empty")

        t0 = time.perf_counter()
        if settings.language_override:
            language = LanguageTag(settings.language_override, 1.0)
        else:
            language = self.detector.detect(text, default=self.default_language)
        detect_ms = _ms(time.perf_counter() - t0)

        t0 = time.perf_counter()
        sentences = split_sentences(text, language, self.abbreviations_dir)
        segment_ms = _ms(time.perf_counter() - t0)

        lemmatize_ms = []
        for sentence in sentences:
            t0 = time.perf_counter()
            tokenize_and_lemmatize(sentence, language, self.cascade, self.stopwords_dir)
            lemmatize_ms.append(_ms(time.perf_counter() - t0))

        t0 = time.perf_counter()
        stats = DocumentTermStats(sentences)
        doc_stats_ms = _ms(time.perf_counter() - t0)

        n = max(1, len(sentences))
        shares = _DocumentShares(
            detect=detect_ms / n, segment=segment_ms / n, doc_stats=doc_stats_ms / n
        )

        def run(pair):
            sentence, lem_ms = pair
            return self.scaffold_sentence(
                sentence,
                stats,
                settings,
                language,
                lemmatize_ms=lem_ms,
                shares=shares,
            )

        work = list(zip(sentences, lemmatize_ms))
        if max_workers and len(work) > 1:
            with ThreadPoolExecutor(max_workers=max_workers) as pool:
                return list(pool.map(run, work))
        return [run(pair) for pair in work]

    def scaffold_sentence(
        self,
        sentence: Sentence,
        stats: DocumentTermStats,
        settings: PipelineSettings | None = None,
        language: LanguageTag | str = "en",
        *,
        lemmatize_ms: float = 0.0,
        shares: _DocumentShares = _DocumentShares(),
    ) -> ScaffoldedSentence:
        settings = settings or self.settings
        lang = language.code if isinstance(language, LanguageTag) else language
        matcher = self._matcher(settings)

        wall_start = time.perf_counter()
        t0 = time.perf_counter()
        keywords = extract_keywords(sentence, stats, settings.k_keywords)
        extract_ms = _ms(time.perf_counter() - t0)

        retrieve_ms = 0.0
        disambiguate_ms = 0.0
        matches: list[PictogramMatch] = []
        for keyword in keywords:
            if keyword.is_numeric:
                t0 = time.perf_counter()
                match = matcher.numeric_match(keyword, lang)
                disambiguate_ms += _ms(time.perf_counter() - t0)
            else:
                t0 = time.perf_counter()
                candidates = self._retrieve(keyword, lang, settings)
                retrieve_ms += _ms(time.perf_counter() - t0)
                t0 = time.perf_counter()
                match = matcher.disambiguate(keyword, sentence, candidates, lang)
                disambiguate_ms += _ms(time.perf_counter() - t0)
            if match is not None:
                matches.append(match)
        matches.sort(key=lambda m: m.keyword.span[0])
        wall_ms = _ms(time.perf_counter() - wall_start)

        timing = StageTiming(
            detect=shares.detect,
            segment=shares.segment,
            lemmatize=lemmatize_ms,
            extract=extract_ms + shares.doc_stats,
            retrieve=retrieve_ms,
            disambiguate=disambiguate_ms,
            total=shares.detect + shares.segment + shares.doc_stats + lemmatize_ms + wall_ms,
        )
        return ScaffoldedSentence(
            sentence=sentence, keywords=keywords, matches=matches, timing=timing
        )

    def _retrieve(self, keyword: Keyword, lang: str, settings: PipelineSettings):
        candidates = self.store.lookup_candidates(keyword.lemma_text, lang)
        if not candidates:
            candidates = self.store.lookup_candidates(keyword.text, lang)
        if not candidates and settings.mode == MODE_REMOTE:
            for query in (keyword.lemma_text, keyword.text):
                result = self.store.fetch_remote(query, lang)
                if result.pictograms:
                    return result.pictograms
            return []
        return candidates
