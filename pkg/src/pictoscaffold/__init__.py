"""Multilingual text-to-pictogram scaffolding engine."""

from .document import Document, Sentence, Token
from .errors import PictoScaffoldError
from .evaluation import (
    AuditRecord,
    AuditReport,
    CoverageReport,
    LatencyReport,
    audit_aggregate,
    coverage_report,
    latency_stats,
)
from .keywords import Keyword, TermFeatures, extract_keywords
from .language import LanguageDetector, LanguageTag, detect_language
from .matcher import MatcherConfig, PictogramMatch, SemanticMatcher, context_window
from .pipeline import PipelineSettings, ScaffoldedSentence, Scaffolder, StageTiming
from .segmentation import split_sentences
from .store import Definition, Pictogram, PictoStore, RemoteClient, SnapshotManifest
from .tokenization import LemmatizerCascade, tokenize_and_lemmatize

__version__ = "0.1.0"

__all__ = [
    "AuditRecord",
    "AuditReport",
    "CoverageReport",
    "Definition",
    "Document",
    "Keyword",
    "LanguageDetector",
    "LanguageTag",
    "LatencyReport",
    "LemmatizerCascade",
    "MatcherConfig",
    "PictoScaffoldError",
    "PictoStore",
    "Pictogram",
    "PictogramMatch",
    "PipelineSettings",
    "RemoteClient",
    "ScaffoldedSentence",
    "Scaffolder",
    "SemanticMatcher",
    "Sentence",
    "SnapshotManifest",
    "StageTiming",
    "TermFeatures",
    "Token",
    "audit_aggregate",
    "context_window",
    "coverage_report",
    "detect_language",
    "extract_keywords",
    "latency_stats",
    "split_sentences",
    "tokenize_and_lemmatize",
    "__version__",
]
