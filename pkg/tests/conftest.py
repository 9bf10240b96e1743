from __future__ import annotations

from pathlib import Path

import pytest

from pictoscaffold.embedding import HashedNgramEmbedder
from pictoscaffold.language import LanguageDetector
from pictoscaffold.pipeline import PipelineSettings, Scaffolder
from pictoscaffold.store import PictoStore
from pictoscaffold.tokenization import LemmatizerCascade, tokenize_and_lemmatize
from pictoscaffold.segmentation import split_sentences
from pictoscaffold.vector_store import precompute_definition_embeddings

FIXTURES = Path(__file__).parent / "fixtures"
CORPORA = FIXTURES / "corpora"

ALL_LANGS = ("en", "fr", "it", "es", "ar")


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def snapshot_path() -> Path:
    return FIXTURES / "snapshot.jsonl"


@pytest.fixture(scope="session")
def stub_embedder() -> HashedNgramEmbedder:
    return HashedNgramEmbedder()


@pytest.fixture(scope="session")
def detector() -> LanguageDetector:
    return LanguageDetector()


@pytest.fixture(scope="session")
def store(snapshot_path) -> PictoStore:
    s = PictoStore(ALL_LANGS)
    s.ingest_snapshot(snapshot_path)
    return s


@pytest.fixture(scope="session")
def embedding_store(store, stub_embedder, tmp_path_factory):
    out = tmp_path_factory.mktemp("pseb") / "definitions.pseb"
    return precompute_definition_embeddings(store, stub_embedder, out)


@pytest.fixture(scope="session")
def scaffolder(store, stub_embedder, embedding_store, detector) -> Scaffolder:
    return Scaffolder(
        store=store,
        embedder=stub_embedder,
        embedding_store=embedding_store,
        detector=detector,
        settings=PipelineSettings(),
    )


def analyzed_document(text: str, lang: str, cascade: LemmatizerCascade | None = None):
    """Segment + tokenize + lemmatize a text, shared helper for tests."""
    cascade = cascade or LemmatizerCascade()
    sentences = split_sentences(text, lang)
    for sentence in sentences:
        tokenize_and_lemmatize(sentence, lang, cascade)
    return sentences


def corpus_file(name: str) -> Path:
    return CORPORA / name


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One PASS/FAIL/SKIP line per acceptance criterion."""
    from .test_acceptance import CRITERIA

    outcomes: dict[str, str] = {}
    for status in ("passed", "failed", "error", "skipped"):
        for report in terminalreporter.stats.get(status, []):
            nodeid = getattr(report, "nodeid", "")
            if "test_acceptance.py" not in nodeid:
                continue
            name = nodeid.split("::")[-1].split("[")[0]
            if name in CRITERIA:
                worst = {"passed": 0, "skipped": 1, "failed": 2, "error": 2}
                if worst[status] >= worst.get(outcomes.get(name, "passed"), 0):
                    outcomes[name] = status
    if not outcomes:
        return
    label = {"passed": "PASS", "skipped": "SKIP", "failed": "FAIL", "error": "FAIL"}
    terminalreporter.section("acceptance criteria")
    for name, criterion in CRITERIA.items():
        if name in outcomes:
            terminalreporter.write_line(f"[{label[outcomes[name]]}] {criterion}")
