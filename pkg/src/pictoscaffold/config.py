"""Flat key=value configuration file and runtime assembly.

Example::

    # pictoscaffold.conf
    snapshot_path = fixtures/snapshot.jsonl
    embeddings_path = cache/definitions.pseb
    image_cache_dir = cache/images
    audit_store_path = cache/audits.csv
    languages = en,fr,it,es,ar
    embedder = hashed-ngram-64
    mode = cached
    remote_base_url = https://api.arasaac.org/v1
    default_language = en
    k_keywords = 3
    window_radius = 2
    similarity_floor = -1.0
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from pathlib import Path

from .language import SUPPORTED_LANGUAGES, DEFAULT_CONFIDENCE_THRESHOLD


@dataclass
class AppConfig:
    snapshot_path: str = ""
    embeddings_path: str = ""
    image_cache_dir: str = "cache/images"
    audit_store_path: str = "cache/audits.csv"
    session_persist_dir: str = ""
    languages: tuple[str, ...] = SUPPORTED_LANGUAGES
    embedder: str = "hashed-ngram-64"
    mode: str = "cached"
    remote_base_url: str = ""
    cache_append_path: str = ""
    default_language: str = "en"
    detector_threshold: float = DEFAULT_CONFIDENCE_THRESHOLD
    k_keywords: int = 3
    window_radius: int = 2
    similarity_floor: float = -1.0
    stopwords_dir: str = ""
    abbreviations_dir: str = ""
    lemmas_dir: str = ""
    analyzer_dir: str = ""

    @classmethod
    def from_file(cls, path: Path | str) -> "AppConfig":
        values = parse_config_file(path)
        return cls.from_mapping(values)

    @classmethod
    def from_mapping(cls, values: dict[str, str]) -> "AppConfig":
        kwargs = {}
        known = {f.name: f for f in fields(cls)}
        for key, raw in values.items():
            if key not in known:
                raise ValueError(f"unknown configuration key {key!r}")
            target = known[key].type
            if key == "languages":
                kwargs[key] = tuple(v.strip() for v in raw.split(",") if v.strip())
            elif target in ("int", int):
                kwargs[key] = int(raw)
            elif target in ("float", float):
                kwargs[key] = float(raw)
            else:
                kwargs[key] = raw
        return cls(**kwargs)


def parse_config_file(path: Path | str) -> dict[str, str]:
    values: dict[str, str] = {}
    for line_no, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"line {line_no}: expected key = value, got {line!r}")
        key, _, value = line.partition("=")
        value = value.strip()
        if len(value) >= 2 and value[0] == value[-1] and value[0] in ("'", '"'):
            value = value[1:-1]
        values[key.strip()] = value
    return values


def build_scaffolder(config: AppConfig):
    """Assemble a ready Scaffolder from configuration (loads stores eagerly)."""
    from .embedding import get_embedder
    from .language import LanguageDetector
    from .matcher import MatcherConfig
    from .pipeline import PipelineSettings, Scaffolder
    from .store import PictoStore, RemoteClient
    from .tokenization import LemmatizerCascade
    from .vector_store import read_embedding_store

    remote = RemoteClient(config.remote_base_url) if config.remote_base_url else None
    store = PictoStore(
        config.languages,
        remote=remote,
        cache_append_path=config.cache_append_path or None,
    )
    if config.snapshot_path:
        store.ingest_snapshot(config.snapshot_path)
    embedding_store = None
    if config.embeddings_path and Path(config.embeddings_path).exists():
        embedding_store = read_embedding_store(config.embeddings_path)
    settings = PipelineSettings(
        k_keywords=config.k_keywords,
        mode=config.mode,
        matcher=MatcherConfig(
            window_radius=config.window_radius,
            similarity_floor=config.similarity_floor,
            embedder_id=config.embedder,
        ),
    )
    return Scaffolder(
        store=store,
        embedder=get_embedder(config.embedder),
        embedding_store=embedding_store,
        detector=LanguageDetector(
            supported=tuple(config.languages), threshold=config.detector_threshold
        ),
        cascade=LemmatizerCascade(
            analyzer_dir=Path(config.analyzer_dir) if config.analyzer_dir else None,
            lemmas_dir=Path(config.lemmas_dir) if config.lemmas_dir else None,
        ),
        settings=settings,
        default_language=config.default_language,
        abbreviations_dir=Path(config.abbreviations_dir) if config.abbreviations_dir else None,
        stopwords_dir=Path(config.stopwords_dir) if config.stopwords_dir else None,
    )
