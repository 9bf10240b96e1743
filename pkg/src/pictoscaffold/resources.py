"""Loading of bundled and user-supplied language data files.

All files are UTF-8 plain text. Lists hold one entry per line; lemma
tables are two-column TSV (surface TAB lemma). Lines that are empty or
start with ``#`` are ignored. User paths from the configuration override
the bundled defaults per language.
"""

from __future__ import annotations

import unicodedata
from functools import lru_cache
from importlib import resources as importlib_resources
from pathlib import Path
from typing import Iterable

_DATA_PACKAGE = "pictoscaffold.data"


def _bundled_dir(kind: str) -> Path:
    root = importlib_resources.files(_DATA_PACKAGE)
    return Path(str(root.joinpath(kind)))


def data_lines(path: Path) -> list[str]:
    lines = []
    for raw in path.read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        lines.append(unicodedata.normalize("NFC", line))
    return lines


def load_word_set(path: Path) -> frozenset[str]:
    return frozenset(w.casefold() for w in data_lines(path))


def load_lemma_table(path: Path) -> dict[str, str]:
    table = {}
    for line in data_lines(path):
        parts = line.split("\t")
        if len(parts) != 2:
            raise ValueError(f"{path}: expected 'surface<TAB>lemma', got {line!r}")
        surface, lemma = parts
        table[surface.casefold()] = lemma.casefold()
    return table


def _resolve(kind: str, lang: str, suffix: str, override_dir: Path | None) -> Path | None:
    if override_dir is not None:
        candidate = Path(override_dir) / f"{lang}{suffix}"
        if candidate.exists():
            return candidate
    candidate = _bundled_dir(kind) / f"{lang}{suffix}"
    return candidate if candidate.exists() else None


@lru_cache(maxsize=None)
def stopwords(lang: str, override_dir: Path | None = None) -> frozenset[str]:
    path = _resolve("stopwords", lang, ".txt", override_dir)
    return load_word_set(path) if path else frozenset()


@lru_cache(maxsize=None)
def abbreviations(lang: str, override_dir: Path | None = None) -> frozenset[str]:
    path = _resolve("abbreviations", lang, ".txt", override_dir)
    return load_word_set(path) if path else frozenset()


@lru_cache(maxsize=None)
def analyzer_lexicon(lang: str, override_dir: Path | None = None) -> dict[str, str] | None:
    """Primary-tier lexicon; None when the analyzer lacks the language."""
    path = _resolve("analyzer", lang, ".tsv", override_dir)
    return load_lemma_table(path) if path else None


@lru_cache(maxsize=None)
def lemma_table(lang: str, override_dir: Path | None = None) -> dict[str, str] | None:
    """Fallback-tier lemma table; None when absent for the language."""
    path = _resolve("lemmas", lang, ".tsv", override_dir)
    return load_lemma_table(path) if path else None


def profile_languages() -> list[str]:
    return sorted(p.stem for p in _bundled_dir("profiles").glob("*.txt"))


@lru_cache(maxsize=None)
def profile_seed(lang: str) -> str:
    path = _bundled_dir("profiles") / f"{lang}.txt"
    return path.read_text(encoding="utf-8")


def available_languages(kinds: Iterable[str] = ("stopwords",)) -> list[str]:
    langs: set[str] = set()
    for kind in kinds:
        directory = _bundled_dir(kind)
        langs.update(p.stem for p in directory.iterdir() if p.suffix in (".txt", ".tsv"))
    return sorted(langs)
