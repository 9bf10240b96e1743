"""Pictogram repository: snapshot ingestion, lookup index, remote client.

Snapshot format is UTF-8 JSON Lines, one pictogram per line:

    {"id": 1, "keywords": [{"lang": "en", "keyword": "prince"}],
     "definitions": [{"lang": "en", "text": "..."}],
     "image_ref": "1.png", "tags": ["person"]}

Definition order within a language assigns def_index 0, 1, ...
"""

from __future__ import annotations

import hashlib
import json
import threading
import unicodedata
import urllib.parse
import urllib.request
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable, Iterable

from .errors import DuplicateId, MalformedRecord, MalformedResponse, RemoteUnavailable

_ARABIC_ALEF_VARIANTS = str.maketrans(
    {"أ": "ا", "إ": "ا", "آ": "ا", "ٱ": "ا"}
)


def normalize_keyword(keyword: str, lang: str) -> str:
    """Index and query normalization: NFC, casefold, single internal spaces."""
    folded = unicodedata.normalize("NFC", keyword).casefold()
    folded = " ".join(folded.split())
    if lang == "ar":
        folded = folded.replace("ـ", "")  # tatweel
        folded = folded.translate(_ARABIC_ALEF_VARIANTS)
    return folded


@dataclass(frozen=True)
class Definition:
    lang: str
    text: str
    def_index: int


@dataclass(frozen=True)
class Pictogram:
    id: int
    keywords: tuple[tuple[str, str], ...]  # (lang, keyword) pairs
    definitions: tuple[Definition, ...]
    image_ref: str = ""
    tags: tuple[str, ...] = ()

    def definitions_for(self, lang: str) -> list[Definition]:
        return [d for d in self.definitions if d.lang == lang]

    def to_record(self) -> dict:
        return {
            "id": self.id,
            "keywords": [{"lang": l, "keyword": k} for l, k in self.keywords],
            "definitions": [{"lang": d.lang, "text": d.text} for d in self.definitions],
            "image_ref": self.image_ref,
            "tags": list(self.tags),
        }


@dataclass(frozen=True)
class SnapshotManifest:
    keyword_counts: dict[str, int]
    pictogram_counts: dict[str, int]
    total_pictograms: int
    snapshot_version: str
    created_at: str

    def to_dict(self) -> dict:
        return {
            "keyword_counts": dict(sorted(self.keyword_counts.items())),
            "pictogram_counts": dict(sorted(self.pictogram_counts.items())),
            "total_pictograms": self.total_pictograms,
            "snapshot_version": self.snapshot_version,
            "created_at": self.created_at,
        }


def _parse_record(obj, line_no: int, langs: frozenset[str] | None) -> Pictogram:
    if not isinstance(obj, dict):
        raise MalformedRecord(line_no, "record is not an object")
    pid = obj.get("id")
    if not isinstance(pid, int) or isinstance(pid, bool) or pid <= 0:
        raise MalformedRecord(line_no, f"id must be a positive integer, got {pid!r}")
    raw_keywords = obj.get("keywords", [])
    raw_definitions = obj.get("definitions", [])
    if not isinstance(raw_keywords, list) or not isinstance(raw_definitions, list):
        raise MalformedRecord(line_no, "keywords and definitions must be arrays")

    keywords = []
    for entry in raw_keywords:
        if (
            not isinstance(entry, dict)
            or not isinstance(entry.get("lang"), str)
            or not isinstance(entry.get("keyword"), str)
            or not entry["keyword"].strip()
        ):
            raise MalformedRecord(line_no, f"bad keyword entry {entry!r}")
        if langs is None or entry["lang"] in langs:
            keywords.append((entry["lang"], entry["keyword"]))

    definitions = []
    per_lang_counter: dict[str, int] = {}
    for entry in raw_definitions:
        if (
            not isinstance(entry, dict)
            or not isinstance(entry.get("lang"), str)
            or not isinstance(entry.get("text"), str)
        ):
            raise MalformedRecord(line_no, f"bad definition entry {entry!r}")
        lang = entry["lang"]
        if langs is not None and lang not in langs:
            continue
        def_index = per_lang_counter.get(lang, 0)
        per_lang_counter[lang] = def_index + 1
        definitions.append(Definition(lang=lang, text=entry["text"], def_index=def_index))

    image_ref = obj.get("image_ref", "")
    tags = obj.get("tags", [])
    if not isinstance(image_ref, str) or not isinstance(tags, list):
        raise MalformedRecord(line_no, "image_ref must be a string and tags an array")
    return Pictogram(
        id=pid,
        keywords=tuple(keywords),
        definitions=tuple(definitions),
        image_ref=image_ref,
        tags=tuple(str(t) for t in tags),
    )


def _default_transport(url: str, timeout: float) -> bytes:
    with urllib.request.urlopen(url, timeout=timeout) as response:
        return response.read()


class RemoteClient:
    """HTTP client for the pictogram search endpoint.

    ``transport`` is injectable (url -> body bytes) so tests can run
    offline and cached mode can prove it never touches the network.
    """

    def __init__(
        self,
        base_url: str,
        transport: Callable[[str, float], bytes] | None = None,
        timeout: float = 5.0,
    ):
        self.base_url = base_url.rstrip("/")
        self.timeout = timeout
        self._transport = transport or _default_transport

    def search(self, keyword: str, lang: str) -> list[Pictogram]:
        url = f"{self.base_url}/pictograms/{lang}/search/{urllib.parse.quote(keyword)}"
        body = self._transport(url, self.timeout)
        try:
            payload = json.loads(body.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise MalformedResponse(f"response is not JSON: {exc}") from exc
        if not isinstance(payload, list):
            raise MalformedResponse("expected a JSON array of pictogram records")
        try:
            return [_parse_record(obj, i, None) for i, obj in enumerate(payload)]
        except MalformedRecord as exc:
            raise MalformedResponse(str(exc)) from exc


@dataclass
class RemoteFetchResult:
    pictograms: list[Pictogram]
    stale: bool = False


class PictoStore:
    """In-memory (lang, keyword) -> pictogram index over a snapshot.

    Immutable after load except for the explicit write-through path,
    which mutates under a lock and keeps lookups consistent.
    """

    def __init__(
        self,
        langs: Iterable[str],
        remote: RemoteClient | None = None,
        cache_append_path: Path | str | None = None,
    ):
        self.langs = frozenset(langs)
        self.remote = remote
        self.cache_append_path = Path(cache_append_path) if cache_append_path else None
        self._pictograms: dict[int, Pictogram] = {}
        self._index: dict[tuple[str, str], list[int]] = {}
        self._lock = threading.RLock()
        self._manifest: SnapshotManifest | None = None

    # -- loading ---------------------------------------------------------

    def ingest_snapshot(self, path: Path | str) -> SnapshotManifest:
        path = Path(path)
        with path.open(encoding="utf-8") as fh:
            for line_no, raw in enumerate(fh, start=1):
                line = raw.strip()
                if not line:
                    continue
                try:
                    obj = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise MalformedRecord(line_no, f"invalid JSON: {exc}") from exc
                pictogram = _parse_record(obj, line_no, self.langs)
                if pictogram.id in self._pictograms:
                    raise DuplicateId(pictogram.id)
                self._insert(pictogram)
        self._manifest = self._compute_manifest(
            snapshot_version=self.content_version(),
            created_at=datetime.now(timezone.utc).isoformat(timespec="seconds"),
        )
        return self._manifest

    def content_version(self) -> str:
        """Hash of the canonical serialization: stable across re-ingestion."""
        canonical = "\n".join(
            json.dumps(p.to_record(), ensure_ascii=False, sort_keys=True)
            for p in self.all_pictograms()
        )
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:12]

    def _insert(self, pictogram: Pictogram) -> None:
        self._pictograms[pictogram.id] = pictogram
        for lang, keyword in pictogram.keywords:
            key = (lang, normalize_keyword(keyword, lang))
            ids = self._index.setdefault(key, [])
            if pictogram.id not in ids:
                ids.append(pictogram.id)
                ids.sort()

    # -- queries ---------------------------------------------------------

    def lookup_candidates(self, keyword: str, lang: str) -> list[Pictogram]:
        ids = self._index.get((lang, normalize_keyword(keyword, lang)), [])
        return [self._pictograms[i] for i in ids]

    def all_pictograms(self) -> list[Pictogram]:
        return [self._pictograms[i] for i in sorted(self._pictograms)]

    def __len__(self) -> int:
        return len(self._pictograms)

    def _compute_manifest(self, snapshot_version: str, created_at: str) -> SnapshotManifest:
        keyword_counts: dict[str, int] = {lang: 0 for lang in sorted(self.langs)}
        lang_ids: dict[str, set[int]] = {lang: set() for lang in sorted(self.langs)}
        for (lang, _), ids in self._index.items():
            keyword_counts[lang] = keyword_counts.get(lang, 0) + 1
            lang_ids.setdefault(lang, set()).update(ids)
        return SnapshotManifest(
            keyword_counts=keyword_counts,
            pictogram_counts={lang: len(ids) for lang, ids in lang_ids.items()},
            total_pictograms=len(self._pictograms),
            snapshot_version=snapshot_version,
            created_at=created_at,
        )

    def manifest_stats(self) -> SnapshotManifest:
        """Recomputed from the live index; version/timestamp carried from ingest."""
        version = self._manifest.snapshot_version if self._manifest else "empty"
        created = (
            self._manifest.created_at
            if self._manifest
            else datetime.now(timezone.utc).isoformat(timespec="seconds")
        )
        return self._compute_manifest(version, created)

    def write_snapshot(self, path: Path | str) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            for pictogram in self.all_pictograms():
                fh.write(json.dumps(pictogram.to_record(), ensure_ascii=False) + "\n")

    # -- write-through ---------------------------------------------------

    def upsert(self, pictogram: Pictogram) -> None:
        with self._lock:
            previous = self._pictograms.get(pictogram.id)
            if previous is not None:
                for lang, keyword in previous.keywords:
                    key = (lang, normalize_keyword(keyword, lang))
                    ids = self._index.get(key)
                    if ids and pictogram.id in ids:
                        ids.remove(pictogram.id)
                        if not ids:
                            del self._index[key]
            filtered = Pictogram(
                id=pictogram.id,
                keywords=tuple((l, k) for l, k in pictogram.keywords if l in self.langs),
                definitions=tuple(d for d in pictogram.definitions if d.lang in self.langs),
                image_ref=pictogram.image_ref,
                tags=pictogram.tags,
            )
            self._insert(filtered)
            if self.cache_append_path:
                with open(self.cache_append_path, "a", encoding="utf-8") as fh:
                    fh.write(json.dumps(filtered.to_record(), ensure_ascii=False) + "\n")

    def fetch_remote(self, keyword: str, lang: str) -> RemoteFetchResult:
        """Query the remote endpoint, write results through to the local index."""
        if self.remote is None:
            raise RemoteUnavailable("remote endpoint not configured")
        try:
            records = self.remote.search(keyword, lang)
        except MalformedResponse:
            raise
        except Exception as exc:
            cached = self.lookup_candidates(keyword, lang)
            if cached:
                return RemoteFetchResult(cached, stale=True)
            raise RemoteUnavailable(f"remote fetch failed: {exc}") from exc
        for record in records:
            self.upsert(record)
        return RemoteFetchResult(self.lookup_candidates(keyword, lang), stale=False)
