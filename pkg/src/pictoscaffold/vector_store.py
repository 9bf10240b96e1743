"""Binary store for precomputed definition embeddings.

Layout (all integers little-endian):

    magic   4 bytes  "PSEB"
    version u32      1
    dim     u32
    count   u64
    then per record:
      pictogram_id u32
      lang_len     u8, followed by lang_len bytes UTF-8
      def_index    u16
      values       dim * f32
"""

from __future__ import annotations

import struct
from pathlib import Path
from typing import Iterable

import numpy as np

from .errors import MalformedRecord

MAGIC = b"PSEB"
VERSION = 1

RecordKey = tuple[int, str, int]


class EmbeddingStore:
    def __init__(self, dim: int, vectors: dict[RecordKey, np.ndarray]):
        self.dim = dim
        self._vectors = vectors

    def __len__(self) -> int:
        return len(self._vectors)

    def get(self, pictogram_id: int, lang: str, def_index: int) -> np.ndarray | None:
        return self._vectors.get((pictogram_id, lang, def_index))

    def keys(self) -> list[RecordKey]:
        return sorted(self._vectors)


def write_embedding_store(
    path: Path | str, dim: int, records: Iterable[tuple[int, str, int, np.ndarray]]
) -> int:
    ordered = sorted(records, key=lambda r: (r[0], r[1], r[2]))
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<I", VERSION))
        fh.write(struct.pack("<I", dim))
        fh.write(struct.pack("<Q", len(ordered)))
        for pictogram_id, lang, def_index, values in ordered:
            vec = np.asarray(values, dtype=np.float32)
            if vec.shape != (dim,):
                raise ValueError(f"vector for {pictogram_id} has shape {vec.shape}, want ({dim},)")
            lang_bytes = lang.encode("utf-8")
            if len(lang_bytes) > 255:
                raise ValueError("language code too long")
            fh.write(struct.pack("<I", pictogram_id))
            fh.write(struct.pack("B", len(lang_bytes)))
            fh.write(lang_bytes)
            fh.write(struct.pack("<H", def_index))
            fh.write(vec.tobytes())
    return len(ordered)


def read_embedding_store(path: Path | str) -> EmbeddingStore:
    data = Path(path).read_bytes()
    if data[:4] != MAGIC:
        raise MalformedRecord(0, "bad magic bytes")
    version, dim = struct.unpack_from("<II", data, 4)
    if version != VERSION:
        raise MalformedRecord(0, f"unsupported version {version}")
    (count,) = struct.unpack_from("<Q", data, 12)
    offset = 20
    vectors: dict[RecordKey, np.ndarray] = {}
    for i in range(count):
        try:
            (pictogram_id,) = struct.unpack_from("<I", data, offset)
            offset += 4
            lang_len = data[offset]
            offset += 1
            lang = data[offset : offset + lang_len].decode("utf-8")
            offset += lang_len
            (def_index,) = struct.unpack_from("<H", data, offset)
            offset += 2
            vec = np.frombuffer(data, dtype="<f4", count=dim, offset=offset).copy()
            offset += 4 * dim
        except (struct.error, IndexError, UnicodeDecodeError, ValueError) as exc:
            raise MalformedRecord(i, f"truncated or corrupt record: {exc}") from exc
        if len(vec) != dim:
            raise MalformedRecord(i, "truncated vector")
        vectors[(pictogram_id, lang, def_index)] = vec
    if offset != len(data):
        raise MalformedRecord(count, "trailing bytes after last record")
    return EmbeddingStore(dim, vectors)


def precompute_definition_embeddings(store, embedder, out_path: Path | str) -> EmbeddingStore:
    """Embed every non-empty definition and persist; returns the loaded store."""
    records = []
    for pictogram in store.all_pictograms():
        for definition in pictogram.definitions:
            if definition.text.strip():
                records.append(
                    (
                        pictogram.id,
                        definition.lang,
                        definition.def_index,
                        embedder.embed(definition.text),
                    )
                )
    write_embedding_store(out_path, embedder.dim, records)
    return read_embedding_store(out_path)
