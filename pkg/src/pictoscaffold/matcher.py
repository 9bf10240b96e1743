"""Keyword disambiguation against candidate pictogram definitions.

The local context around the keyword is embedded and compared to every
(candidate, definition) pair by cosine similarity; numeric keywords skip
embeddings entirely and take an exact-lookup shortcut.
"""

from __future__ import annotations

from dataclasses import dataclass

from .document import Sentence
from .embedding import cosine_similarity
from .keywords import Keyword
from .store import PictoStore, Pictogram

NUMERIC_SIMILARITY = 1.0  # sentinel for method="numeric"


@dataclass(frozen=True)
class MatcherConfig:
    window_radius: int = 2
    similarity_floor: float = -1.0
    embedder_id: str = "hashed-ngram-64"

    def __post_init__(self):
        if self.window_radius < 0:
            raise ValueError("window_radius must be >= 0")


@dataclass(frozen=True)
class PictogramMatch:
    keyword: Keyword
    pictogram_id: int
    def_index: int
    similarity: float
    method: str  # "embedding" | "numeric"

    def to_dict(self) -> dict:
        return {
            "keyword": self.keyword.to_dict(),
            "pictogram_id": self.pictogram_id,
            "def_index": self.def_index,
            "similarity": self.similarity,
            "method": self.method,
        }


def context_window(sentence: Sentence, span: tuple[int, int], radius: int) -> str:
    """Keyword tokens plus up to `radius` word tokens per side, same sentence only."""
    inside = [
        i
        for i, tok in enumerate(sentence.tokens)
        if span[0] <= tok.start and tok.end <= span[1]
    ]
    if not inside:
        raise ValueError(f"span {span} selects no tokens in sentence {sentence.index}")
    first, last = inside[0], inside[-1]

    left = []
    for i in range(first - 1, -1, -1):
        if len(left) == radius:
            break
        if sentence.tokens[i].is_word:
            left.append(sentence.tokens[i])
    left.reverse()
    right = []
    for i in range(last + 1, len(sentence.tokens)):
        if len(right) == radius:
            break
        if sentence.tokens[i].is_word:
            right.append(sentence.tokens[i])

    window = left + sentence.tokens[first : last + 1] + right
    return " ".join(t.surface for t in window)


class SemanticMatcher:
    def __init__(
        self,
        embedder,
        config: MatcherConfig = MatcherConfig(),
        embedding_store=None,
        picto_store: PictoStore | None = None,
    ):
        self.embedder = embedder
        self.config = config
        self.embedding_store = embedding_store
        self.picto_store = picto_store

    def _definition_vector(self, pictogram_id: int, lang: str, definition):
        if self.embedding_store is not None:
            vec = self.embedding_store.get(pictogram_id, lang, definition.def_index)
            if vec is not None:
                return vec
        return self.embedder.embed(definition.text)

    def disambiguate(
        self,
        keyword: Keyword,
        sentence: Sentence,
        candidates: list[Pictogram],
        lang: str,
    ) -> PictogramMatch | None:
        if not candidates:
            return None
        if keyword.is_numeric and self.picto_store is not None:
            return self.numeric_match(keyword, lang)

        context = context_window(sentence, keyword.span, self.config.window_radius)
        context_vec = self.embedder.embed(context)

        best: tuple[float, int, int] | None = None  # (similarity, id, def_index)
        for pictogram in sorted(candidates, key=lambda p: p.id):
            definitions = pictogram.definitions_for(lang)
            scored_any = False
            for definition in sorted(definitions, key=lambda d: d.def_index):
                if definition.text.strip():
                    vec = self._definition_vector(pictogram.id, lang, definition)
                    similarity = cosine_similarity(context_vec, vec)
                else:
                    similarity = -1.0
                scored_any = True
                entry = (similarity, pictogram.id, definition.def_index)
                if best is None or self._beats(entry, best):
                    best = entry
            if not scored_any:
                entry = (-1.0, pictogram.id, 0)
                if best is None or self._beats(entry, best):
                    best = entry

        similarity, pictogram_id, def_index = best
        if similarity < self.config.similarity_floor:
            return None
        return PictogramMatch(
            keyword=keyword,
            pictogram_id=pictogram_id,
            def_index=def_index,
            similarity=similarity,
            method="embedding",
        )

    @staticmethod
    def _beats(entry: tuple[float, int, int], best: tuple[float, int, int]) -> bool:
        if entry[0] != best[0]:
            return entry[0] > best[0]
        return (entry[1], entry[2]) < (best[1], best[2])

    def numeric_match(self, keyword: Keyword, lang: str) -> PictogramMatch | None:
        """Exact lookup of the digit string; no embeddings involved."""
        hits = self.picto_store.lookup_candidates(keyword.text, lang)
        if not hits:
            return None
        chosen = min(hits, key=lambda p: p.id)
        return PictogramMatch(
            keyword=keyword,
            pictogram_id=chosen.id,
            def_index=0,
            similarity=NUMERIC_SIMILARITY,
            method="numeric",
        )
