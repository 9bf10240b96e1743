"""Unsupervised statistical keyword extraction (YAKE-style).

Term statistics are computed once over the whole document; candidate
generation, ranking and top-k retention happen per sentence. Lower
scores mean more important terms. Term features follow the published
YAKE formulation:

  casing      = max(tf_capitalized, tf_acronym) / (1 + ln(tf))
  position    = ln(ln(3 + median(sentence indices containing the term)))
  freq_norm   = tf / (mean_tf + std_tf)          over non-stopword terms
  relatedness = 1 + (dl + dr) * tf / max_tf      dl/dr = distinct/total
                co-occurring neighbors within the window, per side
  dispersion  = |sentences containing the term| / |sentences|

  term score  S(t)  = relatedness * position
                      / (casing + freq_norm/relatedness + dispersion/relatedness)
  phrase score S(kw) = prod(S(t)) / (tf_kw * (1 + sum(S(t))))   over content terms
"""

from __future__ import annotations

import math
import statistics
from collections import Counter, defaultdict
from dataclasses import dataclass

from .document import Sentence, Token, is_numeric_surface
from .errors import MissingTerm, NoContent

DEFAULT_MAX_NGRAM = 3
DEFAULT_WINDOW = 1
DEDUP_THRESHOLD = 0.9
DEFAULT_TOP_K = 3


@dataclass(frozen=True)
class TermFeatures:
    tf: int
    casing: float
    position: float
    frequency_norm: float
    relatedness: float
    dispersion: float
    score: float


@dataclass(frozen=True)
class Keyword:
    text: str
    lemma_text: str
    score: float
    rank: int
    span: tuple[int, int]
    sentence_index: int

    @property
    def is_numeric(self) -> bool:
        return is_numeric_surface(self.text)

    def to_dict(self) -> dict:
        return {
            "text": self.text,
            "lemma_text": self.lemma_text,
            "score": self.score,
            "rank": self.rank,
            "span": [self.span[0], self.span[1]],
            "sentence_index": self.sentence_index,
        }


@dataclass(frozen=True)
class Candidate:
    tokens: tuple[Token, ...]
    sentence_index: int

    @property
    def text(self) -> str:
        return " ".join(t.surface for t in self.tokens)

    @property
    def lemma_text(self) -> str:
        return " ".join(t.lemma for t in self.tokens)

    @property
    def span(self) -> tuple[int, int]:
        return (self.tokens[0].start, self.tokens[-1].end)


def _word_blocks(tokens: list[Token]) -> list[list[Token]]:
    """Maximal runs of word tokens; punctuation separates blocks."""
    blocks: list[list[Token]] = []
    current: list[Token] = []
    for tok in tokens:
        if tok.is_punctuation:
            if current:
                blocks.append(current)
                current = []
        else:
            current.append(tok)
    if current:
        blocks.append(current)
    return blocks


def _in_graph(token: Token) -> bool:
    # Digit-bearing tokens stay out of the co-occurrence graph,
    # mirroring YAKE's discarded tags; stopwords stay in.
    return not token.is_numeric and not any(ch.isdigit() for ch in token.surface)


def _counts_capitalized(token: Token, position_in_sentence: int) -> bool:
    surface = token.surface
    uppers = sum(1 for ch in surface if ch.isupper())
    return (
        len(surface) > 1
        and uppers == 1
        and surface[0].isupper()
        and position_in_sentence > 0
    )


def _counts_acronym(token: Token) -> bool:
    surface = token.surface
    return bool(surface) and all(ch.isupper() for ch in surface)


class DocumentTermStats:
    """Single pass over a tokenized document collecting every YAKE input."""

    def __init__(
        self,
        sentences: list[Sentence],
        window: int = DEFAULT_WINDOW,
        max_ngram: int = DEFAULT_MAX_NGRAM,
    ):
        self.window = window
        self.max_ngram = max_ngram
        self.n_sentences = len(sentences)

        tf: Counter = Counter()
        tf_capitalized: Counter = Counter()
        tf_acronym: Counter = Counter()
        sentence_ids: dict[str, set[int]] = defaultdict(set)
        stopword_terms: set[str] = set()
        left_edges: dict[str, Counter] = defaultdict(Counter)
        right_edges: dict[str, Counter] = defaultdict(Counter)
        ngram_tf: Counter = Counter()

        for sentence in sentences:
            positions = {id(tok): idx for idx, tok in enumerate(sentence.tokens)}
            for block in _word_blocks(sentence.tokens):
                for i, tok in enumerate(block):
                    term = tok.lemma
                    tf[term] += 1
                    sentence_ids[term].add(sentence.index)
                    if tok.is_stopword:
                        stopword_terms.add(term)
                    if _counts_capitalized(tok, positions[id(tok)]):
                        tf_capitalized[term] += 1
                    if _counts_acronym(tok):
                        tf_acronym[term] += 1
                    if _in_graph(tok):
                        for k in range(max(0, i - window), i):
                            neighbor = block[k]
                            if _in_graph(neighbor):
                                left_edges[term][neighbor.lemma] += 1
                                right_edges[neighbor.lemma][term] += 1
                for i in range(len(block)):
                    for n in range(1, max_ngram + 1):
                        if i + n > len(block):
                            break
                        ngram_tf[tuple(t.lemma for t in block[i : i + n])] += 1

        self._tf = tf
        self._stopword_terms = stopword_terms
        self._ngram_tf = ngram_tf

        if not tf:
            raise NoContent("document has no word tokens")
        content_tfs = [count for term, count in tf.items() if term not in stopword_terms]
        if not content_tfs:
            raise NoContent("every token is a stopword")
        mean_tf = sum(content_tfs) / len(content_tfs)
        std_tf = math.sqrt(
            sum((c - mean_tf) ** 2 for c in content_tfs) / len(content_tfs)
        )
        max_tf = max(tf.values())

        self.features: dict[str, TermFeatures] = {}
        for term, count in tf.items():
            if term in stopword_terms:
                continue
            casing = max(tf_capitalized[term], tf_acronym[term]) / (1.0 + math.log(count))
            position = math.log(math.log(3.0 + statistics.median(sorted(sentence_ids[term]))))
            freq_norm = count / (mean_tf + std_tf)
            dl = (
                len(left_edges[term]) / sum(left_edges[term].values())
                if left_edges[term]
                else 0.0
            )
            dr = (
                len(right_edges[term]) / sum(right_edges[term].values())
                if right_edges[term]
                else 0.0
            )
            relatedness = 1.0 + (dl + dr) * count / max_tf
            dispersion = len(sentence_ids[term]) / self.n_sentences
            score = (relatedness * position) / (
                casing + freq_norm / relatedness + dispersion / relatedness
            )
            self.features[term] = TermFeatures(
                tf=count,
                casing=casing,
                position=position,
                frequency_norm=freq_norm,
                relatedness=relatedness,
                dispersion=dispersion,
                score=score,
            )

    def phrase_tf(self, lemmas: tuple[str, ...]) -> int:
        return self._ngram_tf.get(lemmas, 0)

    def is_stopword_term(self, lemma: str) -> bool:
        return lemma in self._stopword_terms


def score_terms(sentences: list[Sentence], window: int = DEFAULT_WINDOW) -> dict[str, TermFeatures]:
    return DocumentTermStats(sentences, window=window).features


def generate_candidates(
    tokens: list[Token], max_ngram: int = DEFAULT_MAX_NGRAM, sentence_index: int = 0
) -> list[Candidate]:
    """Contiguous n-grams that neither start nor end with a stopword and
    contain no punctuation or numeric-only interior token."""
    candidates = []
    for block in _word_blocks(tokens):
        for i in range(len(block)):
            for n in range(1, max_ngram + 1):
                if i + n > len(block):
                    break
                gram = block[i : i + n]
                if gram[0].is_stopword or gram[-1].is_stopword:
                    continue
                if any(t.is_numeric for t in gram[1:-1]):
                    continue
                candidates.append(Candidate(tuple(gram), sentence_index))
    return candidates


def score_candidate(candidate: Candidate, stats: DocumentTermStats) -> float:
    content = [t.lemma for t in candidate.tokens if not t.is_stopword]
    prod = 1.0
    total = 0.0
    for lemma in content:
        features = stats.features.get(lemma)
        if features is None:
            raise MissingTerm(lemma)
        prod *= features.score
        total += features.score
    tf_kw = max(1, stats.phrase_tf(tuple(t.lemma for t in candidate.tokens)))
    return prod / (tf_kw * (1.0 + total))


def levenshtein(a: str, b: str) -> int:
    if len(a) < len(b):
        a, b = b, a
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        current = [i]
        for j, cb in enumerate(b, start=1):
            current.append(
                min(previous[j] + 1, current[j - 1] + 1, previous[j - 1] + (ca != cb))
            )
        previous = current
    return previous[-1]


def normalized_similarity(a: str, b: str) -> float:
    if not a and not b:
        return 1.0
    return 1.0 - levenshtein(a, b) / max(len(a), len(b))


def extract_keywords(
    sentence: Sentence,
    stats: DocumentTermStats,
    k: int = DEFAULT_TOP_K,
) -> list[Keyword]:
    """Top-k candidates of one sentence, scored with document statistics."""
    candidates = generate_candidates(sentence.tokens, stats.max_ngram, sentence.index)
    scored = [(score_candidate(c, stats), c) for c in candidates]
    scored.sort(key=lambda sc: (sc[0], sc[1].span[0], sc[1].span[1] - sc[1].span[0]))

    kept: list[tuple[float, Candidate]] = []
    for score, candidate in scored:
        folded = candidate.text.casefold()
        if any(
            normalized_similarity(folded, other.text.casefold()) >= DEDUP_THRESHOLD
            for _, other in kept
        ):
            continue
        kept.append((score, candidate))
        if len(kept) == k:
            break

    return [
        Keyword(
            text=c.text,
            lemma_text=c.lemma_text,
            score=score,
            rank=rank,
            span=c.span,
            sentence_index=c.sentence_index,
        )
        for rank, (score, c) in enumerate(kept, start=1)
    ]
