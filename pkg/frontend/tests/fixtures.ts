// Typed fixture payloads shaped exactly like the service's JSON.

import type {
  KeywordPayload,
  MatchPayload,
  ScaffoldedSentence,
} from "../src/types.js";

function keyword(
  sentenceIndex: number,
  text: string,
  rank: number,
  start: number,
): KeywordPayload {
  return {
    text,
    lemma_text: text.toLowerCase(),
    score: 0.05 * rank,
    rank,
    span: [start, start + text.length],
    sentence_index: sentenceIndex,
  };
}

function match(kw: KeywordPayload, pictogramId: number): MatchPayload {
  return {
    keyword: kw,
    pictogram_id: pictogramId,
    def_index: 0,
    similarity: 0.42,
    method: "embedding",
  };
}

function sentenceOf(
  index: number,
  text: string,
  specs: Array<{ word: string; rank: number; pictogram?: number }>,
): ScaffoldedSentence {
  const keywords = specs.map((spec) =>
    keyword(index, spec.word, spec.rank, text.indexOf(spec.word)),
  );
  const matches = specs
    .filter((spec) => spec.pictogram !== undefined)
    .map((spec, i) =>
      match(keywords[specs.indexOf(spec)] as KeywordPayload, spec.pictogram as number),
    )
    .sort((a, b) => a.keyword.span[0] - b.keyword.span[0]);
  return {
    sentence: { index, text, tokens: [] },
    keywords,
    matches,
  };
}

/** Five sentences; several have rank order differing from text order. */
export const FIVE_SENTENCE_DOCUMENT: ScaffoldedSentence[] = [
  sentenceOf(0, "The prince was near a rose.", [
    { word: "rose", rank: 1, pictogram: 108 },
    { word: "prince", rank: 2, pictogram: 101 },
  ]),
  sentenceOf(1, "A golden fox waited near the old well.", [
    { word: "golden fox", rank: 1, pictogram: 110 },
    { word: "well", rank: 2, pictogram: 114 },
  ]),
  sentenceOf(2, "Stars laughed softly in the night.", [
    { word: "night", rank: 1, pictogram: 124 },
    { word: "Stars", rank: 2, pictogram: 105 },
    { word: "laughed", rank: 3 },
  ]),
  sentenceOf(3, "It was the glorbix.", [{ word: "glorbix", rank: 1 }]),
  sentenceOf(4, "The pilot drew a small sheep.", [
    { word: "sheep", rank: 1, pictogram: 111 },
    { word: "pilot", rank: 2, pictogram: 121 },
    { word: "drew", rank: 3 },
  ]),
];

/** First two sentences, used by the audit-flow fixtures. */
export const TWO_SENTENCE_DOCUMENT: ScaffoldedSentence[] =
  FIVE_SENTENCE_DOCUMENT.slice(0, 2);
