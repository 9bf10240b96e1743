import { describe, expect, it } from "vitest";

import {
  emphasizedTextHtml,
  mergeSpans,
  pictogramStripHtml,
  sentenceViewHtml,
  stripOrder,
} from "../src/render.js";
import { FIVE_SENTENCE_DOCUMENT } from "./fixtures.js";

const imageUrl = (id: number) => `/api/v1/pictograms/${id}/image`;

describe("mergeSpans", () => {
  it("merges overlapping and touching spans", () => {
    expect(
      mergeSpans([
        [10, 16],
        [4, 11],
        [20, 24],
      ]),
    ).toEqual([
      [4, 16],
      [20, 24],
    ]);
  });

  it("keeps disjoint spans sorted", () => {
    expect(
      mergeSpans([
        [8, 9],
        [0, 3],
      ]),
    ).toEqual([
      [0, 3],
      [8, 9],
    ]);
  });
});

describe("emphasizedTextHtml", () => {
  it("wraps keyword spans in mark tags", () => {
    const html = emphasizedTextHtml(FIVE_SENTENCE_DOCUMENT[0]!);
    expect(html).toBe(
      'The <mark class="kw">prince</mark> was near a <mark class="kw">rose</mark>.',
    );
  });

  it("escapes html in sentence text", () => {
    const item = {
      sentence: { index: 0, text: "a <b> & c", tokens: [] },
      keywords: [],
      matches: [],
    };
    expect(emphasizedTextHtml(item)).toBe("a &lt;b&gt; &amp; c");
  });
});

describe("pictogramStripHtml", () => {
  it("renders one figure per match in api order", () => {
    const item = FIVE_SENTENCE_DOCUMENT[2]!;
    const html = pictogramStripHtml(item.matches, imageUrl);
    expect(stripOrder(html)).toEqual(item.matches.map((m) => m.pictogram_id));
    expect(html).toContain("<figcaption>Stars</figcaption>");
  });

  it("renders an empty strip container when there are no matches", () => {
    expect(pictogramStripHtml([], imageUrl)).toBe('<div class="picto-strip"></div>');
  });
});

describe("sentenceViewHtml", () => {
  it("includes navigation state and keeps ltr for english", () => {
    const html = sentenceViewHtml(
      FIVE_SENTENCE_DOCUMENT[0]!,
      { language: "en", index: 0, total: 5 },
      imageUrl,
    );
    expect(html).toContain('dir="ltr"');
    expect(html).toContain('data-index="0"');
    expect(html).toContain('data-total="5"');
    expect(html).toContain("1 / 5");
  });

  it("activates rtl for arabic sessions", () => {
    const html = sentenceViewHtml(
      FIVE_SENTENCE_DOCUMENT[0]!,
      { language: "ar", index: 0, total: 5 },
      imageUrl,
    );
    expect(html).toContain('dir="rtl"');
  });

  it("never reorders pictograms relative to the api response", () => {
    for (const item of FIVE_SENTENCE_DOCUMENT) {
      const html = sentenceViewHtml(
        item,
        { language: "en", index: item.sentence.index, total: 5 },
        imageUrl,
      );
      expect(stripOrder(html)).toEqual(item.matches.map((m) => m.pictogram_id));
    }
  });
});
