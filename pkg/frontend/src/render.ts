// Pure view rendering: payloads in, HTML strings out. No DOM access here,
// so every view is directly assertable in tests. The pictogram strip
// preserves the API's match order exactly; layers that are toggled off
// render empty containers so the layout stays stable.

import type { MatchPayload, ScaffoldedSentence } from "./types.js";

export const IMAGE_PLACEHOLDER =
  "data:image/svg+xml," +
  encodeURIComponent(
    '<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 64 64">' +
      '<rect width="64" height="64" fill="#eee"/>' +
      '<text x="32" y="38" font-size="10" text-anchor="middle" fill="#888">no image</text>' +
      "</svg>",
  );

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

/** Merge overlapping or touching [start, end) spans, ascending. */
export function mergeSpans(spans: Array<[number, number]>): Array<[number, number]> {
  const sorted = [...spans].sort((a, b) => a[0] - b[0] || a[1] - b[1]);
  const merged: Array<[number, number]> = [];
  for (const [start, end] of sorted) {
    const last = merged[merged.length - 1];
    if (last && start <= last[1]) {
      last[1] = Math.max(last[1], end);
    } else {
      merged.push([start, end]);
    }
  }
  return merged;
}

/** Sentence text with keyword spans wrapped in <mark>. */
export function emphasizedTextHtml(item: ScaffoldedSentence): string {
  const text = item.sentence.text;
  const spans = mergeSpans(item.keywords.map((k) => k.span));
  let html = "";
  let cursor = 0;
  for (const [start, end] of spans) {
    html += escapeHtml(text.slice(cursor, start));
    html += `<mark class="kw">${escapeHtml(text.slice(start, end))}</mark>`;
    cursor = end;
  }
  html += escapeHtml(text.slice(cursor));
  return html;
}

/** Ordered pictogram strip; one figure per match, in API match order. */
export function pictogramStripHtml(
  matches: MatchPayload[],
  imageUrl: (id: number) => string,
): string {
  const figures = matches.map((match) => {
    const label = escapeHtml(match.keyword.text);
    const src = imageUrl(match.pictogram_id);
    return (
      `<figure class="picto" data-pictogram-id="${match.pictogram_id}">` +
      `<img src="${escapeHtml(src)}" alt="${label}" ` +
      `onerror="this.onerror=null;this.src='${IMAGE_PLACEHOLDER}'">` +
      `<figcaption>${label}</figcaption></figure>`
    );
  });
  return `<div class="picto-strip">${figures.join("")}</div>`;
}

export interface SentenceViewOptions {
  language: string;
  index: number;
  total: number;
}

/** The full sentence view: emphasized text, pictogram strip, nav state. */
export function sentenceViewHtml(
  item: ScaffoldedSentence,
  options: SentenceViewOptions,
  imageUrl: (id: number) => string,
): string {
  const dir = options.language === "ar" ? "rtl" : "ltr";
  const nav =
    `<nav class="nav-state" data-index="${options.index}" data-total="${options.total}">` +
    `${options.index + 1} / ${options.total}</nav>`;
  return (
    `<section class="sentence-view" dir="${dir}">` +
    `<p class="sentence-text">${emphasizedTextHtml(item)}</p>` +
    pictogramStripHtml(item.matches, imageUrl) +
    nav +
    "</section>"
  );
}

/** Pictogram ids in on-screen order, for order assertions. */
export function stripOrder(html: string): number[] {
  const ids: number[] = [];
  const pattern = /data-pictogram-id="(\d+)"/g;
  let found: RegExpExecArray | null;
  while ((found = pattern.exec(html)) !== null) {
    ids.push(Number(found[1]));
  }
  return ids;
}
