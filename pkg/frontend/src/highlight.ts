import type { KeywordSpan } from "./types.js";

/** Character spans to wrap in <mark> elements. The offsets come from
 * the API and index the raw clean text; the client never recomputes
 * them (matching is normalization-aware and lives server-side). */
export interface HighlightSpan {
  start: number;
  end: number;
  kind: "gold" | "keyword";
}

const ESCAPES: Record<string, string> = {
  "&": "&amp;",
  "<": "&lt;",
  ">": "&gt;",
  '"': "&quot;",
  "'": "&#39;",
};

export function escapeHtml(text: string): string {
  return text.replace(/[&<>"']/g, (ch) => ESCAPES[ch] ?? ch);
}

/** Combine gold and keyword spans into one non-overlapping, ordered
 * list. Gold wins any overlap (the two mark styles cannot nest), and
 * later spans of equal kind lose to earlier ones. Degenerate or
 * out-of-range spans are dropped. */
export function mergeSpans(
  textLength: number,
  goldSpans: Array<[number, number]>,
  keywordSpans: KeywordSpan[],
): HighlightSpan[] {
  const candidates: HighlightSpan[] = [];
  for (const [start, end] of goldSpans) {
    candidates.push({ start, end, kind: "gold" });
  }
  for (const span of keywordSpans) {
    candidates.push({ start: span.start, end: span.end, kind: "keyword" });
  }
  const valid = candidates.filter(
    (s) => s.start >= 0 && s.start < s.end && s.end <= textLength,
  );
  // Gold first, then position, so the overlap scan keeps gold marks.
  valid.sort((a, b) =>
    a.kind === b.kind ? a.start - b.start : a.kind === "gold" ? -1 : 1,
  );
  const kept: HighlightSpan[] = [];
  for (const span of valid) {
    const clashes = kept.some((k) => span.start < k.end && k.start < span.end);
    if (!clashes) kept.push(span);
  }
  kept.sort((a, b) => a.start - b.start);
  return kept;
}

/** Render text with the given spans wrapped in
 * <mark class="hl-gold"> / <mark class="hl-keyword">. All text content
 * is HTML-escaped; spans must already be non-overlapping and ordered
 * (use mergeSpans). */
export function renderHighlighted(
  text: string,
  spans: HighlightSpan[],
): string {
  const parts: string[] = [];
  let cursor = 0;
  for (const span of spans) {
    parts.push(escapeHtml(text.slice(cursor, span.start)));
    parts.push(
      `<mark class="hl-${span.kind}">` +
        escapeHtml(text.slice(span.start, span.end)) +
        "</mark>",
    );
    cursor = span.end;
  }
  parts.push(escapeHtml(text.slice(cursor)));
  return parts.join("");
}
