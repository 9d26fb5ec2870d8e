import { describe, expect, it } from "vitest";

import {
  escapeHtml,
  mergeSpans,
  renderHighlighted,
  type HighlightSpan,
} from "../src/highlight.js";

describe("escapeHtml", () => {
  it("escapes markup-significant characters", () => {
    expect(escapeHtml(`<script>"a" & 'b'</script>`)).toBe(
      "&lt;script&gt;&quot;a&quot; &amp; &#39;b&#39;&lt;/script&gt;",
    );
  });

  it("passes Arabic text through untouched", () => {
    expect(escapeHtml("من صمم برج ايفل؟")).toBe("من صمم برج ايفل؟");
  });
});

describe("mergeSpans", () => {
  it("orders mixed spans by position", () => {
    const merged = mergeSpans(
      30,
      [[10, 15]],
      [
        { keyword: "a", start: 20, end: 24 },
        { keyword: "b", start: 0, end: 4 },
      ],
    );
    expect(merged.map((s) => [s.start, s.kind])).toEqual([
      [0, "keyword"],
      [10, "gold"],
      [20, "keyword"],
    ]);
  });

  it("drops keyword spans overlapping a gold span", () => {
    const merged = mergeSpans(
      20,
      [[5, 12]],
      [
        { keyword: "x", start: 10, end: 14 },
        { keyword: "y", start: 12, end: 16 },
      ],
    );
    expect(merged).toEqual<HighlightSpan[]>([
      { start: 5, end: 12, kind: "gold" },
      { start: 12, end: 16, kind: "keyword" },
    ]);
  });

  it("keeps the first of two clashing keyword spans", () => {
    const merged = mergeSpans(
      20,
      [],
      [
        { keyword: "x", start: 2, end: 8 },
        { keyword: "y", start: 6, end: 10 },
      ],
    );
    expect(merged).toEqual([{ start: 2, end: 8, kind: "keyword" }]);
  });

  it("drops degenerate and out-of-range spans", () => {
    const merged = mergeSpans(
      10,
      [
        [4, 4],
        [-1, 3],
        [8, 12],
      ],
      [{ keyword: "k", start: 0, end: 2 }],
    );
    expect(merged).toEqual([{ start: 0, end: 2, kind: "keyword" }]);
  });
});

describe("renderHighlighted", () => {
  it("wraps spans in kind-specific marks", () => {
    const text = "صمم غوستاف ايفل البرج";
    const spans: HighlightSpan[] = [
      { start: 0, end: 3, kind: "keyword" },
      { start: 4, end: 15, kind: "gold" },
    ];
    expect(renderHighlighted(text, spans)).toBe(
      '<mark class="hl-keyword">صمم</mark> ' +
        '<mark class="hl-gold">غوستاف ايفل</mark> البرج',
    );
  });

  it("escapes text inside and outside marks", () => {
    const text = "a <b> c";
    const spans: HighlightSpan[] = [{ start: 2, end: 5, kind: "gold" }];
    expect(renderHighlighted(text, spans)).toBe(
      'a <mark class="hl-gold">&lt;b&gt;</mark> c',
    );
  });

  it("renders plain escaped text with no spans", () => {
    expect(renderHighlighted("x & y", [])).toBe("x &amp; y");
  });

  it("handles spans at the extremes of the text", () => {
    const out = renderHighlighted("abcdef", [
      { start: 0, end: 2, kind: "gold" },
      { start: 4, end: 6, kind: "keyword" },
    ]);
    expect(out).toBe(
      '<mark class="hl-gold">ab</mark>cd<mark class="hl-keyword">ef</mark>',
    );
  });
});
