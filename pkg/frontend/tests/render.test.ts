import { describe, expect, it } from "vitest";

import {
  renderConflictNotice,
  renderErrorChip,
  renderExtraction,
  renderQuestionQueue,
  renderStatsPanel,
  renderUrlTable,
} from "../src/render.js";
import type {
  CorpusStats,
  Extraction,
  QuestionSummary,
  SearchResult,
} from "../src/types.js";

function question(overrides: Partial<QuestionSummary> = {}): QuestionSummary {
  return {
    id: "q1",
    text: "من صمم برج ايفل؟",
    domain: "HistoryIslam",
    source: "quiz",
    gold_answer: "غوستاف ايفل",
    status: "pending",
    ...overrides,
  };
}

function result(overrides: Partial<SearchResult> = {}): SearchResult {
  return {
    url: "http://q1-design.fixture.test/eiffel",
    rank: 1,
    parts: {
      protocol: "http",
      host: "q1-design.fixture.test",
      path: "/eiffel",
      query: null,
    },
    ...overrides,
  };
}

function extraction(overrides: Partial<Extraction> = {}): Extraction {
  return {
    url: "http://q1-design.fixture.test/eiffel",
    clean_text: "صمم غوستاف ايفل البرج",
    arabic_char_ratio: 1,
    removed_foreign_tokens: 0,
    contains_gold: true,
    coverage: 2,
    passage: null,
    gold_spans: [[4, 15]],
    keyword_spans: [{ keyword: "صمم", start: 0, end: 3 }],
    ...overrides,
  };
}

describe("renderQuestionQueue", () => {
  const questions = [
    question(),
    question({ id: "q2", domain: "Sport", status: "built" }),
  ];

  it("renders one row per question with status chips", () => {
    const html = renderQuestionQueue(questions, {}, { q1: 4 });
    expect(html).toContain('<tr data-question-id="q1">');
    expect(html).toContain('<tr data-question-id="q2">');
    expect(html).toContain('<span class="chip chip-pending">pending</span>');
    expect(html).toContain('<span class="chip chip-built">built</span>');
    expect(html).toContain('<td class="qtext" dir="rtl">من صمم برج ايفل؟</td>');
    expect(html).toContain('<button class="select-question" data-question-id="q1">');
  });

  it("shows the seen URL count only when known", () => {
    const html = renderQuestionQueue(questions, {}, { q1: 4 });
    expect(html).toContain('<td class="seen">4</td>');
    expect(html).toContain('<td class="seen">–</td>');
  });

  it("filters by domain", () => {
    const html = renderQuestionQueue(questions, { domain: "Sport" }, {});
    expect(html).not.toContain('data-question-id="q1"');
    expect(html).toContain('data-question-id="q2"');
  });

  it("filters by status", () => {
    const html = renderQuestionQueue(questions, { status: "pending" }, {});
    expect(html).toContain('data-question-id="q1"');
    expect(html).not.toContain('data-question-id="q2"');
  });

  it("shows an empty state when nothing matches", () => {
    const html = renderQuestionQueue(questions, { domain: "Geography" }, {});
    expect(html).toContain('<p class="empty-state">');
    expect(html).not.toContain("<table");
  });
});

describe("renderUrlTable", () => {
  it("renders rank, host, and protocol columns", () => {
    const html = renderUrlTable([
      result(),
      result({
        url: "https://other.test/page",
        rank: 2,
        parts: { protocol: "https", host: "other.test", path: "/page", query: "x=1" },
      }),
    ]);
    expect(html).toContain('<td class="rank">1</td>');
    expect(html).toContain('<td class="host">q1-design.fixture.test</td>');
    expect(html).toContain('<td class="protocol">https</td>');
    expect(html).toContain(
      '<button class="extract" data-url="http://q1-design.fixture.test/eiffel">',
    );
    expect(html).toContain(
      '<td class="row-status" data-url-status="https://other.test/page">',
    );
  });

  it("shows an empty state for zero results", () => {
    const html = renderUrlTable([]);
    expect(html).toContain('<p class="empty-state">');
  });
});

describe("renderErrorChip", () => {
  it("wraps the status in an error chip, escaped", () => {
    expect(renderErrorChip("http_error(404)")).toBe(
      '<span class="chip chip-error">http_error(404)</span>',
    );
    expect(renderErrorChip("<bad>")).toContain("&lt;bad&gt;");
  });
});

describe("renderConflictNotice", () => {
  it("renders a conflict notice paragraph", () => {
    const html = renderConflictNotice("question q1 already has a corpus entry");
    expect(html).toContain('<p class="notice notice-conflict">');
    expect(html).toContain("question q1 already has a corpus entry");
  });
});

describe("renderExtraction", () => {
  it("marks the gold answer inside the RTL clean text", () => {
    const html = renderExtraction(extraction());
    expect(html).toContain('<div class="clean-text" dir="rtl" lang="ar">');
    expect(html).toContain('<mark class="hl-gold">غوستاف ايفل</mark>');
    expect(html).toContain('<mark class="hl-keyword">صمم</mark>');
  });

  it("badges the gold verdict in both directions", () => {
    expect(renderExtraction(extraction())).toContain(
      '<span class="chip chip-gold">',
    );
    expect(renderExtraction(extraction({ contains_gold: false, gold_spans: [] }))).toContain(
      '<span class="chip chip-plain">',
    );
    const unlabeled = renderExtraction(
      extraction({ contains_gold: null, gold_spans: [] }),
    );
    expect(unlabeled).not.toContain("chip-gold");
    expect(unlabeled).not.toContain("chip-plain");
  });

  it("shows a notice when no keyword matched", () => {
    const html = renderExtraction(
      extraction({ coverage: 0, keyword_spans: [] }),
    );
    expect(html).toContain(
      '<p class="notice notice-coverage">لا تطابق للكلمات المفتاحية / no keyword matches.</p>',
    );
    expect(html).not.toContain('<span class="coverage">');
  });

  it("shows coverage and a two-decimal Arabic ratio otherwise", () => {
    const html = renderExtraction(extraction({ arabic_char_ratio: 0.875 }));
    expect(html).toContain('<span class="coverage">');
    expect(html).toContain("0.88");
  });

  it("quotes the passage when the server sent one", () => {
    const withPassage = renderExtraction(
      extraction({
        passage: { text: "صمم غوستاف ايفل البرج", sentence_span: [0, 0], coverage: 2 },
      }),
    );
    expect(withPassage).toContain('<blockquote class="passage" dir="rtl">');
    expect(renderExtraction(extraction())).not.toContain("<blockquote");
  });

  it("disables decision buttons while a decision is in flight", () => {
    const idle = renderExtraction(extraction());
    expect(idle).toContain('<button class="accept"');
    expect(idle).not.toContain("disabled");
    const busy = renderExtraction(extraction(), { busy: true });
    expect(busy).toMatch(/<button class="accept"[^>]* disabled>/);
    expect(busy).toMatch(/<button class="reject"[^>]* disabled>/);
  });
});

describe("renderStatsPanel", () => {
  const stats: CorpusStats = {
    n_questions: 5,
    total_urls: 17,
    urls_per_question: [3, 4],
    n_texts: 1,
    correct_urls_per_question: [1, 2],
    per_domain_counts: { HistoryIslam: 2, Sport: 4, Geography: 1 },
  };

  it("renders every summary figure into a data-stat cell", () => {
    const html = renderStatsPanel(stats);
    expect(html).toContain('<td class="stat" data-stat="n_questions">5</td>');
    expect(html).toContain('<td class="stat" data-stat="total_urls">17</td>');
    expect(html).toContain('<td class="stat" data-stat="n_texts">1</td>');
  });

  it("renders min/max pairs as a range", () => {
    const html = renderStatsPanel(stats);
    expect(html).toContain('data-stat="urls_per_question">3→4</td>');
    expect(html).toContain('data-stat="correct_urls_per_question">1→2</td>');
  });

  it("scales domain bars against the largest count", () => {
    const html = renderStatsPanel(stats);
    expect(html).toContain('<div class="bar-row" data-domain="Sport">');
    expect(html).toMatch(
      /data-domain="Sport">.*?<span class="bar" style="width: 100%">/,
    );
    expect(html).toMatch(
      /data-domain="HistoryIslam">.*?<span class="bar" style="width: 50%">/,
    );
    expect(html).toContain('<span class="bar-count">4</span>');
  });

  it("survives an empty corpus without dividing by zero", () => {
    const html = renderStatsPanel({
      n_questions: 0,
      total_urls: 0,
      urls_per_question: [0, 0],
      n_texts: 0,
      correct_urls_per_question: [0, 0],
      per_domain_counts: {},
    });
    expect(html).toContain('data-stat="n_questions">0</td>');
    expect(html).toContain('<div class="domain-bars"></div>');
  });
});
