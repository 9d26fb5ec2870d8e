import { escapeHtml, mergeSpans, renderHighlighted } from "./highlight.js";
import type {
  CorpusStats,
  Extraction,
  QuestionSummary,
  SearchResult,
} from "./types.js";

/** View layer: pure functions from API data to HTML strings. Keeping
 * rendering out of the DOM lets the same code run under node tests and
 * in the browser, where app.ts assigns the strings to containers. */

export interface QueueFilter {
  domain?: string;
  status?: "built" | "pending";
}

export function renderQuestionQueue(
  questions: QuestionSummary[],
  filter: QueueFilter = {},
  urlCountSeen: Record<string, number> = {},
): string {
  const rows = questions.filter(
    (q) =>
      (!filter.domain || q.domain === filter.domain) &&
      (!filter.status || q.status === filter.status),
  );
  if (rows.length === 0) {
    return '<p class="empty-state">لا توجد أسئلة مطابقة / no questions match.</p>';
  }
  const body = rows
    .map((q) => {
      const seen = urlCountSeen[q.id];
      return (
        `<tr data-question-id="${escapeHtml(q.id)}">` +
        `<td class="qid">${escapeHtml(q.id)}</td>` +
        `<td class="qtext" dir="rtl">${escapeHtml(q.text)}</td>` +
        `<td>${escapeHtml(q.domain)}</td>` +
        `<td><span class="chip chip-${q.status}">${q.status}</span></td>` +
        `<td class="seen">${seen === undefined ? "–" : String(seen)}</td>` +
        `<td><button class="select-question" data-question-id="${escapeHtml(q.id)}">فتح</button></td>` +
        "</tr>"
      );
    })
    .join("");
  return (
    '<table class="queue"><thead><tr>' +
    "<th>id</th><th>السؤال</th><th>المجال</th><th>الحالة</th><th>روابط</th><th></th>" +
    `</tr></thead><tbody>${body}</tbody></table>`
  );
}

export function renderUrlTable(results: SearchResult[]): string {
  if (results.length === 0) {
    return '<p class="empty-state">لم يرجع البحث أي روابط / search returned no URLs.</p>';
  }
  const body = results
    .map(
      (r) =>
        `<tr data-url="${escapeHtml(r.url)}">` +
        `<td class="rank">${r.rank}</td>` +
        `<td class="host">${escapeHtml(r.parts.host)}</td>` +
        `<td class="protocol">${escapeHtml(r.parts.protocol)}</td>` +
        `<td><button class="extract" data-url="${escapeHtml(r.url)}">استخراج النص</button></td>` +
        `<td class="row-status" data-url-status="${escapeHtml(r.url)}"></td>` +
        "</tr>",
    )
    .join("");
  return (
    '<table class="urls"><thead><tr>' +
    "<th>#</th><th>host</th><th>protocol</th><th></th><th></th>" +
    `</tr></thead><tbody>${body}</tbody></table>`
  );
}

/** Inline failure chip for one URL row; other rows stay usable. */
export function renderErrorChip(status: string): string {
  return `<span class="chip chip-error">${escapeHtml(status)}</span>`;
}

export function renderConflictNotice(detail: string): string {
  return `<p class="notice notice-conflict">تعارض: ${escapeHtml(detail)}</p>`;
}

export function renderExtraction(
  extraction: Extraction,
  options: { busy?: boolean } = {},
): string {
  const highlighted = renderHighlighted(
    extraction.clean_text,
    mergeSpans(
      extraction.clean_text.length,
      extraction.gold_spans,
      extraction.keyword_spans,
    ),
  );
  const goldBadge =
    extraction.contains_gold === null
      ? ""
      : `<span class="chip chip-${extraction.contains_gold ? "gold" : "plain"}">` +
        (extraction.contains_gold ? "يحتوي الجواب" : "بدون الجواب") +
        "</span>";
  const coverageNote =
    extraction.coverage === 0
      ? '<p class="notice notice-coverage">لا تطابق للكلمات المفتاحية / no keyword matches.</p>'
      : `<span class="coverage">تغطية الكلمات: ${extraction.coverage}</span>`;
  const passage = extraction.passage
    ? `<blockquote class="passage" dir="rtl">${escapeHtml(extraction.passage.text)}</blockquote>`
    : "";
  const disabled = options.busy ? " disabled" : "";
  return (
    `<article class="extraction" data-url="${escapeHtml(extraction.url)}">` +
    `<header>${goldBadge}${coverageNote}` +
    `<span class="ratio">نسبة العربية: ${extraction.arabic_char_ratio.toFixed(2)}</span>` +
    "</header>" +
    `<div class="clean-text" dir="rtl" lang="ar">${highlighted}</div>` +
    passage +
    '<footer class="decision-buttons">' +
    `<button class="accept" data-url="${escapeHtml(extraction.url)}"${disabled}>اعتماد النص</button>` +
    `<button class="reject" data-url="${escapeHtml(extraction.url)}"${disabled}>رفض</button>` +
    "</footer></article>"
  );
}

const STAT_LABELS: Array<[keyof CorpusStats, string]> = [
  ["n_questions", "عدد الأسئلة"],
  ["total_urls", "مجموع الروابط"],
  ["urls_per_question", "روابط لكل سؤال"],
  ["n_texts", "عدد النصوص"],
  ["correct_urls_per_question", "روابط صحيحة لكل سؤال"],
];

function statValue(stats: CorpusStats, key: keyof CorpusStats): string {
  const value = stats[key];
  if (Array.isArray(value)) return `${value[0]}→${value[1]}`;
  return String(value);
}

/** Summary numbers plus a CSS bar chart of per-domain counts. Every
 * figure is verbatim from GET /api/stats. */
export function renderStatsPanel(stats: CorpusStats): string {
  const rows = STAT_LABELS.map(
    ([key, label]) =>
      `<tr><th dir="rtl">${label}</th>` +
      `<td class="stat" data-stat="${key}">${statValue(stats, key)}</td></tr>`,
  ).join("");
  const counts = Object.entries(stats.per_domain_counts);
  const max = Math.max(1, ...counts.map(([, n]) => n));
  const bars = counts
    .map(([domain, n]) => {
      const width = Math.round((n / max) * 100);
      return (
        `<div class="bar-row" data-domain="${escapeHtml(domain)}">` +
        `<span class="bar-label">${escapeHtml(domain)}</span>` +
        `<span class="bar" style="width: ${width}%"></span>` +
        `<span class="bar-count">${n}</span>` +
        "</div>"
      );
    })
    .join("");
  return (
    '<section class="stats-panel">' +
    `<table class="stats">${rows}</table>` +
    `<div class="domain-bars">${bars}</div>` +
    "</section>"
  );
}
