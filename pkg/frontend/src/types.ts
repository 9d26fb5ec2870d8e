/** Payload shapes of the curation API. The client treats these as
 * read-only data; every count shown in the UI originates from the
 * server, never from local arithmetic. */

export type QuestionStatus = "built" | "pending";

export interface QuestionSummary {
  id: string;
  text: string;
  domain: string;
  source: string;
  gold_answer: string | null;
  status: QuestionStatus;
}

export interface UrlParts {
  protocol: string;
  host: string;
  path: string;
  query: string | null;
}

export interface SearchResult {
  url: string;
  rank: number;
  parts: UrlParts;
}

export interface PassageInfo {
  text: string;
  sentence_span: [number, number];
  coverage: number;
}

export interface KeywordSpan {
  keyword: string;
  start: number;
  end: number;
}

export interface Extraction {
  url: string;
  clean_text: string;
  arabic_char_ratio: number;
  removed_foreign_tokens: number;
  contains_gold: boolean | null;
  coverage: number;
  passage: PassageInfo | null;
  gold_spans: Array<[number, number]>;
  keyword_spans: KeywordSpan[];
}

export interface DecisionResult {
  question_id: string;
  url: string;
  accepted: boolean;
  status: QuestionStatus;
  passage_count?: number;
}

export interface CorpusStats {
  n_questions: number;
  total_urls: number;
  urls_per_question: [number, number];
  n_texts: number;
  correct_urls_per_question: [number, number];
  per_domain_counts: Record<string, number>;
}

export interface NewQuestion {
  id: string;
  text: string;
  domain: string;
  source: string;
  gold_answer?: string;
}
