import type {
  CorpusStats,
  DecisionResult,
  Extraction,
  NewQuestion,
  QuestionSummary,
  SearchResult,
} from "./types.js";

/** A non-2xx response, carrying the server's typed error body when one
 * was sent. `kind` is the server's machine-readable error name
 * (e.g. "already_built", "fetch_failed"). */
export class ApiRequestError extends Error {
  constructor(
    readonly status: number,
    readonly kind: string,
    detail: string,
  ) {
    super(detail);
    this.name = "ApiRequestError";
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  private readonly base: string;
  private readonly fetchImpl: FetchLike;

  constructor(baseUrl: string, fetchImpl?: FetchLike) {
    this.base = baseUrl.replace(/\/+$/, "");
    // Bind, or a bare `fetch` loses its window/globalThis receiver.
    this.fetchImpl = fetchImpl ?? ((input, init) => fetch(input, init));
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchImpl(this.base + path, init);
    } catch (err) {
      throw new ApiRequestError(0, "network", String(err));
    }
    if (!response.ok) {
      let kind = "http_error";
      let detail = `${response.status} ${response.statusText}`;
      try {
        const body = (await response.json()) as {
          error?: string;
          detail?: string;
        };
        if (body && typeof body.error === "string") kind = body.error;
        if (body && typeof body.detail === "string") detail = body.detail;
      } catch {
        // non-JSON error body; keep the status line
      }
      throw new ApiRequestError(response.status, kind, detail);
    }
    return (await response.json()) as T;
  }

  private post<T>(path: string, payload: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  listQuestions(): Promise<QuestionSummary[]> {
    return this.request<QuestionSummary[]>("/api/questions");
  }

  addQuestion(question: NewQuestion): Promise<QuestionSummary> {
    return this.post<QuestionSummary>("/api/questions", question);
  }

  search(questionId: string, max?: number): Promise<SearchResult[]> {
    const suffix = max === undefined ? "" : `?max=${max}`;
    return this.request<SearchResult[]>(
      `/api/questions/${encodeURIComponent(questionId)}/search${suffix}`,
    );
  }

  extract(questionId: string, url: string): Promise<Extraction> {
    return this.post<Extraction>(
      `/api/questions/${encodeURIComponent(questionId)}/extract`,
      { url },
    );
  }

  decide(
    questionId: string,
    url: string,
    accepted: boolean,
  ): Promise<DecisionResult> {
    return this.post<DecisionResult>(
      `/api/questions/${encodeURIComponent(questionId)}/decision`,
      { question_id: questionId, url, accepted },
    );
  }

  stats(): Promise<CorpusStats> {
    return this.request<CorpusStats>("/api/stats");
  }
}
