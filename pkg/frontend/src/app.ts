import { ApiClient, ApiRequestError } from "./api.js";
import {
  renderConflictNotice,
  renderErrorChip,
  renderExtraction,
  renderQuestionQueue,
  renderStatsPanel,
  renderUrlTable,
  type QueueFilter,
} from "./render.js";
import type { Extraction, QuestionSummary } from "./types.js";

interface AppState {
  questions: QuestionSummary[];
  filter: QueueFilter;
  selected: string | null;
  urlCountSeen: Record<string, number>;
  extractions: Map<string, Extraction>;
  decisionInFlight: boolean;
}

function el(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing container #${id}`);
  return node;
}

export function startApp(baseUrl: string): void {
  const api = new ApiClient(baseUrl);
  const state: AppState = {
    questions: [],
    filter: {},
    selected: null,
    urlCountSeen: {},
    extractions: new Map(),
    decisionInFlight: false,
  };

  const banner = el("banner");
  const queue = el("queue");
  const urls = el("urls");
  const preview = el("preview");
  const statsPanel = el("stats");

  function showBanner(message: string): void {
    banner.textContent = message;
    banner.hidden = message === "";
  }

  function redrawQueue(): void {
    queue.innerHTML = renderQuestionQueue(
      state.questions,
      state.filter,
      state.urlCountSeen,
    );
  }

  async function refreshQuestions(): Promise<void> {
    try {
      state.questions = await api.listQuestions();
      showBanner("");
    } catch (err) {
      showBanner(`تعذر الوصول إلى الخدمة / API unreachable: ${String(err)}`);
      return;
    }
    redrawQueue();
  }

  async function refreshStats(): Promise<void> {
    try {
      statsPanel.innerHTML = renderStatsPanel(await api.stats());
    } catch (err) {
      showBanner(`تعذر تحميل الإحصاءات: ${String(err)}`);
    }
  }

  async function selectQuestion(qid: string): Promise<void> {
    state.selected = qid;
    try {
      const results = await api.search(qid);
      state.urlCountSeen[qid] = results.length;
      urls.innerHTML = renderUrlTable(results);
      preview.innerHTML = "";
      redrawQueue();
    } catch (err) {
      urls.innerHTML = renderErrorChip(String(err));
    }
  }

  async function extractUrl(url: string): Promise<void> {
    const qid = state.selected;
    if (!qid) return;
    const cell = urls.querySelector(`[data-url-status="${CSS.escape(url)}"]`);
    try {
      const extraction = await api.extract(qid, url);
      state.extractions.set(url, extraction);
      if (cell) cell.innerHTML = "";
      preview.innerHTML = renderExtraction(extraction);
    } catch (err) {
      // One bad URL must not block the rest of the table.
      const label =
        err instanceof ApiRequestError ? err.message : String(err);
      if (cell) cell.innerHTML = renderErrorChip(label);
    }
  }

  async function decide(url: string, accepted: boolean): Promise<void> {
    const qid = state.selected;
    if (!qid || state.decisionInFlight) return;
    const extraction = state.extractions.get(url);
    if (!extraction) return;
    state.decisionInFlight = true;
    preview.innerHTML = renderExtraction(extraction, { busy: true });
    try {
      await api.decide(qid, url, accepted);
      await refreshQuestions();
      await refreshStats();
      preview.innerHTML = renderExtraction(extraction);
    } catch (err) {
      preview.innerHTML = renderExtraction(extraction);
      if (err instanceof ApiRequestError && err.status === 409) {
        preview.insertAdjacentHTML(
          "afterbegin",
          renderConflictNotice(err.message),
        );
        await refreshQuestions();
      } else {
        showBanner(String(err));
      }
    } finally {
      state.decisionInFlight = false;
    }
  }

  document.addEventListener("click", (event) => {
    const target = event.target;
    if (!(target instanceof HTMLElement)) return;
    const qid = target.closest<HTMLElement>(".select-question")?.dataset
      .questionId;
    if (qid) {
      void selectQuestion(qid);
      return;
    }
    const extractButton = target.closest<HTMLElement>("button.extract");
    if (extractButton?.dataset.url) {
      void extractUrl(extractButton.dataset.url);
      return;
    }
    const accept = target.closest<HTMLElement>("button.accept");
    if (accept?.dataset.url) {
      void decide(accept.dataset.url, true);
      return;
    }
    const reject = target.closest<HTMLElement>("button.reject");
    if (reject?.dataset.url) {
      void decide(reject.dataset.url, false);
    }
  });

  document.addEventListener("change", (event) => {
    const target = event.target;
    if (!(target instanceof HTMLSelectElement)) return;
    if (target.id === "filter-domain") {
      state.filter.domain = target.value || undefined;
      redrawQueue();
    } else if (target.id === "filter-status") {
      state.filter.status = (target.value || undefined) as
        | "built"
        | "pending"
        | undefined;
      redrawQueue();
    }
  });

  void refreshQuestions();
  void refreshStats();
}
