"""HTTP curation API over a question bank and a corpus store.

Routes (all JSON, CORS open so a local UI can call them):

    GET  /api/questions                      queue with built/pending status
    POST /api/questions                      add one question record
    GET  /api/questions/{id}/search?max=N    ranked candidate URLs
    POST /api/questions/{id}/extract         {url} -> clean text + match info
    POST /api/questions/{id}/decision        {url, accepted, note?}
    GET  /api/stats                          corpus statistics

Errors come back as ``{"error": ..., "detail": ...}``. GET handlers
never mutate state. Extractions are cached per (question, url) for the
life of the process so a decision never re-fetches the page, and an
accepted decision is persisted synchronously before the response goes
out, so an interrupt cannot lose it.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import Body, FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .clock import SystemClock, iso_utc
from .extract import ExtractionError, filter_foreign_tokens, html_to_text
from .fetcher import FetchStatus, PageFetcher
from .matching import (
    AssembledText,
    CandidateText,
    find_gold_spans,
    find_keyword_spans,
    score_candidate,
)
from .questions import (
    Domain,
    Question,
    QuestionError,
    Source,
    analyze_question,
)
from .search import ProviderConfig, ProviderError, SearchQuery, UrlRecord, make_provider
from .store import CorpusEntry, CorpusStore, compute_stats, write_url_sidecar

DEFAULT_PORT = 8711


class ApiError(Exception):
    def __init__(self, status_code: int, error: str, detail: str):
        super().__init__(detail)
        self.status_code = status_code
        self.error = error
        self.detail = detail


@dataclass
class ServiceState:
    bank: dict[str, Question]
    store: CorpusStore
    provider_config: ProviderConfig
    fetcher: PageFetcher
    cache_dir: Path
    max_urls: int = 25
    max_passages: int = 9
    questions_path: Path | None = None
    clock: object = field(default_factory=SystemClock)
    # session caches: search results and extractions already performed
    candidates: dict[str, list[UrlRecord]] = field(default_factory=dict)
    extractions: dict[tuple[str, str], tuple[FetchStatus, CandidateText]] = field(
        default_factory=dict
    )
    rejected: dict[str, set[str]] = field(default_factory=dict)
    lock: threading.Lock = field(default_factory=threading.Lock)


def _question_summary(state: ServiceState, q: Question) -> dict:
    return {
        "id": q.id,
        "text": q.text,
        "domain": q.domain.value,
        "source": q.source.value,
        "gold_answer": q.gold_answer,
        "status": "built" if q.id in state.store else "pending",
    }


def _require_question(state: ServiceState, qid: str) -> Question:
    q = state.bank.get(qid)
    if q is None:
        raise ApiError(404, "unknown_question", f"no question with id {qid!r}")
    return q


def create_app(state: ServiceState) -> FastAPI:
    app = FastAPI(title="qacorpus curation api", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(ApiError)
    async def _api_error(_request: Request, exc: ApiError) -> JSONResponse:
        return JSONResponse(
            status_code=exc.status_code,
            content={"error": exc.error, "detail": exc.detail},
        )

    @app.get("/api/questions")
    def list_questions() -> list[dict]:
        return [
            _question_summary(state, q)
            for _, q in sorted(state.bank.items())
        ]

    @app.post("/api/questions")
    def add_question(payload: dict = Body(...)) -> dict:
        for name in ("id", "text", "domain", "source"):
            if not payload.get(name):
                raise ApiError(400, "bad_request", f"missing field {name!r}")
        qid = str(payload["id"])
        if qid in state.bank:
            raise ApiError(409, "duplicate_question", f"question {qid!r} already exists")
        try:
            question = analyze_question(
                Question(
                    id=qid,
                    text=str(payload["text"]),
                    domain=Domain(payload["domain"]),
                    source=Source(payload["source"]),
                    gold_answer=payload.get("gold_answer") or None,
                )
            )
        except (ValueError, QuestionError) as exc:
            raise ApiError(400, "bad_question", str(exc)) from exc
        with state.lock:
            state.bank[qid] = question
            if state.questions_path is not None:
                record = [
                    f"id={question.id}",
                    f"text={question.text}",
                    f"domain={question.domain.value}",
                    f"source={question.source.value}",
                ]
                if question.gold_answer:
                    record.append(f"gold_answer={question.gold_answer}")
                with open(state.questions_path, "a", encoding="utf-8", newline="\n") as fh:
                    fh.write("\t".join(record) + "\n")
        return _question_summary(state, question)

    @app.get("/api/questions/{qid}/search")
    def search_question(qid: str, max: int | None = None) -> list[dict]:
        question = _require_question(state, qid)
        limit = state.max_urls if max is None else max
        if limit < 1:
            raise ApiError(400, "bad_request", f"max must be >= 1, got {limit}")
        try:
            provider = make_provider(state.provider_config)
            query = SearchQuery(qid, " ".join(question.keywords or ()), limit)
            records = provider.search(query)
        except (ProviderError, ValueError) as exc:
            raise ApiError(502, "provider_failure", str(exc)) from exc
        with state.lock:
            state.candidates[qid] = records
        return [
            {
                "url": r.url,
                "rank": r.rank,
                "parts": {
                    "protocol": r.parts.protocol,
                    "host": r.parts.host,
                    "path": r.parts.path,
                    "query": r.parts.query,
                },
            }
            for r in records
        ]

    @app.post("/api/questions/{qid}/extract")
    def extract_candidate(qid: str, payload: dict = Body(...)) -> dict:
        question = _require_question(state, qid)
        url = payload.get("url")
        if not url or not isinstance(url, str):
            raise ApiError(400, "bad_request", "body must carry a url string")
        known = {r.url: r for r in state.candidates.get(qid, [])}
        record = known.get(url)
        page = state.fetcher.get_or_fetch(record or url, state.cache_dir)
        if not page.status.is_ok:
            raise ApiError(502, "fetch_failed", str(page.status))
        try:
            text = html_to_text(page.raw_html or b"", page.encoding)
        except ExtractionError as exc:
            raise ApiError(502, "extraction_failed", str(exc)) from exc
        extracted = filter_foreign_tokens(text)
        rank = record.rank if record is not None else len(known) + 1
        candidate = score_candidate(url, rank, extracted.text, question)
        with state.lock:
            state.extractions[(qid, url)] = (page.status, candidate)
        passage = None
        if candidate.passages:
            p = candidate.passages[0]
            passage = {
                "text": p.text,
                "sentence_span": list(p.sentence_span),
                "coverage": p.coverage,
            }
        gold_spans = (
            find_gold_spans(extracted.text, question.gold_answer)
            if question.gold_answer
            else []
        )
        return {
            "url": url,
            "clean_text": extracted.text,
            "arabic_char_ratio": extracted.arabic_char_ratio,
            "removed_foreign_tokens": extracted.removed_foreign_tokens,
            "contains_gold": candidate.contains_gold,
            "coverage": candidate.coverage,
            "passage": passage,
            "gold_spans": [list(span) for span in gold_spans],
            "keyword_spans": find_keyword_spans(extracted.text, question.keywords or ()),
        }

    @app.post("/api/questions/{qid}/decision")
    def decide(qid: str, payload: dict = Body(...)) -> dict:
        question = _require_question(state, qid)
        body_qid = payload.get("question_id")
        if body_qid is not None and body_qid != qid:
            raise ApiError(400, "bad_request",
                           f"body question_id {body_qid!r} does not match path id {qid!r}")
        url = payload.get("url")
        accepted = payload.get("accepted")
        if not url or not isinstance(url, str) or not isinstance(accepted, bool):
            raise ApiError(400, "bad_request", "body must carry url and boolean accepted")
        candidates = state.candidates.get(qid, [])
        ranked = {r.url: r for r in candidates}
        if url not in ranked:
            raise ApiError(400, "not_a_candidate",
                           f"url was not returned by this session's search for {qid!r}")
        cached = state.extractions.get((qid, url))
        if cached is None:
            raise ApiError(400, "not_extracted",
                           f"extract {url} for {qid!r} before deciding on it")
        if not accepted:
            with state.lock:
                state.rejected.setdefault(qid, set()).add(url)
                if state.store.root is not None and qid not in state.store:
                    write_url_sidecar(
                        state.store.root, qid,
                        _candidate_rows(state, qid, accepted_url=None),
                    )
            return {"question_id": qid, "url": url, "accepted": False,
                    "status": "built" if qid in state.store else "pending"}
        if qid in state.store:
            raise ApiError(409, "already_built",
                           f"question {qid!r} already has a stored text")
        with state.lock:
            # An accept supersedes any earlier rejection of the same URL.
            state.rejected.get(qid, set()).discard(url)
        _, candidate = cached
        text = candidate.passages[0].text if candidate.passages else candidate.clean_text
        if not text.strip():
            raise ApiError(400, "empty_text",
                           "candidate produced no text to store")
        assembled = AssembledText(
            question_id=qid,
            text=text,
            passage_count=1,
            source_urls=(url,),
        )
        entry = CorpusEntry(
            question=question,
            assembled=assembled,
            candidate_urls=tuple(_candidate_rows(state, qid, accepted_url=url)),
            accepted_by="human",
            created_at=iso_utc(state.clock.now()),
        )
        with state.lock:
            state.store.add_entry(entry)
        return {
            "question_id": qid,
            "url": url,
            "accepted": True,
            "status": "built",
            "passage_count": assembled.passage_count,
        }

    @app.get("/api/stats")
    def stats() -> dict:
        s = compute_stats(state.store)
        return {
            "n_questions": s.n_questions,
            "total_urls": s.total_urls,
            "urls_per_question": list(s.urls_per_question),
            "n_texts": s.n_texts,
            "correct_urls_per_question": list(s.correct_urls_per_question),
            "per_domain_counts": {d.value: n for d, n in s.per_domain_counts.items()},
        }

    return app


def _candidate_rows(state: ServiceState, qid: str, accepted_url: str | None):
    """Session candidates as store rows. The accepted URL is the one
    human-validated candidate; rejected and undecided ones are not."""
    rows = []
    rejected = state.rejected.get(qid, set())
    for record in state.candidates.get(qid, []):
        cached = state.extractions.get((qid, record.url))
        status = cached[0] if cached else FetchStatus(FetchStatus.SKIPPED)
        qualified = record.url == accepted_url and record.url not in rejected
        rows.append((record, status, qualified))
    return rows


def load_state(
    questions_path: str | Path,
    corpus_dir: str | Path,
    provider_config: ProviderConfig,
    fetcher: PageFetcher,
    cache_dir: str | Path,
    max_urls: int = 25,
    max_passages: int = 9,
    clock=None,
) -> ServiceState:
    from .questions import load_questions
    from .store import load_corpus

    corpus_dir = Path(corpus_dir)
    if (corpus_dir / "corpus.manifest").is_file():
        store = load_corpus(corpus_dir)
    else:
        store = CorpusStore(corpus_dir)
    bank = {q.id: q for q in load_questions(questions_path)}
    return ServiceState(
        bank=bank,
        store=store,
        provider_config=provider_config,
        fetcher=fetcher,
        cache_dir=Path(cache_dir),
        max_urls=max_urls,
        max_passages=max_passages,
        questions_path=Path(questions_path),
        clock=clock or SystemClock(),
    )
