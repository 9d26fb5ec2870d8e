"""Shared helpers: fake clock and transport, synthetic store builders."""
from __future__ import annotations

import threading

import pytest

from qacorpus.fetcher import TransportResponse
from qacorpus.fixtures import build_demo_fixture
from qacorpus.matching import AssembledText
from qacorpus.questions import Domain, Question, Source, analyze_question
from qacorpus.search import UrlRecord, parse_url
from qacorpus.store import CorpusEntry, CorpusStore
from qacorpus.fetcher import FetchStatus


class FakeClock:
    """Clock whose sleep() advances now() instead of blocking."""

    def __init__(self, start: float = 1000.0):
        self._now = start
        self._lock = threading.Lock()

    def now(self) -> float:
        with self._lock:
            return self._now

    def sleep(self, seconds: float) -> None:
        with self._lock:
            self._now += max(0.0, seconds)

    def advance(self, seconds: float) -> None:
        self.sleep(seconds)


class StaticTransport:
    """Transport serving canned responses; records (time, url) per call."""

    def __init__(self, responses: dict, clock=None):
        self.responses = responses
        self.clock = clock
        self.calls: list[tuple[float, str]] = []
        self._lock = threading.Lock()

    def __call__(self, url: str, timeout_s: float, limit: int) -> TransportResponse:
        with self._lock:
            self.calls.append((self.clock.now() if self.clock else 0.0, url))
        result = self.responses[url]
        if isinstance(result, Exception):
            raise result
        return result


def html_response(body: bytes, status: int = 200,
                  content_type: str | None = "text/html; charset=utf-8",
                  url: str = "") -> TransportResponse:
    return TransportResponse(status, content_type, body, url)


_TEXT_TEMPLATES = [
    ("من صمم برج ايفل؟", "غوستاف ايفل"),
    ("متى تأسست الأمم المتحدة؟", "1945"),
    ("ما هو أسرع حيوان في العالم؟", "الفهد"),
    ("كم عدد لاعبي كرة القدم؟", "11"),
    ("أين يقع جبل إيفرست؟", "نيبال"),
]

_DOMAINS = list(Domain)
_SOURCES = list(Source)


def make_question(qid: str, index: int = 0, gold: bool = True) -> Question:
    text, answer = _TEXT_TEMPLATES[index % len(_TEXT_TEMPLATES)]
    return analyze_question(
        Question(
            id=qid,
            text=text,
            domain=_DOMAINS[index % len(_DOMAINS)],
            source=_SOURCES[index % len(_SOURCES)],
            gold_answer=answer if gold else None,
        )
    )


def make_entry(
    qid: str,
    index: int = 0,
    n_urls: int = 4,
    n_correct: int = 2,
    passage_count: int | None = None,
    accepted_by: str = "auto",
    text: str = "نص تجريبي للسؤال.\n\nجملة ثانية فيها الجواب.",
) -> CorpusEntry:
    """A consistent synthetic entry: first n_correct candidates qualified."""
    assert n_correct <= n_urls
    question = make_question(qid, index)
    candidates = []
    for i in range(n_urls):
        url = f"http://host-{qid}-{i}.test/page/{i}"
        candidates.append(
            (UrlRecord(url, i + 1, parse_url(url)), FetchStatus.ok(), i < n_correct)
        )
    if passage_count is None:
        passage_count = max(1, min(n_correct, 9))
    qualified_urls = tuple(r.url for r, _, ok in candidates if ok)
    source_urls = qualified_urls[:passage_count] or (candidates[0][0].url,)
    assembled = AssembledText(
        question_id=qid,
        text=text,
        passage_count=len(source_urls),
        source_urls=source_urls,
    )
    return CorpusEntry(
        question=question,
        assembled=assembled,
        candidate_urls=tuple(candidates),
        accepted_by=accepted_by,
        created_at="1970-01-01T00:00:00Z",
    )


def make_store(per_question: list[tuple[int, int]]) -> CorpusStore:
    """In-memory store with one entry per (correct, total) pair."""
    store = CorpusStore()
    for i, (correct, total) in enumerate(per_question):
        store.add_entry(make_entry(f"q{i:04d}", index=i, n_urls=total, n_correct=correct))
    return store


@pytest.fixture()
def demo_fixture(tmp_path):
    return build_demo_fixture(tmp_path / "demo")


def pytest_runtest_logreport(report):
    # One visible pass/fail line per acceptance criterion.
    if report.when == "call" and "test_acceptance" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        print(f"\n[{'PASS' if report.passed else 'FAIL'}] {name}")
