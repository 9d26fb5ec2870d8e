import pytest
from fastapi.testclient import TestClient

from qacorpus.clock import FixedClock
from qacorpus.fetcher import FetchPolicy, FixtureTransport, PageFetcher
from qacorpus.search import ProviderConfig
from qacorpus.service import create_app, load_state

GOLD_URL = "http://q1-design.fixture.test/eiffel"
DEAD_URL = "http://q1-dead.fixture.test/gone"


@pytest.fixture()
def service(demo_fixture, tmp_path):
    clock = FixedClock()
    fetcher = PageFetcher(
        FetchPolicy(),
        transport=FixtureTransport(demo_fixture.fixture_dir),
        clock=clock,
    )
    state = load_state(
        questions_path=demo_fixture.questions_path,
        corpus_dir=tmp_path / "corpus",
        provider_config=ProviderConfig(
            kind="fixture", fixture_dir=demo_fixture.fixture_dir
        ),
        fetcher=fetcher,
        cache_dir=tmp_path / "cache",
        clock=clock,
    )
    return TestClient(create_app(state)), state


def _search(client, qid="q1"):
    resp = client.get(f"/api/questions/{qid}/search")
    assert resp.status_code == 200
    return resp.json()


def _extract(client, url, qid="q1"):
    resp = client.post(f"/api/questions/{qid}/extract", json={"url": url})
    assert resp.status_code == 200, resp.text
    return resp.json()


def test_list_questions(service):
    client, _ = service
    rows = client.get("/api/questions").json()
    assert [r["id"] for r in rows] == ["q1", "q2", "q3", "q4", "q5"]
    assert all(r["status"] == "pending" for r in rows)
    q1 = rows[0]
    assert q1["text"] == "من صمم برج ايفل؟"
    assert q1["gold_answer"] == "غوستاف ايفل"
    assert q1["domain"] == "HistoryIslam"


def test_search_returns_ranked_candidates(service):
    client, _ = service
    rows = _search(client)
    assert [r["rank"] for r in rows] == list(range(1, len(rows) + 1))
    urls = [r["url"] for r in rows]
    assert GOLD_URL in urls
    assert rows[0]["parts"]["host"] == rows[0]["url"].split("/")[2]


def test_search_max_validation(service):
    client, _ = service
    assert client.get("/api/questions/q1/search?max=0").status_code == 400
    limited = client.get("/api/questions/q1/search?max=2").json()
    assert len(limited) == 2


def test_search_unknown_question(service):
    client, _ = service
    resp = client.get("/api/questions/zz/search")
    assert resp.status_code == 404
    body = resp.json()
    assert body["error"] == "unknown_question"
    assert "zz" in body["detail"]


def test_extract_fields(service):
    client, _ = service
    _search(client)
    body = _extract(client, GOLD_URL)
    assert body["url"] == GOLD_URL
    assert "غوستاف" in body["clean_text"]
    assert body["contains_gold"] is True
    assert body["coverage"] >= 1
    assert 0.0 < body["arabic_char_ratio"] <= 1.0
    assert body["passage"] is not None
    assert body["passage"]["coverage"] >= 1
    assert len(body["passage"]["sentence_span"]) == 2
    # Spans point at real characters of the clean text.
    assert body["gold_spans"]
    for start, end in body["gold_spans"]:
        assert 0 <= start < end <= len(body["clean_text"])
    assert body["keyword_spans"]
    for span in body["keyword_spans"]:
        assert span["keyword"]
        assert 0 <= span["start"] < span["end"] <= len(body["clean_text"])


def test_extract_dead_link_is_502(service):
    client, _ = service
    _search(client)
    resp = client.post("/api/questions/q1/extract", json={"url": DEAD_URL})
    assert resp.status_code == 502
    body = resp.json()
    assert body["error"] == "fetch_failed"
    assert body["detail"] == "http_error(404)"


def test_extract_validation(service):
    client, _ = service
    assert client.post("/api/questions/q1/extract", json={}).status_code == 400
    assert (
        client.post("/api/questions/zz/extract", json={"url": "http://x.test/"})
        .status_code
        == 404
    )


def test_accept_flow_builds_entry(service):
    client, state = service
    stats0 = client.get("/api/stats").json()
    assert stats0["n_texts"] == 0
    rows = _search(client)
    extraction = _extract(client, GOLD_URL)
    resp = client.post(
        "/api/questions/q1/decision",
        json={"question_id": "q1", "url": GOLD_URL, "accepted": True},
    )
    assert resp.status_code == 200
    body = resp.json()
    assert body["status"] == "built"
    assert body["passage_count"] == 1

    stats1 = client.get("/api/stats").json()
    assert stats1["n_texts"] == stats0["n_texts"] + 1
    assert stats1["per_domain_counts"]["HistoryIslam"] == 1

    entry = state.store.get("q1")
    assert entry is not None
    assert entry.accepted_by == "human"
    assert entry.assembled.source_urls == (GOLD_URL,)
    assert entry.assembled.text == extraction["passage"]["text"]
    flags = {r.url: ok for r, _, ok in entry.candidate_urls}
    assert flags[GOLD_URL] is True
    assert all(not ok for url, ok in flags.items() if url != GOLD_URL)
    assert len(flags) == len(rows)
    # Candidates never fetched in this session carry the skipped status.
    statuses = {r.url: str(s) for r, s, _ in entry.candidate_urls}
    assert statuses[GOLD_URL] == "ok"
    assert all(
        s == "skipped" for url, s in statuses.items() if url != GOLD_URL
    )
    # The entry was persisted, not just cached in memory.
    assert (state.store.root / "corpus.manifest").is_file()
    listed = client.get("/api/questions").json()
    assert [r["status"] for r in listed if r["id"] == "q1"] == ["built"]


def test_second_accept_conflicts(service):
    client, _ = service
    _search(client)
    _extract(client, GOLD_URL)
    ok = client.post(
        "/api/questions/q1/decision", json={"url": GOLD_URL, "accepted": True}
    )
    assert ok.status_code == 200
    again = client.post(
        "/api/questions/q1/decision", json={"url": GOLD_URL, "accepted": True}
    )
    assert again.status_code == 409
    assert again.json()["error"] == "already_built"


def test_reject_records_sidecar(service):
    client, state = service
    _search(client)
    _extract(client, GOLD_URL)
    resp = client.post(
        "/api/questions/q1/decision", json={"url": GOLD_URL, "accepted": False}
    )
    assert resp.status_code == 200
    assert resp.json()["status"] == "pending"
    assert "q1" not in state.store
    sidecar = state.store.root / "urls" / "q1.urls"
    assert sidecar.is_file()
    lines = [
        l for l in sidecar.read_text("utf-8").splitlines() if not l.startswith("#")
    ]
    assert all(line.split("\t")[2] == "0" for line in lines)


def test_reject_then_accept_supersedes(service):
    client, state = service
    _search(client)
    _extract(client, GOLD_URL)
    client.post(
        "/api/questions/q1/decision", json={"url": GOLD_URL, "accepted": False}
    )
    resp = client.post(
        "/api/questions/q1/decision", json={"url": GOLD_URL, "accepted": True}
    )
    assert resp.status_code == 200
    entry = state.store.get("q1")
    flags = {r.url: ok for r, _, ok in entry.candidate_urls}
    assert flags[GOLD_URL] is True


def test_decision_validation(service):
    client, _ = service
    _search(client)
    _extract(client, GOLD_URL)
    cases = [
        ({"url": GOLD_URL}, 400),  # accepted missing
        ({"url": GOLD_URL, "accepted": "yes"}, 400),
        ({"url": "http://never.test/", "accepted": True}, 400),
        ({"question_id": "q2", "url": GOLD_URL, "accepted": True}, 400),
    ]
    for body, code in cases:
        resp = client.post("/api/questions/q1/decision", json=body)
        assert resp.status_code == code, body
    not_extracted = client.post(
        "/api/questions/q1/decision",
        json={"url": "http://q1-history.fixture.test/tower", "accepted": True},
    )
    assert not_extracted.status_code == 400
    assert not_extracted.json()["error"] == "not_extracted"
    assert (
        client.post(
            "/api/questions/zz/decision", json={"url": "http://x.test/", "accepted": True}
        ).status_code
        == 404
    )


def test_decision_requires_prior_search(service):
    client, _ = service
    resp = client.post(
        "/api/questions/q1/decision", json={"url": GOLD_URL, "accepted": True}
    )
    assert resp.status_code == 400
    assert resp.json()["error"] == "not_a_candidate"


def test_add_question(service, demo_fixture):
    client, state = service
    resp = client.post(
        "/api/questions",
        json={
            "id": "q6",
            "text": "متى صمم برج ايفل؟",
            "domain": "HistoryIslam",
            "source": "FAQ",
            "gold_answer": "1887",
        },
    )
    assert resp.status_code == 200
    assert resp.json()["status"] == "pending"
    assert "q6" in state.bank
    # Persisted to the question file and immediately searchable.
    text = demo_fixture.questions_path.read_text("utf-8")
    assert "id=q6" in text
    rows = client.get("/api/questions").json()
    assert [r["id"] for r in rows][-1] == "q6"
    assert _search(client, "q6")


def test_add_question_validation(service):
    client, _ = service
    assert (
        client.post("/api/questions", json={"id": "q7", "text": "س"}).status_code
        == 400
    )
    dup = client.post(
        "/api/questions",
        json={"id": "q1", "text": "من صمم برج ايفل؟", "domain": "Sport", "source": "FAQ"},
    )
    assert dup.status_code == 409
    bad = client.post(
        "/api/questions",
        json={
            "id": "q8",
            "text": "هل الأرض كروية؟",
            "domain": "Sport",
            "source": "FAQ",
        },
    )
    assert bad.status_code == 400
    assert bad.json()["error"] == "bad_question"


def test_gets_do_not_mutate_corpus(service):
    client, state = service
    before = len(state.store)
    for _ in range(2):
        client.get("/api/questions")
        client.get("/api/stats")
        client.get("/api/questions/q1/search")
    assert len(state.store) == before
    assert not (state.store.root / "corpus.manifest").exists()


def test_provider_failure_is_502(demo_fixture, tmp_path):
    clock = FixedClock()
    fetcher = PageFetcher(
        FetchPolicy(),
        transport=FixtureTransport(demo_fixture.fixture_dir),
        clock=clock,
    )
    state = load_state(
        questions_path=demo_fixture.questions_path,
        corpus_dir=tmp_path / "corpus",
        provider_config=ProviderConfig(
            kind="fixture", fixture_dir=tmp_path / "not-a-fixture"
        ),
        fetcher=fetcher,
        cache_dir=tmp_path / "cache",
        clock=clock,
    )
    client = TestClient(create_app(state))
    resp = client.get("/api/questions/q1/search")
    assert resp.status_code == 502
    assert resp.json()["error"] == "provider_failure"
