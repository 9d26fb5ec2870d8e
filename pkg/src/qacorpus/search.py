"""URL search: keyword queries against a live endpoint or an on-disk fixture.

The fixture provider makes whole-pipeline runs reproducible: a fixture
directory contains a ``manifest`` mapping keyword sets to URL lists plus
a ``pages/`` directory of HTML bodies named by :func:`url_hash`, so
search and fetch both resolve locally. The live provider talks to a
plain HTTP endpoint (``GET <endpoint>?q=<query>``) that answers with one
URL per line.
"""
from __future__ import annotations

import hashlib
import logging
import threading
from dataclasses import dataclass
from pathlib import Path
from urllib.parse import urlsplit

import requests

from .clock import SystemClock
from .normalize import normalize_text, tokenize

log = logging.getLogger(__name__)

DEFAULT_MAX_RESULTS = 25


class UrlParseError(ValueError):
    pass


class ProviderError(Exception):
    """The provider could not produce results (network, endpoint, fixture)."""


class FixtureError(ProviderError):
    """The fixture directory is missing or its manifest is malformed."""


@dataclass(frozen=True)
class UrlParts:
    protocol: str
    host: str
    path: str
    query: str | None = None


def parse_url(url: str) -> UrlParts:
    """Split an absolute http(s) URL into comparable parts.

    The host is lowercased, an empty path becomes "/", the fragment is
    discarded. Relative or non-http(s) URLs raise UrlParseError.
    """
    try:
        split = urlsplit(url)
    except ValueError as exc:
        raise UrlParseError(f"unparseable url: {url!r}") from exc
    if split.scheme not in ("http", "https"):
        raise UrlParseError(f"unsupported protocol in url: {url!r}")
    if not split.netloc:
        raise UrlParseError(f"missing host in url: {url!r}")
    return UrlParts(
        protocol=split.scheme,
        host=split.netloc.lower(),
        path=split.path or "/",
        query=split.query or None,
    )


def render_url(parts: UrlParts) -> str:
    url = f"{parts.protocol}://{parts.host}{parts.path}"
    if parts.query is not None:
        url += f"?{parts.query}"
    return url


def normalize_url(url: str) -> str:
    """Canonical URL used for deduplication and cache keys."""
    return render_url(parse_url(url))


def url_hash(url: str) -> str:
    """Stable 64-bit content key for a URL: BLAKE2b-64 of the normalized
    URL's UTF-8 bytes, as 16 lowercase hex digits. Shared by the fetch
    cache and the fixture page layout."""
    data = normalize_url(url).encode("utf-8")
    return hashlib.blake2b(data, digest_size=8).hexdigest()


@dataclass(frozen=True)
class UrlRecord:
    url: str
    rank: int
    parts: UrlParts


@dataclass(frozen=True)
class SearchQuery:
    question_id: str
    query_string: str
    max_results: int = DEFAULT_MAX_RESULTS

    def __post_init__(self) -> None:
        if not self.query_string.strip():
            raise ValueError("empty query string")
        if self.max_results < 1:
            raise ValueError(f"max_results must be >= 1, got {self.max_results}")


@dataclass
class ProviderConfig:
    kind: str = "fixture"
    fixture_dir: Path | None = None
    endpoint: str | None = None
    timeout_ms: int = 10_000
    min_interval_ms: int = 1_000

    def __post_init__(self) -> None:
        if self.kind not in ("live", "fixture"):
            raise ValueError(f"unknown provider kind {self.kind!r}")
        if self.kind == "fixture" and self.fixture_dir is None:
            raise ValueError("fixture provider needs fixture_dir")
        if self.kind == "live" and not self.endpoint:
            raise ValueError("live provider needs an endpoint URL")


def build_query(question) -> SearchQuery:
    """Join the question's keywords with single spaces."""
    if not question.keywords:
        raise ValueError(f"question {question.id!r} has no keywords; analyze it first")
    return SearchQuery(question.id, " ".join(question.keywords))


def _dedupe_ranked(urls: list[str], max_results: int) -> list[UrlRecord]:
    """Drop duplicate URLs (same host case-insensitively, fragment ignored),
    keep first occurrences, truncate, and assign ranks 1..n."""
    records: list[UrlRecord] = []
    seen: set[str] = set()
    for url in urls:
        try:
            canon = normalize_url(url)
        except UrlParseError:
            log.debug("skipping malformed result url %r", url)
            continue
        if canon in seen:
            continue
        seen.add(canon)
        records.append(UrlRecord(url=url, rank=len(records) + 1, parts=parse_url(url)))
        if len(records) == max_results:
            break
    return records


@dataclass(frozen=True)
class _FixtureEntry:
    keywords: frozenset[str]
    urls: tuple[str, ...]
    index: int


class FixtureSearchProvider:
    """Keyword-subset matching against a manifest file.

    Manifest line format: space-separated keywords, a TAB, then
    space-separated URLs. An entry matches a query when every one of its
    normalized keywords appears in the query. Matches contribute their
    URLs ordered by descending keyword overlap, then manifest order.
    """

    def __init__(self, fixture_dir: str | Path):
        self.fixture_dir = Path(fixture_dir)
        manifest = self.fixture_dir / "manifest"
        if not manifest.is_file():
            raise FixtureError(f"fixture manifest not found: {manifest}")
        self._entries: list[_FixtureEntry] = []
        for lineno, line in enumerate(manifest.read_text("utf-8").splitlines(), 1):
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            kw_part, sep, url_part = line.partition("\t")
            keywords = frozenset(tokenize(normalize_text(kw_part)))
            urls = tuple(url_part.split())
            if not sep or not keywords or not urls:
                raise FixtureError(f"{manifest}: malformed entry on line {lineno}")
            self._entries.append(_FixtureEntry(keywords, urls, len(self._entries)))

    def search(self, query: SearchQuery) -> list[UrlRecord]:
        qset = set(tokenize(normalize_text(query.query_string)))
        matched = [e for e in self._entries if e.keywords <= qset]
        matched.sort(key=lambda e: (-len(e.keywords), e.index))
        urls = [u for e in matched for u in e.urls]
        return _dedupe_ranked(urls, query.max_results)

    def page_path(self, url: str) -> Path:
        return self.fixture_dir / "pages" / f"{url_hash(url)}.html"


class LiveSearchProvider:
    """One-URL-per-line HTTP search endpoint, politely rate limited."""

    def __init__(self, endpoint: str, timeout_ms: int = 10_000,
                 min_interval_ms: int = 1_000, session=None, clock=None):
        self.endpoint = endpoint
        self.timeout_s = timeout_ms / 1000.0
        self.min_interval_s = min_interval_ms / 1000.0
        self._session = session or requests.Session()
        self._clock = clock or SystemClock()
        self._lock = threading.Lock()
        self._last_request: float | None = None

    def search(self, query: SearchQuery) -> list[UrlRecord]:
        with self._lock:
            if self._last_request is not None:
                wait = self._last_request + self.min_interval_s - self._clock.now()
                if wait > 0:
                    self._clock.sleep(wait)
            self._last_request = self._clock.now()
            try:
                resp = self._session.get(
                    self.endpoint,
                    params={"q": query.query_string},
                    timeout=self.timeout_s,
                )
            except requests.RequestException as exc:
                raise ProviderError(f"search request failed: {exc}") from exc
        if resp.status_code != 200:
            raise ProviderError(f"search endpoint returned {resp.status_code}")
        lines = [ln.strip() for ln in resp.text.splitlines()]
        urls = [ln for ln in lines if ln and not ln.startswith("#")]
        return _dedupe_ranked(urls, query.max_results)


def make_provider(config: ProviderConfig):
    if config.kind == "fixture":
        return FixtureSearchProvider(config.fixture_dir)
    return LiveSearchProvider(
        config.endpoint, timeout_ms=config.timeout_ms,
        min_interval_ms=config.min_interval_ms,
    )


def search(query: SearchQuery, config: ProviderConfig) -> list[UrlRecord]:
    """One-shot search with a throwaway provider instance."""
    return make_provider(config).search(query)
