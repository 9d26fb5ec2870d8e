"""Polite, cached page fetching.

Fetch outcomes are values, never exceptions: a PageRecord always comes
back, carrying one of the statuses ok / http_error(code) / timeout /
not_html / too_large / network_error. The fetcher enforces a per-host
minimum interval between request starts and a global bound on in-flight
requests. Transport and clock are injectable so both behaviors are
testable without a network or real sleeps.

Cache layout (keyed by :func:`qacorpus.search.url_hash`)::

    <cache_dir>/<hash>.html    raw body bytes
    <cache_dir>/<hash>.meta    key=value lines: url, final_url, encoding,
                               fetched_at, status

Only successful fetches are cached; the meta file is written after the
body so a torn write never yields a meta without its body.
"""
from __future__ import annotations

import logging
import re
import threading
from dataclasses import dataclass
from pathlib import Path

import requests

from .clock import SystemClock, iso_utc
from .search import UrlParseError, UrlRecord, parse_url, url_hash

log = logging.getLogger(__name__)

DEFAULT_TIMEOUT_MS = 10_000
DEFAULT_MAX_BYTES = 2 * 1024 * 1024
DEFAULT_HOST_INTERVAL_MS = 1_000
DEFAULT_MAX_CONCURRENT = 4
MAX_REDIRECTS = 5

_STATUS_RE = re.compile(r"^([a-z_]+)(?:\((\d+)\))?$")


class CacheError(Exception):
    """Reading or writing the on-disk cache failed."""


class TransportError(Exception):
    pass


class TransportTimeout(TransportError):
    pass


@dataclass(frozen=True)
class FetchStatus:
    kind: str
    code: int | None = None

    OK = "ok"
    HTTP_ERROR = "http_error"
    TIMEOUT = "timeout"
    NOT_HTML = "not_html"
    TOO_LARGE = "too_large"
    NETWORK_ERROR = "network_error"
    # Candidate never fetched (human curation skipped it).
    SKIPPED = "skipped"

    @property
    def is_ok(self) -> bool:
        return self.kind == FetchStatus.OK

    def __str__(self) -> str:
        if self.code is None:
            return self.kind
        return f"{self.kind}({self.code})"

    @classmethod
    def parse(cls, text: str) -> "FetchStatus":
        m = _STATUS_RE.match(text)
        if not m:
            raise ValueError(f"bad fetch status: {text!r}")
        return cls(m.group(1), int(m.group(2)) if m.group(2) else None)

    @classmethod
    def ok(cls) -> "FetchStatus":
        return cls(cls.OK)

    @classmethod
    def http_error(cls, code: int) -> "FetchStatus":
        return cls(cls.HTTP_ERROR, code)


@dataclass(frozen=True)
class PageRecord:
    url: str
    status: FetchStatus
    raw_html: bytes | None = None
    encoding: str = "utf-8"
    fetched_at: str = ""
    final_url: str | None = None


@dataclass
class FetchPolicy:
    timeout_ms: int = DEFAULT_TIMEOUT_MS
    max_bytes: int = DEFAULT_MAX_BYTES
    per_host_interval_ms: int = DEFAULT_HOST_INTERVAL_MS
    max_concurrent: int = DEFAULT_MAX_CONCURRENT

    def __post_init__(self) -> None:
        for name in ("timeout_ms", "max_bytes", "per_host_interval_ms", "max_concurrent"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")


@dataclass(frozen=True)
class TransportResponse:
    status_code: int
    content_type: str | None
    body: bytes
    final_url: str


class HttpTransport:
    """requests-backed transport; body reads stop at limit+1 bytes."""

    def __init__(self, session: requests.Session | None = None):
        self._session = session or requests.Session()
        self._session.max_redirects = MAX_REDIRECTS

    def __call__(self, url: str, timeout_s: float, limit: int) -> TransportResponse:
        try:
            with self._session.get(url, timeout=timeout_s, stream=True) as resp:
                body = b""
                for chunk in resp.iter_content(chunk_size=65536):
                    body += chunk
                    if len(body) > limit:
                        break
                return TransportResponse(
                    status_code=resp.status_code,
                    content_type=resp.headers.get("Content-Type"),
                    body=body,
                    final_url=resp.url,
                )
        except requests.Timeout as exc:
            raise TransportTimeout(str(exc)) from exc
        except requests.RequestException as exc:
            raise TransportError(str(exc)) from exc


class FixtureTransport:
    """Serves fixture pages from <fixture_dir>/pages/<url-hash>.html.

    A missing page file answers 404, mirroring a dead link."""

    def __init__(self, fixture_dir: str | Path):
        self.pages_dir = Path(fixture_dir) / "pages"

    def __call__(self, url: str, timeout_s: float, limit: int) -> TransportResponse:
        path = self.pages_dir / f"{url_hash(url)}.html"
        if not path.is_file():
            return TransportResponse(404, "text/html", b"", url)
        return TransportResponse(200, "text/html", path.read_bytes()[: limit], url)


_CHARSET_HEADER_RE = re.compile(r"charset=[\"']?([A-Za-z0-9_\-]+)", re.IGNORECASE)
_CHARSET_META_RE = re.compile(rb"charset=[\"']?([A-Za-z0-9_\-]+)", re.IGNORECASE)
_XML_DECL_RE = re.compile(rb"<\?xml[^>]*encoding=[\"']([A-Za-z0-9_\-]+)", re.IGNORECASE)


def detect_encoding(content_type: str | None, body: bytes) -> str:
    """Charset from the header if declared, else from the first 2 KiB of
    the document, else UTF-8. Unknown names fall back to UTF-8."""
    name = None
    if content_type:
        m = _CHARSET_HEADER_RE.search(content_type)
        if m:
            name = m.group(1)
    if name is None:
        head = body[:2048]
        m = _CHARSET_META_RE.search(head) or _XML_DECL_RE.search(head)
        if m:
            name = m.group(1).decode("ascii", "ignore")
    if name is None:
        return "utf-8"
    name = name.strip().lower()
    try:
        import codecs

        codecs.lookup(name)
    except LookupError:
        return "utf-8"
    return name


class PageFetcher:
    """Stateful fetcher owning politeness and concurrency bounds."""

    def __init__(self, policy: FetchPolicy | None = None, transport=None, clock=None):
        self.policy = policy or FetchPolicy()
        self.transport = transport or HttpTransport()
        self.clock = clock or SystemClock()
        self._sem = threading.Semaphore(self.policy.max_concurrent)
        self._state_lock = threading.Lock()
        self._host_locks: dict[str, threading.Lock] = {}
        self._last_start: dict[str, float] = {}

    def _host_lock(self, host: str) -> threading.Lock:
        with self._state_lock:
            lock = self._host_locks.get(host)
            if lock is None:
                lock = self._host_locks[host] = threading.Lock()
            return lock

    def fetch_page(self, u: UrlRecord | str) -> PageRecord:
        """Fetch one page. Failures are statuses, never exceptions."""
        url = u.url if isinstance(u, UrlRecord) else u
        try:
            host = parse_url(url).host
        except UrlParseError:
            return PageRecord(url, FetchStatus(FetchStatus.NETWORK_ERROR),
                              fetched_at=iso_utc(self.clock.now()))
        interval_s = self.policy.per_host_interval_ms / 1000.0
        with self._sem:
            with self._host_lock(host):
                last = self._last_start.get(host)
                if last is not None:
                    wait = last + interval_s - self.clock.now()
                    if wait > 0:
                        self.clock.sleep(wait)
                self._last_start[host] = self.clock.now()
            fetched_at = iso_utc(self.clock.now())
            try:
                resp = self.transport(url, self.policy.timeout_ms / 1000.0,
                                      self.policy.max_bytes)
            except TransportTimeout:
                return PageRecord(url, FetchStatus(FetchStatus.TIMEOUT), fetched_at=fetched_at)
            except TransportError as exc:
                log.debug("network error for %s: %s", url, exc)
                return PageRecord(url, FetchStatus(FetchStatus.NETWORK_ERROR),
                                  fetched_at=fetched_at)
        if resp.status_code != 200:
            return PageRecord(url, FetchStatus.http_error(resp.status_code),
                              fetched_at=fetched_at, final_url=resp.final_url)
        ctype = resp.content_type
        if ctype is not None and "html" not in ctype.lower():
            return PageRecord(url, FetchStatus(FetchStatus.NOT_HTML),
                              fetched_at=fetched_at, final_url=resp.final_url)
        if len(resp.body) > self.policy.max_bytes:
            return PageRecord(url, FetchStatus(FetchStatus.TOO_LARGE),
                              fetched_at=fetched_at, final_url=resp.final_url)
        return PageRecord(
            url,
            FetchStatus.ok(),
            raw_html=resp.body,
            encoding=detect_encoding(ctype, resp.body),
            fetched_at=fetched_at,
            final_url=resp.final_url,
        )

    def get_or_fetch(self, u: UrlRecord | str, cache_dir: str | Path) -> PageRecord:
        """Serve from cache when possible; cache successful fresh fetches.

        URLs differing only in fragment share one cache entry."""
        url = u.url if isinstance(u, UrlRecord) else u
        cache_dir = Path(cache_dir)
        try:
            key = url_hash(url)
        except UrlParseError:
            return self.fetch_page(u)
        html_path = cache_dir / f"{key}.html"
        meta_path = cache_dir / f"{key}.meta"
        try:
            if meta_path.is_file() and html_path.is_file():
                meta = _read_meta(meta_path)
                return PageRecord(
                    url=url,
                    status=FetchStatus.parse(meta["status"]),
                    raw_html=html_path.read_bytes(),
                    encoding=meta["encoding"],
                    fetched_at=meta["fetched_at"],
                    final_url=meta["final_url"] or None,
                )
        except (OSError, KeyError, ValueError) as exc:
            raise CacheError(f"unreadable cache entry {meta_path}: {exc}") from exc
        record = self.fetch_page(u)
        if record.status.is_ok:
            try:
                cache_dir.mkdir(parents=True, exist_ok=True)
                html_path.write_bytes(record.raw_html or b"")
                _write_meta(meta_path, record)
            except OSError as exc:
                raise CacheError(f"cannot write cache entry {html_path}: {exc}") from exc
        return record


def _write_meta(path: Path, record: PageRecord) -> None:
    lines = [
        f"url={record.url}",
        f"final_url={record.final_url or ''}",
        f"encoding={record.encoding}",
        f"fetched_at={record.fetched_at}",
        f"status={record.status}",
    ]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def _read_meta(path: Path) -> dict[str, str]:
    meta: dict[str, str] = {}
    for line in path.read_text("utf-8").splitlines():
        if line:
            key, _, value = line.partition("=")
            meta[key] = value
    return meta
