"""Command line front end: build a corpus, evaluate it, report, serve.

    qacorpus build  --questions q.txt --out corpus/ --provider fixture --fixture-dir web/
    qacorpus eval   --corpus corpus/ --auto
    qacorpus report --corpus corpus/ --out report/ --auto
    qacorpus serve  --questions q.txt --corpus corpus/ --provider fixture --fixture-dir web/

Exit codes: 0 on success, 1 on configuration errors (bad paths, provider
misconfiguration, empty label sets), 2 when a build stores no entry.
"""
from __future__ import annotations

import argparse
import logging
import socket
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

from .clock import FixedClock, SystemClock, iso_utc
from .evaluation import (
    LabelError,
    auto_labels,
    evaluation_report,
    format_precision,
    load_labels,
)
from .extract import ExtractionError, filter_foreign_tokens, html_to_text
from .fetcher import (
    CacheError,
    FetchPolicy,
    FetchStatus,
    FixtureTransport,
    HttpTransport,
    PageFetcher,
    PageRecord,
)
from .matching import CandidateText, build_corpus_text, qualifies, score_candidate
from .questions import Question, QuestionFormatError, load_questions
from .search import FixtureError, ProviderConfig, ProviderError, build_query, make_provider
from .store import (
    CorpusEntry,
    CorpusStore,
    StoreError,
    compute_stats,
    load_corpus,
    stats_lines,
)

log = logging.getLogger(__name__)


class ConfigError(Exception):
    pass


@dataclass
class BuildConfig:
    questions_path: Path
    out_dir: Path
    provider: ProviderConfig
    max_urls: int = 25
    max_passages: int = 9
    timeout_ms: int = 10_000
    cache_dir: Path | None = None
    fixed_clock: bool = False

    def __post_init__(self) -> None:
        if self.max_urls < 1:
            raise ConfigError("--max-urls must be >= 1")
        if self.max_passages < 1:
            raise ConfigError("--max-passages must be >= 1")
        if self.cache_dir is None:
            self.cache_dir = self.out_dir / ".cache"
        if Path(self.cache_dir).resolve() == self.out_dir.resolve():
            raise ConfigError("--cache-dir must differ from --out")


def _make_fetcher(config: BuildConfig) -> PageFetcher:
    policy = FetchPolicy(timeout_ms=config.timeout_ms)
    clock = FixedClock() if config.fixed_clock else SystemClock()
    if config.provider.kind == "fixture":
        transport = FixtureTransport(config.provider.fixture_dir)
    else:
        transport = HttpTransport()
    return PageFetcher(policy, transport=transport, clock=clock)


def _failed_candidate(record, status: FetchStatus, question: Question) -> CandidateText:
    return CandidateText(
        url=record.url,
        rank=record.rank,
        clean_text="",
        contains_gold=False if question.gold_answer is not None else None,
        coverage=0,
    )


def _build_one(question: Question, provider, fetcher: PageFetcher,
               config: BuildConfig, pool: ThreadPoolExecutor):
    """Search, fetch, extract and score all candidates for one question."""
    query = replace(build_query(question), max_results=config.max_urls)
    records = provider.search(query)

    def fetch(record) -> PageRecord:
        try:
            return fetcher.get_or_fetch(record, config.cache_dir)
        except CacheError as exc:
            log.warning("cache unavailable for %s: %s", record.url, exc)
            return fetcher.fetch_page(record)

    pages = list(pool.map(fetch, records))
    candidates = []
    for record, page in zip(records, pages):
        if page.status.is_ok:
            try:
                text = html_to_text(page.raw_html or b"", page.encoding)
            except ExtractionError as exc:
                log.warning("extraction failed for %s: %s", record.url, exc)
                candidates.append((record, page.status, _failed_candidate(record, page.status, question)))
                continue
            extracted = filter_foreign_tokens(text)
            candidates.append(
                (record, page.status,
                 score_candidate(record.url, record.rank, extracted.text, question))
            )
        else:
            log.info("fetch %s for %s: %s", record.url, question.id, page.status)
            candidates.append((record, page.status, _failed_candidate(record, page.status, question)))
    return candidates


def cmd_build(config: BuildConfig) -> int:
    try:
        questions = load_questions(config.questions_path)
        provider = make_provider(config.provider)
    except (OSError, QuestionFormatError, FixtureError, ValueError) as exc:
        log.error("%s", exc)
        return 1
    fetcher = _make_fetcher(config)
    clock = fetcher.clock
    if (config.out_dir / "corpus.manifest").is_file():
        store = load_corpus(config.out_dir)
        log.info("resuming: %d entries already stored", len(store))
    else:
        store = CorpusStore(config.out_dir)
    with ThreadPoolExecutor(max_workers=fetcher.policy.max_concurrent) as pool:
        for question in questions:
            if question.id in store:
                log.info("skipping %s: already stored", question.id)
                continue
            try:
                candidates = _build_one(question, provider, fetcher, config, pool)
            except ProviderError as exc:
                log.warning("search failed for %s: %s", question.id, exc)
                continue
            assembled = build_corpus_text(
                [c for _, _, c in candidates], question, config.max_passages
            )
            if assembled is None:
                log.info("no qualifying candidate for %s", question.id)
                continue
            entry = CorpusEntry(
                question=question,
                assembled=assembled,
                candidate_urls=tuple(
                    (record, status, qualifies(c, question))
                    for record, status, c in candidates
                ),
                accepted_by="auto",
                created_at=iso_utc(clock.now()),
            )
            store.add_entry(entry)
    for line in stats_lines(compute_stats(store)):
        print(line)
    return 0 if len(store) >= 1 else 2


def cmd_eval(corpus_dir: Path, labels_path: Path | None, auto: bool) -> int:
    try:
        store = load_corpus(corpus_dir)
        labels = auto_labels(store) if auto else load_labels(labels_path)
    except (OSError, StoreError, LabelError) as exc:
        log.error("%s", exc)
        return 1
    if not labels:
        log.error("no labels to evaluate")
        return 1
    try:
        report = evaluation_report(labels, store)
    except LabelError as exc:
        log.error("%s", exc)
        return 1
    print(f"micro_precision\t{format_precision(report.micro_precision)}")
    print(f"macro_precision\t{format_precision(report.macro_precision)}")
    for qid in sorted(report.per_question):
        correct, total, precision = report.per_question[qid]
        print(f"{qid}\t{correct}\t{total}\t{format_precision(precision)}")
    return 0


def cmd_report(corpus_dir: Path, out_dir: Path, labels_path: Path | None, auto: bool) -> int:
    try:
        store = load_corpus(corpus_dir)
    except (OSError, StoreError) as exc:
        log.error("%s", exc)
        return 1
    report = None
    if auto or labels_path is not None:
        try:
            labels = auto_labels(store) if auto else load_labels(labels_path)
            if not labels:
                log.error("no labels to evaluate")
                return 1
            report = evaluation_report(labels, store)
        except (OSError, LabelError) as exc:
            log.error("%s", exc)
            return 1
    from .report import write_report

    written = write_report(store, compute_stats(store), out_dir, report)
    for path in written:
        print(path)
    return 0


def cmd_serve(questions_path: Path, corpus_dir: Path, provider: ProviderConfig,
              port: int, cache_dir: Path | None, timeout_ms: int,
              max_urls: int, fixed_clock: bool) -> int:
    from .service import ServiceState, create_app, load_state

    clock = FixedClock() if fixed_clock else SystemClock()
    policy = FetchPolicy(timeout_ms=timeout_ms)
    if provider.kind == "fixture":
        transport = FixtureTransport(provider.fixture_dir)
    else:
        transport = HttpTransport()
    fetcher = PageFetcher(policy, transport=transport, clock=clock)
    if cache_dir is None:
        cache_dir = Path(corpus_dir) / ".cache"
    try:
        state = load_state(
            questions_path, corpus_dir, provider, fetcher, cache_dir,
            max_urls=max_urls, clock=clock,
        )
    except (OSError, QuestionFormatError, StoreError, ValueError) as exc:
        log.error("%s", exc)
        return 1
    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        probe.bind(("127.0.0.1", port))
    except OSError:
        log.error("port %d is already in use", port)
        return 1
    finally:
        probe.close()
    import uvicorn

    app = create_app(state)
    uvicorn.run(app, host="127.0.0.1", port=port, log_level="warning")
    return 0


def _provider_from_args(args: argparse.Namespace) -> ProviderConfig:
    try:
        return ProviderConfig(
            kind=args.provider,
            fixture_dir=Path(args.fixture_dir) if args.fixture_dir else None,
            endpoint=args.endpoint,
            timeout_ms=args.timeout_ms,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _add_provider_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--provider", choices=("live", "fixture"), default="fixture")
    parser.add_argument("--fixture-dir", help="fixture directory (manifest + pages/)")
    parser.add_argument("--endpoint", help="live search endpoint URL")
    parser.add_argument("--timeout-ms", type=int, default=10_000)
    parser.add_argument("--cache-dir", help="page cache directory")
    parser.add_argument("--max-urls", type=int, default=25,
                        help="candidate URLs per question")
    parser.add_argument("--fixed-clock", action="store_true",
                        help="freeze timestamps and skip rate-limit sleeps "
                             "for reproducible runs")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qacorpus")
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", help="build a corpus from a question file")
    p_build.add_argument("--questions", required=True)
    p_build.add_argument("--out", required=True)
    p_build.add_argument("--max-passages", type=int, default=9)
    _add_provider_args(p_build)

    p_eval = sub.add_parser("eval", help="precision against URL labels")
    p_eval.add_argument("--corpus", required=True)
    p_eval.add_argument("--labels")
    p_eval.add_argument("--auto", action="store_true",
                        help="derive labels from stored qualified flags")

    p_report = sub.add_parser("report", help="write stats/eval TSVs and figures")
    p_report.add_argument("--corpus", required=True)
    p_report.add_argument("--out", required=True)
    p_report.add_argument("--labels")
    p_report.add_argument("--auto", action="store_true")

    p_serve = sub.add_parser("serve", help="run the curation HTTP API")
    p_serve.add_argument("--questions", required=True)
    p_serve.add_argument("--corpus", required=True)
    p_serve.add_argument("--port", type=int, default=8711)
    _add_provider_args(p_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(
        level=logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    args = build_parser().parse_args(argv)
    try:
        if args.command == "build":
            config = BuildConfig(
                questions_path=Path(args.questions),
                out_dir=Path(args.out),
                provider=_provider_from_args(args),
                max_urls=args.max_urls,
                max_passages=args.max_passages,
                timeout_ms=args.timeout_ms,
                cache_dir=Path(args.cache_dir) if args.cache_dir else None,
                fixed_clock=args.fixed_clock,
            )
            return cmd_build(config)
        if args.command == "eval":
            if bool(args.labels) == args.auto:
                raise ConfigError("pass exactly one of --labels or --auto")
            return cmd_eval(Path(args.corpus),
                            Path(args.labels) if args.labels else None, args.auto)
        if args.command == "report":
            if args.labels and args.auto:
                raise ConfigError("pass at most one of --labels or --auto")
            return cmd_report(Path(args.corpus), Path(args.out),
                              Path(args.labels) if args.labels else None, args.auto)
        if args.command == "serve":
            return cmd_serve(
                Path(args.questions), Path(args.corpus),
                _provider_from_args(args), args.port,
                Path(args.cache_dir) if args.cache_dir else None,
                args.timeout_ms, args.max_urls, args.fixed_clock,
            )
    except ConfigError as exc:
        log.error("%s", exc)
        return 1
    raise AssertionError(f"unhandled command {args.command!r}")


if __name__ == "__main__":
    raise SystemExit(main())
