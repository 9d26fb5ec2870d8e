"""Durable corpus layout and summary statistics.

On disk a corpus looks like::

    <root>/corpus.manifest        one line per entry (see below)
    <root>/<Domain>/<id>.txt      the assembled corpus text
    <root>/urls/<id>.urls         the candidate URL audit trail

Manifest lines are tab-separated with exactly these fields: id, domain,
source, question text, gold answer or "-", text-file relative path,
passage_count, url count, qualified count, accepted_by. Everything is
UTF-8 with LF newlines, and the byte layout is stable: rebuilding the
same corpus yields identical files.

A candidate line in the ``.urls`` sidecar is ``rank<TAB>status<TAB>
qualified<TAB>url``. Two ``#`` header lines carry entry metadata that
the manifest has no column for (creation time and the exact list of
URLs whose passages made it into the text); loaders must keep accepting
sidecars without them.

Writes are ordered for crash safety: the text file first, the sidecar
second, the manifest line last. A crash can strand a text file, never a
manifest line that points at nothing.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from pathlib import Path

from .fetcher import FetchStatus
from .matching import AssembledText
from .questions import Domain, Question, Source, analyze_question
from .search import UrlRecord, parse_url

Candidate = tuple[UrlRecord, FetchStatus, bool]


class StoreError(Exception):
    pass


class DuplicateEntryError(StoreError):
    pass


class ManifestError(StoreError):
    """A corpus directory cannot be read back; messages carry line numbers."""


@dataclass(frozen=True)
class CorpusEntry:
    question: Question
    assembled: AssembledText
    candidate_urls: tuple[Candidate, ...]
    accepted_by: str = "auto"
    created_at: str = ""


@dataclass(frozen=True)
class CorpusStats:
    n_questions: int
    total_urls: int
    urls_per_question: tuple[int, int]
    n_texts: int
    correct_urls_per_question: tuple[int, int]
    per_domain_counts: dict[Domain, int] = field(hash=False, default_factory=dict)


def _validate_entry(entry: CorpusEntry) -> None:
    q = entry.question
    if "\t" in q.text or "\n" in q.text:
        raise StoreError(f"question text for {q.id!r} contains tab or newline")
    if q.gold_answer == "-":
        raise StoreError(f'gold answer "-" is reserved for absent (question {q.id!r})')
    if entry.assembled.question_id != q.id:
        raise StoreError(
            f"assembled text belongs to {entry.assembled.question_id!r}, not {q.id!r}"
        )
    if not entry.candidate_urls:
        raise StoreError(f"entry {q.id!r} has no candidate urls")
    if entry.assembled.passage_count < 1:
        raise StoreError(f"entry {q.id!r} has an empty assembled text")
    urls = entry.assembled.source_urls
    if not urls or len(set(urls)) != len(urls):
        raise StoreError(f"entry {q.id!r} has empty or duplicated source urls")
    if entry.accepted_by not in ("auto", "human"):
        raise StoreError(f"unknown accepted_by {entry.accepted_by!r}")


class CorpusStore:
    """In-memory entry map, optionally mirrored to a corpus directory.

    With a root path every accepted entry is persisted immediately;
    without one the store is a plain container (useful for synthetic
    statistics runs)."""

    def __init__(self, root: str | Path | None = None):
        self.root = Path(root) if root is not None else None
        self._entries: dict[str, CorpusEntry] = {}
        self._lock = threading.Lock()

    @property
    def entries(self) -> list[CorpusEntry]:
        return list(self._entries.values())

    def __contains__(self, question_id: str) -> bool:
        return question_id in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def get(self, question_id: str) -> CorpusEntry | None:
        return self._entries.get(question_id)

    def add_entry(self, entry: CorpusEntry) -> None:
        _validate_entry(entry)
        with self._lock:
            qid = entry.question.id
            if qid in self._entries:
                raise DuplicateEntryError(f"entry for question {qid!r} already stored")
            if self.root is not None:
                self._persist_entry(entry)
            self._entries[qid] = entry

    # -- on-disk layout ----------------------------------------------------

    def _text_relpath(self, entry: CorpusEntry) -> str:
        return f"{entry.question.domain.value}/{entry.question.id}.txt"

    def _persist_entry(self, entry: CorpusEntry) -> None:
        assert self.root is not None
        text_path = self.root / self._text_relpath(entry)
        text_path.parent.mkdir(parents=True, exist_ok=True)
        text_path.write_text(entry.assembled.text, encoding="utf-8", newline="")
        write_url_sidecar(
            self.root, entry.question.id, entry.candidate_urls,
            created_at=entry.created_at, source_urls=entry.assembled.source_urls,
        )
        self._append_manifest_line(_manifest_line(entry, self._text_relpath(entry)))

    def _append_manifest_line(self, line: str) -> None:
        assert self.root is not None
        self.root.mkdir(parents=True, exist_ok=True)
        with open(self.root / "corpus.manifest", "a", encoding="utf-8", newline="\n") as fh:
            fh.write(line)
            fh.flush()


def _manifest_line(entry: CorpusEntry, relpath: str) -> str:
    q = entry.question
    qualified = sum(1 for _, _, ok in entry.candidate_urls if ok)
    fields = (
        q.id,
        q.domain.value,
        q.source.value,
        q.text,
        q.gold_answer if q.gold_answer is not None else "-",
        relpath,
        str(entry.assembled.passage_count),
        str(len(entry.candidate_urls)),
        str(qualified),
        entry.accepted_by,
    )
    return "\t".join(fields) + "\n"


def write_url_sidecar(
    root: Path,
    question_id: str,
    candidates: tuple[Candidate, ...] | list[Candidate],
    created_at: str = "",
    source_urls: tuple[str, ...] | None = None,
) -> Path:
    """Write (or rewrite) the candidate audit file for one question."""
    urls_dir = root / "urls"
    urls_dir.mkdir(parents=True, exist_ok=True)
    lines = [f"# created_at\t{created_at}"]
    if source_urls:
        lines.append("# source_urls\t" + "\t".join(source_urls))
    for record, status, qualified in sorted(candidates, key=lambda c: c[0].rank):
        lines.append(f"{record.rank}\t{status}\t{1 if qualified else 0}\t{record.url}")
    path = urls_dir / f"{question_id}.urls"
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
    return path


def _read_url_sidecar(path: Path) -> tuple[list[Candidate], str, tuple[str, ...] | None]:
    candidates: list[Candidate] = []
    created_at = ""
    source_urls: tuple[str, ...] | None = None
    for lineno, line in enumerate(path.read_text("utf-8").splitlines(), 1):
        if not line.strip():
            continue
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition("\t")
            if key == "created_at":
                created_at = value
            elif key == "source_urls":
                source_urls = tuple(v for v in value.split("\t") if v)
            continue
        parts = line.split("\t")
        if len(parts) != 4:
            raise ManifestError(f"{path}: line {lineno}: expected 4 fields, got {len(parts)}")
        rank_text, status_text, qualified_text, url = parts
        try:
            rank = int(rank_text)
            status = FetchStatus.parse(status_text)
        except ValueError as exc:
            raise ManifestError(f"{path}: line {lineno}: {exc}") from exc
        if qualified_text not in ("0", "1"):
            raise ManifestError(f"{path}: line {lineno}: bad qualified flag {qualified_text!r}")
        candidates.append((UrlRecord(url, rank, parse_url(url)), status, qualified_text == "1"))
    return candidates, created_at, source_urls


def save_corpus(store: CorpusStore, out_dir: str | Path) -> None:
    """Write the whole store under out_dir, replacing any manifest there."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    manifest = out_dir / "corpus.manifest"
    if manifest.exists():
        manifest.unlink()
    disk = CorpusStore(out_dir)
    for entry in store.entries:
        disk.add_entry(entry)


def load_corpus(corpus_dir: str | Path) -> CorpusStore:
    """Rebuild a store from a corpus directory.

    Questions are re-analyzed from their text, so derived fields come
    back exactly as the builder computed them."""
    corpus_dir = Path(corpus_dir)
    manifest = corpus_dir / "corpus.manifest"
    if not manifest.is_file():
        raise ManifestError(f"missing manifest: {manifest}")
    # Entries are added with no root so loading never rewrites files;
    # the root is attached afterwards.
    store = CorpusStore(root=None)
    for lineno, line in enumerate(manifest.read_text("utf-8").splitlines(), 1):
        if not line:
            continue
        fields = line.split("\t")
        if len(fields) != 10:
            raise ManifestError(
                f"{manifest}: line {lineno}: expected 10 fields, got {len(fields)}"
            )
        (qid, domain_text, source_text, text, gold, relpath,
         passage_count_text, url_count_text, qualified_count_text, accepted_by) = fields
        try:
            domain = Domain(domain_text)
            source = Source(source_text)
            passage_count = int(passage_count_text)
            url_count = int(url_count_text)
            qualified_count = int(qualified_count_text)
        except ValueError as exc:
            raise ManifestError(f"{manifest}: line {lineno}: {exc}") from exc
        text_path = corpus_dir / relpath
        if not text_path.is_file():
            raise ManifestError(
                f"{manifest}: line {lineno}: missing text file {relpath}"
            )
        sidecar = corpus_dir / "urls" / f"{qid}.urls"
        if not sidecar.is_file():
            raise ManifestError(
                f"{manifest}: line {lineno}: missing url sidecar urls/{qid}.urls"
            )
        candidates, created_at, source_urls = _read_url_sidecar(sidecar)
        if len(candidates) != url_count:
            raise ManifestError(
                f"{manifest}: line {lineno}: url count {url_count} does not match "
                f"sidecar ({len(candidates)} lines)"
            )
        if sum(1 for _, _, ok in candidates if ok) != qualified_count:
            raise ManifestError(
                f"{manifest}: line {lineno}: qualified count mismatch against sidecar"
            )
        if source_urls is None:
            qualified_urls = [r.url for r, _, ok in candidates if ok]
            source_urls = tuple(qualified_urls[:passage_count])
        question = analyze_question(
            Question(qid, text, domain, source, None if gold == "-" else gold)
        )
        assembled = AssembledText(
            question_id=qid,
            text=text_path.read_text("utf-8"),
            passage_count=passage_count,
            source_urls=source_urls,
        )
        entry = CorpusEntry(
            question=question,
            assembled=assembled,
            candidate_urls=tuple(candidates),
            accepted_by=accepted_by,
            created_at=created_at,
        )
        try:
            store.add_entry(entry)
        except DuplicateEntryError:
            raise ManifestError(
                f"{manifest}: line {lineno}: duplicate question id {qid!r}"
            ) from None
    store.root = corpus_dir
    return store


def stats_lines(stats: CorpusStats) -> list[str]:
    """name<TAB>value lines in the canonical field order; ranges render
    as min→max."""
    lines = [
        f"n_questions\t{stats.n_questions}",
        f"total_urls\t{stats.total_urls}",
        f"urls_per_question\t{stats.urls_per_question[0]}→{stats.urls_per_question[1]}",
        f"n_texts\t{stats.n_texts}",
        "correct_urls_per_question\t"
        f"{stats.correct_urls_per_question[0]}→{stats.correct_urls_per_question[1]}",
    ]
    for domain, count in stats.per_domain_counts.items():
        lines.append(f"per_domain_{domain.value}\t{count}")
    return lines


def compute_stats(store: CorpusStore) -> CorpusStats:
    """Corpus-level summary; an empty store reports all zeros."""
    entries = store.entries
    per_domain = {domain: 0 for domain in Domain}
    if not entries:
        return CorpusStats(0, 0, (0, 0), 0, (0, 0), per_domain)
    url_counts = [len(e.candidate_urls) for e in entries]
    correct_counts = [sum(1 for _, _, ok in e.candidate_urls if ok) for e in entries]
    n_texts = sum(1 for e in entries if e.assembled.text)
    for e in entries:
        per_domain[e.question.domain] += 1
    return CorpusStats(
        n_questions=len(entries),
        total_urls=sum(url_counts),
        urls_per_question=(min(url_counts), max(url_counts)),
        n_texts=n_texts,
        correct_urls_per_question=(min(correct_counts), max(correct_counts)),
        per_domain_counts=per_domain,
    )
