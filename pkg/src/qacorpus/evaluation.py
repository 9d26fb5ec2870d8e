"""Retrieval precision over labeled candidate URLs.

Labels live in a tab-separated file, one per line::

    <question_id>\t<url>\t<1 or 0>

Precision is computed with exact rational arithmetic and only rendered
as a decimal (six places) at the edges, so 3/5 really is 0.600000 and
never 0.599999.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .store import CorpusStore


class LabelError(Exception):
    pass


@dataclass(frozen=True)
class UrlLabel:
    question_id: str
    url: str
    correct: bool


@dataclass(frozen=True)
class EvalReport:
    micro_precision: Fraction
    macro_precision: Fraction
    # question id -> (correct, total, precision or None when total == 0)
    per_question: dict[str, tuple[int, int, Fraction | None]]


def format_precision(value: Fraction | None) -> str:
    if value is None:
        return "-"
    return f"{float(value):.6f}"


def micro_precision(labels: list[UrlLabel]) -> Fraction:
    """Correct URLs over all labeled URLs, pooled across questions."""
    if not labels:
        raise LabelError("no labels to evaluate")
    correct = sum(1 for lab in labels if lab.correct)
    return Fraction(correct, len(labels))


def load_labels(path: str | Path) -> list[UrlLabel]:
    labels: list[UrlLabel] = []
    seen: set[tuple[str, str]] = set()
    for lineno, line in enumerate(Path(path).read_text("utf-8").splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise LabelError(f"{path}: line {lineno}: expected 3 fields, got {len(parts)}")
        qid, url, flag = parts
        if flag not in ("0", "1"):
            raise LabelError(f"{path}: line {lineno}: label must be 0 or 1, got {flag!r}")
        if (qid, url) in seen:
            raise LabelError(f"{path}: line {lineno}: duplicate label for {qid} {url}")
        seen.add((qid, url))
        labels.append(UrlLabel(qid, url, flag == "1"))
    return labels


def auto_labels(store: CorpusStore) -> list[UrlLabel]:
    """Labels read off the stored qualified flags, in manifest order."""
    labels: list[UrlLabel] = []
    for entry in store.entries:
        for record, _, qualified in entry.candidate_urls:
            labels.append(UrlLabel(entry.question.id, record.url, qualified))
    return labels


def evaluation_report(labels: list[UrlLabel], store: CorpusStore) -> EvalReport:
    """Micro and macro precision plus a per-question breakdown.

    Every label must name a stored question. Stored questions with no
    labels appear with total 0 and stay out of the macro mean.
    """
    if not labels:
        raise LabelError("no labels to evaluate")
    counts: dict[str, list[int]] = {e.question.id: [0, 0] for e in store.entries}
    seen: set[tuple[str, str]] = set()
    for lab in labels:
        if lab.question_id not in counts:
            raise LabelError(f"label names unknown question id {lab.question_id!r}")
        if (lab.question_id, lab.url) in seen:
            raise LabelError(f"duplicate label for {lab.question_id} {lab.url}")
        seen.add((lab.question_id, lab.url))
        counts[lab.question_id][1] += 1
        if lab.correct:
            counts[lab.question_id][0] += 1
    per_question: dict[str, tuple[int, int, Fraction | None]] = {}
    precisions: list[Fraction] = []
    for qid, (correct, total) in counts.items():
        precision = Fraction(correct, total) if total else None
        per_question[qid] = (correct, total, precision)
        if precision is not None:
            precisions.append(precision)
    macro = sum(precisions, Fraction(0)) / len(precisions)
    return EvalReport(
        micro_precision=micro_precision(labels),
        macro_precision=macro,
        per_question=per_question,
    )
