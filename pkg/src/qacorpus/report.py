"""Delimited reports and companion figures for a built corpus.

Each render function writes PNG files next to the TSV output so a
corpus can be eyeballed without loading it: per-domain entry counts,
per-question URL counts against qualified counts, and per-question
precision when labels are available.
"""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .evaluation import EvalReport, format_precision
from .store import CorpusStats, CorpusStore, stats_lines


def write_stats_tsv(stats: CorpusStats, path: str | Path) -> Path:
    path = Path(path)
    path.write_text("\n".join(stats_lines(stats)) + "\n", encoding="utf-8", newline="\n")
    return path


def eval_lines(report: EvalReport) -> list[str]:
    lines = [
        f"micro_precision\t{format_precision(report.micro_precision)}",
        f"macro_precision\t{format_precision(report.macro_precision)}",
    ]
    for qid in sorted(report.per_question):
        correct, total, precision = report.per_question[qid]
        lines.append(f"{qid}\t{correct}\t{total}\t{format_precision(precision)}")
    return lines


def write_eval_tsv(report: EvalReport, path: str | Path) -> Path:
    path = Path(path)
    path.write_text("\n".join(eval_lines(report)) + "\n", encoding="utf-8", newline="\n")
    return path


def render_domain_figure(stats: CorpusStats, path: str | Path) -> Path:
    path = Path(path)
    domains = list(stats.per_domain_counts)
    counts = [stats.per_domain_counts[d] for d in domains]
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.bar([d.value for d in domains], counts, color="#4878a8")
    ax.set_ylabel("corpus entries")
    ax.set_title("Entries per domain")
    ax.tick_params(axis="x", labelrotation=20)
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)
    return path


def render_urls_figure(store: CorpusStore, path: str | Path) -> Path:
    path = Path(path)
    entries = store.entries
    ids = [e.question.id for e in entries]
    totals = [len(e.candidate_urls) for e in entries]
    qualified = [sum(1 for _, _, ok in e.candidate_urls if ok) for e in entries]
    fig, ax = plt.subplots(figsize=(max(7, 0.35 * len(ids)), 4))
    xs = range(len(ids))
    ax.bar(xs, totals, color="#c8c8c8", label="candidate URLs")
    ax.bar(xs, qualified, color="#4878a8", label="qualified URLs")
    ax.set_xticks(list(xs))
    ax.set_xticklabels(ids, rotation=90, fontsize=7)
    ax.set_ylabel("URLs")
    ax.set_title("Candidate and qualified URLs per question")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)
    return path


def render_precision_figure(report: EvalReport, path: str | Path) -> Path:
    path = Path(path)
    qids = sorted(q for q, (_, total, _) in report.per_question.items() if total)
    values = [float(report.per_question[q][2]) for q in qids]
    fig, ax = plt.subplots(figsize=(max(7, 0.35 * len(qids)), 4))
    ax.bar(range(len(qids)), values, color="#4878a8")
    ax.axhline(float(report.micro_precision), color="#a84848",
               linestyle="--", label=f"micro {format_precision(report.micro_precision)}")
    ax.set_xticks(range(len(qids)))
    ax.set_xticklabels(qids, rotation=90, fontsize=7)
    ax.set_ylim(0, 1)
    ax.set_ylabel("precision")
    ax.set_title("Per-question precision")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)
    return path


def write_report(
    store: CorpusStore,
    stats: CorpusStats,
    out_dir: str | Path,
    report: EvalReport | None = None,
) -> list[Path]:
    """Write the delimited summaries and their figures; returns the paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = [
        write_stats_tsv(stats, out_dir / "stats.tsv"),
        render_domain_figure(stats, out_dir / "domain_counts.png"),
        render_urls_figure(store, out_dir / "urls_per_question.png"),
    ]
    if report is not None:
        written.append(write_eval_tsv(report, out_dir / "eval.tsv"))
        written.append(render_precision_figure(report, out_dir / "precision_per_question.png"))
    return written
