"""Report writers: delimited outputs, the HTML topic summary, and figures.

All CSV output is RFC-4180 (UTF-8, CRLF, header row) with fixed float
formatting so identical runs produce byte-identical files.
"""

from __future__ import annotations

import csv
import html
from datetime import datetime, timezone
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from . import lda
from .analytics import CollocateGraph, TrendReport, keyword_counts  # noqa: F401
from .classify import EvalReport
from .lda import TopicModel


def write_csv(path: Path, header: list[str], rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def _prob(x: float) -> str:
    return f"{x:.6f}"


def write_doc_topics_csv(path: Path, model: TopicModel) -> None:
    """One row per document: id, dominant tag, theta in tag order."""
    tags = model.tags
    header = ["Doc", "Tag"] + [f"Theta_{t}" for t in tags]
    dominant = lda.dominant_tags(model)
    rows = []
    for d, doc_id in enumerate(model.doc_ids):
        theta_row = [_prob(model.theta[d, k]) for k in model.topic_order]
        rows.append([doc_id, dominant[d]] + theta_row)
    write_csv(path, header, rows)


def write_topic_words_csv(path: Path, model: TopicModel, n_words: int = 5) -> None:
    header = ["Tag", "Rank", "Term", "Phi"]
    rows = []
    for pos, k in enumerate(model.topic_order):
        tag = lda.tag_name(pos)
        for rank, (term, phi) in enumerate(lda.top_words(model, k, n_words), start=1):
            rows.append([tag, rank, term, _prob(phi)])
    write_csv(path, header, rows)


def write_trend_csv(path: Path, reports: list[TrendReport], segments: int) -> None:
    header = ["Term", "Doc", "Count", "Relative"] + [f"Seg{i}" for i in range(1, segments + 1)]
    rows = []
    for report in reports:
        for row in report.per_doc:
            rows.append([report.query.pattern, row.doc_id, row.count,
                         f"{row.relative:.4f}"] + list(row.segments))
    write_csv(path, header, rows)


def write_keywords_csv(path: Path, counts: list[tuple[str, int]],
                       graph: CollocateGraph, n_terms: int = 7) -> None:
    """Keyword, corpus count, and its heaviest collocates."""
    associated: dict[str, list[str]] = {}
    for keyword, term, _ in graph.edges:
        associated.setdefault(keyword, []).append(term)
    header = ["Keyword", "Count", "Top Collocates"]
    rows = [
        [keyword, count, "; ".join(associated.get(keyword, [])[:n_terms])]
        for keyword, count in counts
    ]
    write_csv(path, header, rows)


def render_topics_html(model: TopicModel, titles: dict[str, str],
                       n_words: int = 5, n_docs: int = 5,
                       timestamp: bool = True) -> str:
    """Static per-tag summary: top words and representative document titles."""
    tag_counts = {}
    for tag in lda.dominant_tags(model):
        tag_counts[tag] = tag_counts.get(tag, 0) + 1
    parts = [
        "<!DOCTYPE html>",
        "<html><head><meta charset='utf-8'><title>Topic model summary</title>",
        "<style>body{font-family:sans-serif;margin:2em}table{border-collapse:collapse;"
        "margin-bottom:2em}td,th{border:1px solid #999;padding:4px 8px;text-align:left}"
        "caption{font-weight:bold;padding:6px;text-align:left}</style>",
        "</head><body>",
        "<h1>Topic model summary</h1>",
        f"<p>{len(model.doc_ids)} documents, {model.config.k} topics, "
        f"alpha={model.config.alpha}, beta={model.config.beta}, "
        f"iterations={model.config.iterations}, seed={model.config.seed}.</p>",
    ]
    if timestamp:
        now = datetime.now(timezone.utc).strftime("%Y-%m-%d %H:%M:%S UTC")
        parts.append(f"<p>Generated {now}.</p>")
    mean_theta = model.theta.mean(axis=0)
    for pos, k in enumerate(model.topic_order):
        tag = lda.tag_name(pos)
        parts.append(f"<table><caption>Topic {html.escape(tag)} "
                     f"(mean proportion {mean_theta[k]:.4f}, "
                     f"{tag_counts.get(tag, 0)} documents tagged)</caption>")
        parts.append("<tr><th>Rank</th><th>Top word</th><th>phi</th>"
                     "<th>Representative document</th><th>theta</th></tr>")
        words = lda.top_words(model, k, n_words)
        docs = lda.representative_docs(model, k, n_docs)
        for rank in range(max(len(words), len(docs))):
            term, phi = words[rank] if rank < len(words) else ("", "")
            if rank < len(docs):
                doc_id, theta = docs[rank]
                title = titles.get(doc_id, doc_id)
            else:
                title, theta = "", ""
            parts.append(
                "<tr><td>%d</td><td>%s</td><td>%s</td><td>%s</td><td>%s</td></tr>" % (
                    rank + 1,
                    html.escape(str(term)),
                    _prob(phi) if phi != "" else "",
                    html.escape(str(title)),
                    _prob(theta) if theta != "" else "",
                ))
        parts.append("</table>")
    parts.append("</body></html>")
    return "\n".join(parts) + "\n"


def topic_proportions_figure(model: TopicModel, path: Path) -> None:
    """Bar chart of corpus-wide topic probability per tag."""
    mean_theta = model.theta.mean(axis=0)
    tags = model.tags
    values = [mean_theta[k] for k in model.topic_order]
    fig, ax = plt.subplots(figsize=(6, 3.5))
    ax.bar(tags, values, color="#4878a8")
    ax.set_xlabel("Topic tag")
    ax.set_ylabel("Mean document proportion")
    ax.set_title("Corpus-wide topic proportions")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def trend_figure(reports: list[TrendReport], path: Path) -> None:
    """Relative frequency of each queried term across the corpus documents."""
    fig, ax = plt.subplots(figsize=(8, 4))
    for report in reports:
        ys = [row.relative for row in report.per_doc]
        ax.plot(range(1, len(ys) + 1), ys, marker=".", linewidth=1,
                label=report.query.pattern)
    ax.set_xlabel("Document (corpus order)")
    ax.set_ylabel("Relative frequency (per 10M words)")
    ax.set_title("Term trends across the corpus")
    if reports:
        ax.legend(fontsize=7, ncol=2)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def confusion_figure(report: EvalReport, path: Path) -> None:
    """Heat map of the predicted-by-true confusion matrix."""
    n = len(report.classes)
    fig, ax = plt.subplots(figsize=(1.2 * n + 2, 1.2 * n + 1.5))
    image = ax.imshow(report.confusion, cmap="Blues")
    ax.set_xticks(range(n), [f"true {c}" for c in report.classes],
                  rotation=45, ha="right")
    ax.set_yticks(range(n), [f"pred. {c}" for c in report.classes])
    for i in range(n):
        for j in range(n):
            value = int(report.confusion[i, j])
            color = "white" if value > report.confusion.max() / 2 else "black"
            ax.text(j, i, str(value), ha="center", va="center", color=color)
    kappa = "undefined" if report.kappa is None else f"{report.kappa:.3f}"
    ax.set_title(f"kappa: {kappa}, accuracy: {report.accuracy * 100:.2f}%")
    fig.colorbar(image, shrink=0.8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
