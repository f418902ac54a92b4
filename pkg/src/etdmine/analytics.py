"""Word analytics: per-document trend statistics and collocate networks.

Both operate on a tokenized corpus (normally the ``topic`` profile over
bibliographic text).  Queries are exact terms or prefix wildcards: ``coat*``
matches coat, coating, coats, ... aggregated as one term.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .errors import ConfigError
from .preprocess import TokenizedCorpus, Vocabulary

SCALE = 10_000_000  # relative frequency is per 10 million words


@dataclass(frozen=True)
class TermQuery:
    pattern: str

    def __post_init__(self):
        if not self.pattern:
            raise ConfigError("empty term query")
        if "*" in self.pattern[:-1]:
            raise ConfigError(
                f"bad query {self.pattern!r}: '*' is only allowed as a final wildcard")

    @property
    def wildcard(self) -> bool:
        return self.pattern.endswith("*")

    def match_ids(self, vocab: Vocabulary) -> set[int]:
        """Vocabulary ids matched by this query."""
        if self.wildcard:
            prefix = self.pattern[:-1]
            return {i for term, i in vocab.index.items() if term.startswith(prefix)}
        term_id = vocab.index.get(self.pattern)
        return set() if term_id is None else {term_id}


@dataclass(frozen=True)
class TrendRow:
    doc_id: str
    count: int
    relative: float          # count / doc tokens * 10^7, 0 for empty docs
    segments: tuple[int, ...]


@dataclass(frozen=True)
class TrendReport:
    query: TermQuery
    per_doc: tuple[TrendRow, ...]


@dataclass(frozen=True)
class CollocateGraph:
    keywords: tuple[str, ...]
    window: int
    # (keyword pattern, neighbor term, co-occurrence count), weight >= 1
    edges: tuple[tuple[str, str, int], ...]


def _segment_index(position: int, doc_len: int, segments: int) -> int:
    # Equal spans of doc_len // segments tokens; the last absorbs the remainder.
    span = doc_len // segments
    if span == 0:
        return segments - 1
    return min(position // span, segments - 1)


def trend(tc: TokenizedCorpus, query: TermQuery, segments: int = 10) -> TrendReport:
    """Raw count, relative frequency, and positional segment counts per document."""
    if segments < 1:
        raise ConfigError(f"segments must be >= 1, got {segments}")
    match = query.match_ids(tc.vocab)
    rows = []
    for doc_id, doc in zip(tc.doc_ids, tc.docs):
        seg_counts = [0] * segments
        raw = 0
        for pos, token in enumerate(doc):
            if token in match:
                raw += 1
                seg_counts[_segment_index(pos, len(doc), segments)] += 1
        # multiply before dividing: a single correctly-rounded float division
        relative = (raw * float(SCALE)) / len(doc) if doc else 0.0
        rows.append(TrendRow(doc_id=doc_id, count=raw, relative=relative,
                             segments=tuple(seg_counts)))
    return TrendReport(query=query, per_doc=tuple(rows))


def collocates(tc: TokenizedCorpus, keywords: list[TermQuery], window: int = 5,
               top_n: int = 25) -> CollocateGraph:
    """Count terms within `window` positions of every keyword occurrence.

    Windows never cross document boundaries; the occurrence position itself
    is excluded.  Keeps the top_n heaviest neighbors per keyword (ties by
    vocabulary id).
    """
    if window < 1:
        raise ConfigError(f"window must be >= 1, got {window}")
    if top_n < 1:
        raise ConfigError(f"top_n must be >= 1, got {top_n}")
    edges = []
    for query in keywords:
        match = query.match_ids(tc.vocab)
        neighbor_counts: Counter[int] = Counter()
        for doc in tc.docs:
            for pos, token in enumerate(doc):
                if token not in match:
                    continue
                lo = max(0, pos - window)
                hi = min(len(doc), pos + window + 1)
                for j in range(lo, hi):
                    if j != pos:
                        neighbor_counts[doc[j]] += 1
        ranked = sorted(neighbor_counts.items(), key=lambda kv: (-kv[1], kv[0]))
        edges.extend(
            (query.pattern, tc.vocab.decode(term_id), weight)
            for term_id, weight in ranked[:top_n]
        )
    return CollocateGraph(
        keywords=tuple(q.pattern for q in keywords),
        window=window,
        edges=tuple(edges),
    )


def keyword_counts(tc: TokenizedCorpus, keywords: list[TermQuery]) -> list[tuple[str, int]]:
    """Corpus-wide raw occurrence count per keyword (wildcard-aware)."""
    counts = []
    for query in keywords:
        match = query.match_ids(tc.vocab)
        counts.append(
            (query.pattern,
             sum(1 for doc in tc.docs for token in doc if token in match))
        )
    return counts


def _dot_quote(name: str) -> str:
    return '"%s"' % name.replace("\\", "\\\\").replace('"', '\\"')


def to_dot(graph: CollocateGraph) -> str:
    """Graphviz DOT rendering of the collocate network (no layout computed)."""
    lines = ["graph collocates {"]
    for keyword, term, weight in graph.edges:
        lines.append(f"  {_dot_quote(keyword)} -- {_dot_quote(term)} [weight={weight}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json_dict(graph: CollocateGraph) -> dict:
    return {
        "window": graph.window,
        "keywords": list(graph.keywords),
        "edges": [
            {"keyword": k, "term": t, "weight": w} for k, t, w in graph.edges
        ],
    }
