"""Synthetic corpora with planted topics, for rehearsals and recovery tests.

Each document draws tokens from a mixture concentrated on one planted topic;
topics own disjoint vocabulary blocks, so a sampler that works recovers the
planted structure.  The generator writes the same on-disk layout the CLI
ingests: a ``texts/`` directory of ``<id>.txt`` files plus ``metadata.jsonl``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ConfigError

# Letter-only roots keep block words stemmer-inert once a digit suffix is added.
_ROOTS = (
    "arbor", "basalt", "cobalt", "delta", "ember", "fjord", "garnet",
    "harbor", "indigo", "jasper", "krypton", "lagoon", "meadow", "nickel",
    "onyx", "prairie", "quartz", "russet", "sierra", "tundra",
)


@dataclass(frozen=True)
class PlantedCorpus:
    out_dir: Path
    text_dir: Path
    metadata_file: Path
    planted: dict[str, int]            # doc id -> planted topic index
    topic_words: tuple[tuple[str, ...], ...]


def topic_block(topic: int, words_per_topic: int) -> tuple[str, ...]:
    root = _ROOTS[topic % len(_ROOTS)]
    prefix = root if topic < len(_ROOTS) else f"{root}{topic // len(_ROOTS)}"
    return tuple(f"{prefix}{j}" for j in range(words_per_topic))


def generate_planted_corpus(
    out_dir: Path,
    n_docs: int = 263,
    n_topics: int = 5,
    words_per_topic: int = 40,
    doc_len_range: tuple[int, int] = (60, 120),
    purity: float = 0.85,
    n_missing_advisor: int = 0,
    n_missing_department: int = 0,
    seed: int = 0,
) -> PlantedCorpus:
    """Write a planted-topic corpus under ``out_dir`` and return its layout."""
    if n_topics < 2:
        raise ConfigError(f"need at least 2 topics, got {n_topics}")
    if not 0.0 < purity <= 1.0:
        raise ConfigError(f"purity must be in (0, 1], got {purity}")
    if n_docs < n_topics:
        raise ConfigError("need at least one document per topic")

    out_dir = Path(out_dir)
    text_dir = out_dir / "texts"
    text_dir.mkdir(parents=True, exist_ok=True)
    metadata_file = out_dir / "metadata.jsonl"

    rng = np.random.default_rng(seed)
    blocks = tuple(topic_block(k, words_per_topic) for k in range(n_topics))

    # Topic mixture per document: `purity` on the planted topic, rest uniform.
    off = (1.0 - purity) / (n_topics - 1) if n_topics > 1 else 0.0

    planted: dict[str, int] = {}
    records = []
    for i in range(n_docs):
        doc_id = f"doc{i:04d}"
        topic = int(rng.integers(0, n_topics)) if i >= n_topics else i
        planted[doc_id] = topic
        mixture = np.full(n_topics, off)
        mixture[topic] = purity
        length = int(rng.integers(doc_len_range[0], doc_len_range[1] + 1))
        token_topics = rng.choice(n_topics, size=length, p=mixture)
        words = [blocks[t][int(rng.integers(0, words_per_topic))] for t in token_topics]
        (text_dir / f"{doc_id}.txt").write_text(" ".join(words) + "\n", encoding="utf-8")

        keyword_picks = sorted({words[int(rng.integers(0, length))] for _ in range(3)})
        record = {
            "id": doc_id,
            "title": f"A study of {blocks[topic][0]} and {blocks[topic][1]} ({i:04d})",
            "author": f"Author {i:04d}",
            "advisor": None if i < n_missing_advisor else f"Advisor {i % 20}",
            "department": (None if i >= n_docs - n_missing_department
                           else f"Department {topic}"),
            "year": 2016 + (i % 3),
            "abstract": " ".join(words[:20]),
            "keywords": keyword_picks,
            "subject": blocks[topic][0],
        }
        records.append(record)

    with open(metadata_file, "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record) + "\n")

    return PlantedCorpus(
        out_dir=out_dir,
        text_dir=text_dir,
        metadata_file=metadata_file,
        planted=planted,
        topic_words=blocks,
    )


def best_match_accuracy(reference, candidate) -> float:
    """Agreement between two labelings under the best label bijection.

    Exhausts every mapping of candidate labels onto reference labels, so it
    is only suitable for small label sets (<= 8 or so).
    """
    reference = list(reference)
    candidate = list(candidate)
    if len(reference) != len(candidate):
        raise ConfigError("labelings must have equal length")
    if not reference:
        raise ConfigError("empty labelings")
    ref_labels = sorted(set(reference), key=str)
    cand_labels = sorted(set(candidate), key=str)
    # Pad with None so candidate labels may stay unmatched when sets differ.
    targets = ref_labels + [None] * max(0, len(cand_labels) - len(ref_labels))
    best = 0
    for perm in itertools.permutations(targets, len(cand_labels)):
        mapping = dict(zip(cand_labels, perm))
        agree = sum(1 for r, c in zip(reference, candidate) if mapping[c] == r)
        best = max(best, agree)
    return best / len(reference)
