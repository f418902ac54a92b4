import json

import pytest


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One status line per acceptance criterion at the end of the run."""
    rows = []
    for status in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(status, []):
            if "test_acceptance" in getattr(rep, "nodeid", ""):
                rows.append((rep.nodeid.split("::")[-1], status.upper()))
    if rows:
        terminalreporter.section("acceptance criteria")
        for name, status in sorted(rows):
            terminalreporter.write_line(f"{status:7s} {name}")

from etdmine import synthetic
from etdmine.corpus import load_corpus
from etdmine.preprocess import (
    TokenizedCorpus,
    Vocabulary,
    build_tokenized_corpus,
    topic_profile,
)


def write_corpus(base, texts: dict[str, str], metas: list[dict]):
    """Write <id>.txt files and a metadata.jsonl under `base`."""
    text_dir = base / "texts"
    text_dir.mkdir(parents=True, exist_ok=True)
    for doc_id, text in texts.items():
        (text_dir / f"{doc_id}.txt").write_text(text, encoding="utf-8")
    meta_file = base / "metadata.jsonl"
    with open(meta_file, "w", encoding="utf-8") as fh:
        for meta in metas:
            fh.write(json.dumps(meta) + "\n")
    return text_dir, meta_file


def make_tc(token_docs: list[list[str]], doc_ids=None) -> TokenizedCorpus:
    """Build a TokenizedCorpus straight from surface-token lists."""
    vocab = Vocabulary.from_docs(token_docs)
    if doc_ids is None:
        doc_ids = [f"doc{i:03d}" for i in range(len(token_docs))]
    return TokenizedCorpus(
        profile=topic_profile(stopwords=frozenset()),
        vocab=vocab,
        doc_ids=tuple(doc_ids),
        docs=tuple(tuple(vocab.index[t] for t in doc) for doc in token_docs),
    )


@pytest.fixture()
def corpus_factory(tmp_path):
    def build(texts, metas):
        return write_corpus(tmp_path, texts, metas)
    return build


@pytest.fixture(scope="session")
def planted(tmp_path_factory):
    """120-document, 3-topic planted corpus shared by the slower model tests."""
    base = tmp_path_factory.mktemp("planted")
    gen = synthetic.generate_planted_corpus(
        base, n_docs=120, n_topics=3, words_per_topic=25,
        doc_len_range=(40, 80), purity=0.85, seed=1234)
    return gen


@pytest.fixture(scope="session")
def planted_corpus(planted):
    return load_corpus(planted.text_dir, planted.metadata_file)


@pytest.fixture(scope="session")
def planted_topic_tc(planted_corpus):
    return build_tokenized_corpus(planted_corpus, topic_profile(), source="body")
