"""Text preprocessing: tokenization, stop words, stemming, n-grams.

Documents pass through a fixed pipeline (tokenize -> stop words -> stem ->
n-grams) configured by a named :class:`PreprocessProfile`.  Two built-in
profiles cover the toolkit's phases: ``topic`` keeps surface unigrams for
topic modeling and word analytics, ``classify`` stems and adds bigrams for
the prediction features.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path

from . import porter
from .corpus import Corpus, bibliographic_text
from .errors import ConfigError

log = logging.getLogger(__name__)

# Maximal runs of unicode letters/digits; underscore and hyphen split tokens.
_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)


def tokenize(text: str, lowercase: bool = True) -> list[str]:
    """Split text into letter/digit runs, optionally lowercased."""
    if lowercase:
        text = text.lower()
    return _TOKEN_RE.findall(text)


def filter_stopwords(tokens: list[str], stopwords: frozenset[str],
                     min_token_len: int = 1) -> list[str]:
    return [t for t in tokens if len(t) >= min_token_len and t not in stopwords]


def stem(token: str) -> str:
    return porter.stem(token)


def ngrams(tokens: list[str], n_max: int) -> list[str]:
    """Original tokens followed by contiguous k-grams (k=2..n_max), '_'-joined."""
    if n_max < 1:
        raise ConfigError(f"ngram_max must be >= 1, got {n_max}")
    out = list(tokens)
    for k in range(2, n_max + 1):
        out.extend("_".join(tokens[i:i + k]) for i in range(len(tokens) - k + 1))
    return out


def default_stopwords() -> frozenset[str]:
    text = resources.files("etdmine.data").joinpath("stopwords.txt").read_text("utf-8")
    return _parse_stopword_text(text)


def load_stopwords(path: Path) -> frozenset[str]:
    """Read a stop word file: one term per line, '#' comments."""
    return _parse_stopword_text(Path(path).read_text(encoding="utf-8"))


def _parse_stopword_text(text: str) -> frozenset[str]:
    words = set()
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            words.add(line)
    return frozenset(words)


@dataclass(frozen=True)
class PreprocessProfile:
    name: str
    lowercase: bool = True
    min_token_len: int = 1
    stopwords: frozenset[str] = field(default_factory=frozenset)
    stem: bool = False
    ngram_max: int = 1

    def __post_init__(self):
        if self.min_token_len < 1:
            raise ConfigError(f"min_token_len must be >= 1, got {self.min_token_len}")
        if self.ngram_max < 1:
            raise ConfigError(f"ngram_max must be >= 1, got {self.ngram_max}")

    def process(self, text: str) -> list[str]:
        """Run the fixed pipeline: tokenize -> stop words -> stem -> n-grams."""
        tokens = tokenize(text, lowercase=self.lowercase)
        tokens = filter_stopwords(tokens, self.stopwords, self.min_token_len)
        if self.stem:
            tokens = [porter.stem(t) for t in tokens]
        if self.ngram_max > 1:
            tokens = ngrams(tokens, self.ngram_max)
        return tokens


def topic_profile(stopwords: frozenset[str] | None = None,
                  min_token_len: int = 1) -> PreprocessProfile:
    """Surface unigrams for topic modeling and analytics (no stemming)."""
    return PreprocessProfile(
        name="topic",
        stopwords=default_stopwords() if stopwords is None else stopwords,
        min_token_len=min_token_len,
    )


def classify_profile(stopwords: frozenset[str] | None = None,
                     min_token_len: int = 1) -> PreprocessProfile:
    """Stemmed unigrams plus bigrams for the prediction features."""
    return PreprocessProfile(
        name="classify",
        stopwords=default_stopwords() if stopwords is None else stopwords,
        min_token_len=min_token_len,
        stem=True,
        ngram_max=2,
    )


def no_stopword_variant(profile: PreprocessProfile) -> PreprocessProfile:
    """Same profile with stop word filtering disabled (raw-stream analytics)."""
    return replace(profile, name=profile.name + "-raw", stopwords=frozenset())


@dataclass(frozen=True)
class Vocabulary:
    """Dense term <-> id bijection in first-occurrence order."""

    terms: tuple[str, ...]
    index: dict[str, int]

    @classmethod
    def from_docs(cls, docs) -> "Vocabulary":
        index: dict[str, int] = {}
        for doc in docs:
            for term in doc:
                if term not in index:
                    index[term] = len(index)
        terms = tuple(sorted(index, key=index.__getitem__))
        return cls(terms=terms, index=index)

    def __len__(self) -> int:
        return len(self.terms)

    def encode(self, term: str) -> int:
        return self.index[term]

    def decode(self, term_id: int) -> str:
        return self.terms[term_id]


@dataclass(frozen=True)
class TokenizedCorpus:
    """Integer-encoded token streams, order-preserving, aligned with doc ids."""

    profile: PreprocessProfile
    vocab: Vocabulary
    doc_ids: tuple[str, ...]
    docs: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.docs)

    @property
    def total_tokens(self) -> int:
        return sum(len(d) for d in self.docs)

    @property
    def empty_doc_ids(self) -> list[str]:
        return [i for i, d in zip(self.doc_ids, self.docs) if not d]


def build_tokenized_corpus(corpus: Corpus, profile: PreprocessProfile,
                           source: str = "body") -> TokenizedCorpus:
    """Preprocess every document and build the shared vocabulary.

    ``source`` selects the text fed to the pipeline: ``body`` (full text) or
    ``bibliographic`` (flattened metadata fields).  Documents that reduce to
    zero tokens are kept so indices stay aligned with the corpus.
    """
    if source not in ("body", "bibliographic"):
        raise ConfigError(f"unknown preprocessing source: {source!r}")
    token_docs = []
    for doc in corpus:
        text = doc.text if source == "body" else bibliographic_text(doc)
        token_docs.append(profile.process(text))
    vocab = Vocabulary.from_docs(token_docs)
    encoded = tuple(tuple(vocab.index[t] for t in doc) for doc in token_docs)
    empty = [i for i, d in zip(corpus.ids, encoded) if not d]
    if empty:
        log.warning("%d document(s) have zero tokens under profile %r: %s",
                    len(empty), profile.name, ", ".join(empty))
    return TokenizedCorpus(profile=profile, vocab=vocab,
                           doc_ids=tuple(corpus.ids), docs=encoded)
