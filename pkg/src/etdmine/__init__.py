"""etdmine: topic modeling, word analytics, and tag prediction for text corpora."""

from .corpus import Corpus, Document, DocumentMeta, bibliographic_text, load_corpus
from .errors import ConfigError, DataError, EtdmineError
from .preprocess import (
    PreprocessProfile,
    TokenizedCorpus,
    Vocabulary,
    build_tokenized_corpus,
    classify_profile,
    topic_profile,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "Corpus",
    "DataError",
    "Document",
    "DocumentMeta",
    "EtdmineError",
    "PreprocessProfile",
    "TokenizedCorpus",
    "Vocabulary",
    "bibliographic_text",
    "build_tokenized_corpus",
    "classify_profile",
    "load_corpus",
    "topic_profile",
    "__version__",
]
