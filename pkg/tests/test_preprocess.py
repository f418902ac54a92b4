import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from etdmine.corpus import Corpus, Document, DocumentMeta
from etdmine.errors import ConfigError
from etdmine.preprocess import (
    PreprocessProfile,
    Vocabulary,
    build_tokenized_corpus,
    classify_profile,
    default_stopwords,
    filter_stopwords,
    load_stopwords,
    ngrams,
    no_stopword_variant,
    stem,
    tokenize,
    topic_profile,
)

words = st.text(alphabet="abcdefghij", min_size=1, max_size=8)
token_lists = st.lists(words, max_size=30)


def _corpus(texts: dict[str, str]) -> Corpus:
    docs = tuple(
        Document(meta=DocumentMeta(id=doc_id), text=text)
        for doc_id, text in sorted(texts.items())
    )
    return Corpus(documents=docs)


def test_tokenize_strips_punctuation():
    assert tokenize("The Public Library.") == ["the", "public", "library"]


def test_tokenize_splits_on_hyphen():
    assert tokenize("E-books 2016") == ["e", "books", "2016"]


def test_tokenize_empty():
    assert tokenize("") == []


def test_tokenize_unicode_and_underscore():
    assert tokenize("naïve café") == ["naïve", "café"]
    assert tokenize("a_b") == ["a", "b"]


def test_tokenize_case_flag():
    assert tokenize("Public", lowercase=False) == ["Public"]


def test_filter_stopwords_with_shipped_list():
    stop = default_stopwords()
    assert "the" in stop
    assert filter_stopwords(["the", "public", "library"], stop) == ["public", "library"]


def test_filter_stopwords_empty_inputs():
    assert filter_stopwords([], default_stopwords()) == []
    assert filter_stopwords(["public"], frozenset()) == ["public"]


def test_filter_stopwords_min_len():
    assert filter_stopwords(["a", "ab", "abc"], frozenset(), min_token_len=2) == ["ab", "abc"]


def test_stopword_file_override(tmp_path):
    path = tmp_path / "stop.txt"
    path.write_text("# comment\npublic\n\nlibrary\n", encoding="utf-8")
    stop = load_stopwords(path)
    assert stop == frozenset({"public", "library"})


def test_stem_examples():
    assert stem("book") == "book"
    assert stem("libraries") == "librari"
    assert stem("running") == "run"


def test_ngrams_bigrams():
    assert ngrams(["a", "b", "c"], 2) == ["a", "b", "c", "a_b", "b_c"]


def test_ngrams_short_input():
    assert ngrams(["a"], 2) == ["a"]


def test_ngrams_unigram_identity():
    assert ngrams(["a", "b", "c"], 1) == ["a", "b", "c"]


@given(token_lists.filter(lambda t: len(t) >= 1))
def test_ngram_count_is_2t_minus_1(tokens):
    assert len(ngrams(tokens, 2)) == 2 * len(tokens) - 1


@given(token_lists)
def test_stemming_preserves_count(tokens):
    assert len([stem(t) for t in tokens]) == len(tokens)


def test_builtin_profiles():
    topic = topic_profile()
    assert (topic.name, topic.stem, topic.ngram_max, topic.lowercase) == \
        ("topic", False, 1, True)
    assert topic.stopwords == default_stopwords()
    cls = classify_profile()
    assert (cls.name, cls.stem, cls.ngram_max) == ("classify", True, 2)


def test_profile_validation():
    with pytest.raises(ConfigError):
        PreprocessProfile(name="bad", min_token_len=0)
    with pytest.raises(ConfigError):
        PreprocessProfile(name="bad", ngram_max=0)


@settings(max_examples=50)
@given(st.text(max_size=120))
def test_pipeline_composition_matches_fused(text):
    profile = classify_profile()
    staged = tokenize(text, lowercase=profile.lowercase)
    staged = filter_stopwords(staged, profile.stopwords, profile.min_token_len)
    staged = [stem(t) for t in staged]
    staged = ngrams(staged, profile.ngram_max)
    assert profile.process(text) == staged


@settings(max_examples=50)
@given(st.text(max_size=120))
def test_stopword_filter_never_grows(text):
    profile = topic_profile()
    tokens = tokenize(text)
    assert len(filter_stopwords(tokens, profile.stopwords)) <= len(tokens)


@given(st.lists(token_lists, max_size=8))
def test_vocabulary_roundtrip(docs):
    vocab = Vocabulary.from_docs(docs)
    for term_id in range(len(vocab)):
        assert vocab.encode(vocab.decode(term_id)) == term_id
    for doc in docs:
        for term in doc:
            assert vocab.decode(vocab.encode(term)) == term


def test_vocabulary_first_occurrence_order():
    vocab = Vocabulary.from_docs([["b", "a"], ["a", "c"]])
    assert vocab.terms == ("b", "a", "c")


def test_build_tokenized_corpus_vocab_size():
    corpus = _corpus({"d1": "apple banana apple", "d2": "banana cherry"})
    tc = build_tokenized_corpus(corpus, topic_profile(stopwords=frozenset()))
    assert len(tc.vocab) == 3
    assert tc.total_tokens == 5


def test_build_tokenized_corpus_deterministic():
    corpus = _corpus({"d1": "study of libraries", "d2": "public library study"})
    profile = topic_profile()
    first = build_tokenized_corpus(corpus, profile)
    second = build_tokenized_corpus(corpus, profile)
    assert first.vocab.terms == second.vocab.terms
    assert first.docs == second.docs


def test_build_tokenized_corpus_empty_doc():
    corpus = _corpus({"d1": ""})
    tc = build_tokenized_corpus(corpus, topic_profile())
    assert len(tc.vocab) == 0
    assert tc.docs == ((),)
    assert tc.empty_doc_ids == ["d1"]


def test_empty_docs_keep_alignment():
    corpus = _corpus({"d1": "apple", "d2": "", "d3": "banana"})
    tc = build_tokenized_corpus(corpus, topic_profile(stopwords=frozenset()))
    assert len(tc.docs) == 3
    assert tc.docs[1] == ()
    assert tc.doc_ids == ("d1", "d2", "d3")


def test_bibliographic_source():
    doc = Document(meta=DocumentMeta(id="a", title="Public Libraries"),
                   text="body words here")
    corpus = Corpus(documents=(doc,))
    tc = build_tokenized_corpus(corpus, topic_profile(), source="bibliographic")
    assert [tc.vocab.decode(t) for t in tc.docs[0]] == ["public", "libraries"]
    with pytest.raises(ConfigError):
        build_tokenized_corpus(corpus, topic_profile(), source="everything")


def test_classify_profile_stems_and_bigrams():
    corpus = _corpus({"d1": "running libraries"})
    tc = build_tokenized_corpus(corpus, classify_profile())
    surface = [tc.vocab.decode(t) for t in tc.docs[0]]
    assert surface == ["run", "librari", "run_librari"]


def test_token_order_is_preserved():
    corpus = _corpus({"d1": "cherry apple banana apple"})
    tc = build_tokenized_corpus(corpus, topic_profile(stopwords=frozenset()))
    assert [tc.vocab.decode(t) for t in tc.docs[0]] == \
        ["cherry", "apple", "banana", "apple"]


def test_no_stopword_variant():
    raw = no_stopword_variant(topic_profile())
    assert raw.stopwords == frozenset()
    assert raw.name == "topic-raw"
