"""Topic modeling by collapsed Gibbs sampling.

Tokens carry individual topic assignments; each sweep resamples every token
from the collapsed conditional

    p(z = k) ~ (n_dk + alpha_k) * (n_kw + beta) / (n_k + V*beta)

where the counts exclude the token being resampled.  Point estimates come
from the final sweep's counts; topics are ranked by corpus-wide probability
and labeled a, b, c, ... in descending order.
"""

from __future__ import annotations

import logging
import string
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln

from .errors import ConfigError
from .preprocess import TokenizedCorpus

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class LdaConfig:
    k: int = 5
    alpha: float = 10.0          # total concentration unless alpha_per_topic
    beta: float = 0.01
    iterations: int = 1000
    seed: int = 0
    alpha_per_topic: bool = False

    def __post_init__(self):
        if self.k < 2:
            raise ConfigError(f"number of topics must be >= 2, got {self.k}")
        if self.alpha <= 0 or self.beta <= 0:
            raise ConfigError("alpha and beta must be positive")
        if self.iterations < 1:
            raise ConfigError(f"iterations must be >= 1, got {self.iterations}")

    @property
    def alpha_k(self) -> float:
        """Per-topic document-topic concentration."""
        return self.alpha if self.alpha_per_topic else self.alpha / self.k

    @property
    def alpha_total(self) -> float:
        return self.alpha_k * self.k


def gibbs_conditional(d: int, w: int, n_dk: np.ndarray, n_kw: np.ndarray,
                      n_k: np.ndarray, alpha_k: float, beta: float) -> np.ndarray:
    """Unnormalized K-vector of topic weights; counts must exclude the token."""
    v = n_kw.shape[1]
    return (n_dk[d] + alpha_k) * (n_kw[:, w] + beta) / (n_k + v * beta)


def _sweep_kernel(tokens, doc_of, z, n_dk, n_kw, n_k, alpha_k, beta, u):
    # Sequential scan; same formula as gibbs_conditional, inlined for speed.
    k_topics = n_k.shape[0]
    vbeta = n_kw.shape[1] * beta
    cum = np.empty(k_topics)
    for i in range(tokens.shape[0]):
        w = tokens[i]
        d = doc_of[i]
        k = z[i]
        n_dk[d, k] -= 1
        n_kw[k, w] -= 1
        n_k[k] -= 1
        total = 0.0
        for kk in range(k_topics):
            total += (n_dk[d, kk] + alpha_k) * (n_kw[kk, w] + beta) / (n_k[kk] + vbeta)
            cum[kk] = total
        r = u[i] * total
        new_k = 0
        while cum[new_k] <= r and new_k < k_topics - 1:
            new_k += 1
        z[i] = new_k
        n_dk[d, new_k] += 1
        n_kw[new_k, w] += 1
        n_k[new_k] += 1


try:
    import numba

    _SWEEP = numba.njit(cache=True)(_sweep_kernel)
except ImportError:  # pragma: no cover - numba is a declared dependency
    _SWEEP = _sweep_kernel


class GibbsSampler:
    """Mutable sampling state; :func:`fit` drives it for `iterations` sweeps.

    Exposed so tests and callers can inspect count tables between sweeps.
    """

    def __init__(self, tc: TokenizedCorpus, config: LdaConfig):
        if len(tc) == 0 or tc.total_tokens == 0 or len(tc.vocab) == 0:
            raise ConfigError("cannot fit a topic model on an empty corpus")
        self.config = config
        self.n_docs = len(tc)
        self.n_terms = len(tc.vocab)
        self.tokens = np.fromiter(
            (w for doc in tc.docs for w in doc), dtype=np.int64, count=tc.total_tokens)
        self.doc_of = np.fromiter(
            (d for d, doc in enumerate(tc.docs) for _ in doc),
            dtype=np.int64, count=tc.total_tokens)
        self.rng = np.random.default_rng(config.seed)
        self.z = self.rng.integers(0, config.k, self.tokens.shape[0], dtype=np.int64)
        self.n_dk = np.zeros((self.n_docs, config.k), dtype=np.int64)
        self.n_kw = np.zeros((config.k, self.n_terms), dtype=np.int64)
        self.n_k = np.zeros(config.k, dtype=np.int64)
        np.add.at(self.n_dk, (self.doc_of, self.z), 1)
        np.add.at(self.n_kw, (self.z, self.tokens), 1)
        np.add.at(self.n_k, self.z, 1)
        self.n_d = self.n_dk.sum(axis=1)

    def sweep(self) -> None:
        """Resample every token once, in document/token order."""
        u = self.rng.random(self.tokens.shape[0])
        _SWEEP(self.tokens, self.doc_of, self.z, self.n_dk, self.n_kw,
               self.n_k, self.config.alpha_k, self.config.beta, u)

    def theta(self) -> np.ndarray:
        cfg = self.config
        return (self.n_dk + cfg.alpha_k) / (self.n_d + cfg.alpha_total)[:, None]

    def phi(self) -> np.ndarray:
        cfg = self.config
        return (self.n_kw + cfg.beta) / (self.n_k + self.n_terms * cfg.beta)[:, None]

    def log_likelihood(self) -> float:
        """Joint collapsed log p(w, z) under the current assignments."""
        cfg = self.config
        v = self.n_terms
        word_part = (
            cfg.k * (gammaln(v * cfg.beta) - v * gammaln(cfg.beta))
            + gammaln(self.n_kw + cfg.beta).sum()
            - gammaln(self.n_k + v * cfg.beta).sum()
        )
        topic_part = (
            self.n_docs * (gammaln(cfg.alpha_total) - cfg.k * gammaln(cfg.alpha_k))
            + gammaln(self.n_dk + cfg.alpha_k).sum()
            - gammaln(self.n_d + cfg.alpha_total).sum()
        )
        return float(word_part + topic_part)


@dataclass(frozen=True)
class TopicModel:
    config: LdaConfig
    doc_ids: tuple[str, ...]
    terms: tuple[str, ...]
    z: np.ndarray
    n_dk: np.ndarray
    n_kw: np.ndarray
    n_k: np.ndarray
    theta: np.ndarray
    phi: np.ndarray
    topic_order: tuple[int, ...]
    log_likelihoods: tuple[float, ...] = field(default=(), repr=False)

    @property
    def tags(self) -> list[str]:
        """Tag letters aligned with topic_order (tags[0] <-> topic_order[0])."""
        return [tag_name(p) for p in range(self.config.k)]

    def tag_for_topic(self, k: int) -> str:
        return tag_name(self.topic_order.index(k))

    def topic_for_tag(self, tag: str) -> int:
        return self.topic_order[self.tags.index(tag)]


def tag_name(position: int) -> str:
    """Tag letter for a topic rank: a..z, then aa, ab, ..."""
    letters = string.ascii_lowercase
    name = ""
    position += 1
    while position > 0:
        position, rem = divmod(position - 1, 26)
        name = letters[rem] + name
    return name


def fit(tc: TokenizedCorpus, config: LdaConfig) -> TopicModel:
    """Run `config.iterations` full Gibbs sweeps and take final-state estimates."""
    sampler = GibbsSampler(tc, config)
    lls = []
    for _ in range(config.iterations):
        sampler.sweep()
        lls.append(sampler.log_likelihood())
    theta = sampler.theta()
    mean_theta = theta.mean(axis=0)
    order = sorted(range(config.k), key=lambda k: (-mean_theta[k], k))
    return TopicModel(
        config=config,
        doc_ids=tc.doc_ids,
        terms=tc.vocab.terms,
        z=sampler.z,
        n_dk=sampler.n_dk,
        n_kw=sampler.n_kw,
        n_k=sampler.n_k,
        theta=theta,
        phi=sampler.phi(),
        topic_order=tuple(order),
        log_likelihoods=tuple(lls),
    )


def top_words(model: TopicModel, k: int, n: int = 5) -> list[tuple[str, float]]:
    """The n highest-probability terms of topic k; ties by term id."""
    row = model.phi[k]
    ranked = sorted(range(len(row)), key=lambda w: (-row[w], w))
    return [(model.terms[w], float(row[w])) for w in ranked[:n]]


def representative_docs(model: TopicModel, k: int, n: int = 5) -> list[tuple[str, float]]:
    """The n documents with the largest topic-k proportion; ties by doc id."""
    col = model.theta[:, k]
    ranked = sorted(range(len(col)), key=lambda d: (-col[d], model.doc_ids[d]))
    return [(model.doc_ids[d], float(col[d])) for d in ranked[:n]]


def dominant_tags(model: TopicModel) -> list[str]:
    """Per-document tag letter of the argmax-theta topic.

    Ties go to the topic earliest in topic_order, i.e. the corpus-dominant one.
    """
    tags = []
    for d in range(model.theta.shape[0]):
        best_pos = 0
        best_val = -1.0
        for pos, k in enumerate(model.topic_order):
            val = model.theta[d, k]
            if val > best_val:
                best_val = val
                best_pos = pos
        tags.append(tag_name(best_pos))
    return tags
