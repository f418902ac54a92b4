"""Tag prediction: TF-IDF features, split validation, one-vs-rest linear SVM.

Each class gets its own max-margin separator minimizing

    0.5 * ||w||^2 + C * sum_i hinge(y_i * (w . x_i + b))

by full-batch subgradient descent with a backtracking line search, so the
objective is non-increasing across accepted steps and training is
deterministic.  Evaluation reports a predicted-by-true confusion matrix with
per-class precision/recall and Cohen's kappa.
"""

from __future__ import annotations

import hashlib
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy import sparse

from .errors import ConfigError, DataError
from .preprocess import PreprocessProfile, TokenizedCorpus

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class FeatureMatrix:
    doc_ids: tuple[str, ...]
    terms: tuple[str, ...]
    rows: sparse.csr_matrix          # L2-normalized TF-IDF, one row per doc
    idf: np.ndarray
    zero_rows: tuple[str, ...] = ()  # docs that produced an all-zero vector

    @property
    def vocab_hash(self) -> str:
        return vocabulary_hash(self.terms)

    def row_index(self, doc_id: str) -> int:
        return self.doc_ids.index(doc_id)


def vocabulary_hash(terms) -> str:
    digest = hashlib.sha256()
    for term in terms:
        digest.update(term.encode("utf-8"))
        digest.update(b"\x00")
    return digest.hexdigest()


def vectorize(tc: TokenizedCorpus) -> FeatureMatrix:
    """TF-IDF rows: tf = raw count, idf = ln(D/df), then L2 normalization."""
    n_docs = len(tc)
    n_terms = len(tc.vocab)
    df = np.zeros(n_terms, dtype=np.int64)
    doc_counts = []
    for doc in tc.docs:
        counts = {}
        for token in doc:
            counts[token] = counts.get(token, 0) + 1
        doc_counts.append(counts)
        for token in counts:
            df[token] += 1
    with np.errstate(divide="ignore"):
        idf = np.where(df > 0, np.log(n_docs / np.maximum(df, 1)), 0.0)

    indptr = [0]
    indices = []
    data = []
    for counts in doc_counts:
        for token in sorted(counts):
            indices.append(token)
            data.append(counts[token] * idf[token])
        indptr.append(len(indices))
    rows = sparse.csr_matrix(
        (np.asarray(data, dtype=np.float64),
         np.asarray(indices, dtype=np.int32),
         np.asarray(indptr, dtype=np.int32)),
        shape=(n_docs, n_terms),
    )
    norms = np.sqrt(rows.multiply(rows).sum(axis=1)).A1
    scale = np.where(norms > 0, 1.0 / np.where(norms > 0, norms, 1.0), 0.0)
    rows = sparse.diags(scale) @ rows
    rows = sparse.csr_matrix(rows)

    zero_rows = tuple(tc.doc_ids[i] for i in np.nonzero(norms == 0)[0])
    if zero_rows:
        log.warning("%d document(s) vectorized to the zero vector: %s",
                    len(zero_rows), ", ".join(zero_rows))
    return FeatureMatrix(doc_ids=tc.doc_ids, terms=tc.vocab.terms, rows=rows,
                         idf=idf, zero_rows=zero_rows)


@dataclass(frozen=True)
class SplitPlan:
    seed: int
    train_ratio: float
    train_ids: tuple[str, ...]
    test_ids: tuple[str, ...]


def split(doc_ids, train_ratio: float, seed: int, tags=None,
          stratified: bool = False) -> SplitPlan:
    """Seeded train/test partition; |train| = floor(train_ratio * D).

    Stratified mode preserves per-tag proportions via largest-remainder
    allocation; tags present only once fall back to plain shuffling.
    """
    doc_ids = list(doc_ids)
    n = len(doc_ids)
    if not 0.0 < train_ratio < 1.0:
        raise ConfigError(f"train_ratio must be in (0, 1), got {train_ratio}")
    if n < 2:
        raise ConfigError(f"need at least 2 documents to split, got {n}")
    n_train = int(train_ratio * n)
    rng = np.random.default_rng(seed)

    if stratified:
        if tags is None:
            raise ConfigError("stratified split requires per-document tags")
        by_tag: dict[str, list[str]] = {}
        for doc_id, tag in zip(doc_ids, tags):
            by_tag.setdefault(tag, []).append(doc_id)
        singles = sorted(t for t, members in by_tag.items() if len(members) == 1)
        if singles:
            log.warning("tag(s) with a single document fall back to plain "
                        "shuffling: %s", ", ".join(singles))
        base = {t: int(train_ratio * len(m)) for t, m in by_tag.items()}
        remainder = {t: train_ratio * len(m) - base[t] for t, m in by_tag.items()}
        short = n_train - sum(base.values())
        for t in sorted(by_tag, key=lambda t: (-remainder[t], t))[:short]:
            base[t] += 1
        train = []
        for t in sorted(by_tag):
            members = by_tag[t]
            order = rng.permutation(len(members))
            train.extend(members[i] for i in order[:base[t]])
    else:
        order = rng.permutation(n)
        train = [doc_ids[i] for i in order[:n_train]]

    train_set = set(train)
    test = [d for d in doc_ids if d not in train_set]
    return SplitPlan(seed=seed, train_ratio=train_ratio,
                     train_ids=tuple(sorted(train)), test_ids=tuple(sorted(test)))


@dataclass(frozen=True)
class SvmModel:
    classes: tuple[str, ...]          # alphabetical
    weights: np.ndarray               # (n_classes, n_terms)
    bias: np.ndarray                  # (n_classes,)
    c: float
    constant: bool = False            # single-class training set
    objective_history: dict = field(default_factory=dict, repr=False)


def _hinge_objective(x, y, w, b, c):
    margins = y * (x @ w + b)
    return 0.5 * float(w @ w) + c * float(np.maximum(0.0, 1.0 - margins).sum())


def _best_bias(decision_wo_bias, y):
    """Exact bias minimizing the total hinge loss for fixed w.

    The loss is convex piecewise linear in b with one breakpoint per point
    at y_i - u_i; its slope increases by one at every breakpoint, starting
    from -(number of positives), so the minimum sits between the n_pos-th
    and (n_pos+1)-th smallest breakpoints.
    """
    breakpoints = np.sort(y - decision_wo_bias)
    n_pos = int((y > 0).sum())
    if n_pos == 0:
        return float(breakpoints[0]) - 1.0
    if n_pos == len(breakpoints):
        return float(breakpoints[-1]) + 1.0
    return float(breakpoints[n_pos - 1] + breakpoints[n_pos]) / 2.0


def _optimize_hinge(x, y, c, max_epochs=1000, rel_tol=1e-6, gap_tol=1e-10):
    """Sequential minimal optimization over the dual, maximal-violating pair.

    Works on a precomputed Gram matrix, so it targets corpora of up to a few
    thousand training documents.  The reported history holds the primal
    objective of every accepted (w, b) incumbent, which is non-increasing by
    construction; the bias is chosen exactly for each candidate w.
    """
    n = x.shape[0]
    gram = np.asarray((x @ x.T).todense(), dtype=np.float64)
    alpha = np.zeros(n)
    w = np.zeros(x.shape[1])
    b = 0.0
    obj = _hinge_objective(x, y, w, b, c)
    history = [obj]
    best = (w, b)

    for _ in range(max_epochs):
        # refresh the dual gradient from alpha to stop numerical drift
        grad = (gram @ (alpha * y)) * y - 1.0
        converged = False
        for _ in range(n):
            vals = -y * grad
            up = ((y > 0) & (alpha < c)) | ((y < 0) & (alpha > 0))
            low = ((y < 0) & (alpha < c)) | ((y > 0) & (alpha > 0))
            if not up.any() or not low.any():
                converged = True
                break
            i = int(np.argmax(np.where(up, vals, -np.inf)))
            j = int(np.argmin(np.where(low, vals, np.inf)))
            gap = vals[i] - vals[j]
            if gap < gap_tol:
                converged = True
                break
            quad = max(gram[i, i] + gram[j, j] - 2.0 * gram[i, j], 1e-12)
            t_max_i = c - alpha[i] if y[i] > 0 else alpha[i]
            t_max_j = alpha[j] if y[j] > 0 else c - alpha[j]
            t = min(gap / quad, t_max_i, t_max_j)
            alpha[i] += y[i] * t
            alpha[j] -= y[j] * t
            grad += y * t * (gram[:, i] - gram[:, j])
        w_cand = x.T @ (alpha * y)
        b_cand = _best_bias(x @ w_cand, y)
        obj_cand = _hinge_objective(x, y, w_cand, b_cand, c)
        if obj_cand < obj:
            accepted_drop = obj - obj_cand
            w, b, obj = w_cand, b_cand, obj_cand
            best = (w, b)
            history.append(obj)
            if accepted_drop <= rel_tol * max(abs(history[-2]), 1.0):
                break
        if converged:
            break
    w, b = best
    return w, b, history


def train(features: FeatureMatrix, tags: dict[str, str], plan: SplitPlan,
          c: float = 1.0, seed: int = 0) -> SvmModel:
    """One-vs-rest training over plan.train_ids; tags maps doc id -> tag."""
    if c <= 0:
        raise ConfigError(f"C must be positive, got {c}")
    missing = [d for d in plan.train_ids if d not in tags]
    if missing:
        raise DataError(f"{len(missing)} training document(s) have no tag: "
                        + ", ".join(missing[:5]))
    row_of = {d: i for i, d in enumerate(features.doc_ids)}
    try:
        train_rows = [row_of[d] for d in plan.train_ids]
    except KeyError as exc:
        raise DataError(f"split references unknown document {exc.args[0]!r}") from exc
    x = features.rows[train_rows]
    y_tags = [tags[d] for d in plan.train_ids]
    classes = tuple(sorted(set(y_tags)))

    if len(classes) == 1:
        log.warning("training set has a single tag %r; model degenerates to a "
                    "constant predictor", classes[0])
        return SvmModel(classes=classes,
                        weights=np.zeros((1, x.shape[1])),
                        bias=np.zeros(1), c=c, constant=True)

    del seed  # optimizer is deterministic; kept for interface stability
    weights = np.zeros((len(classes), x.shape[1]))
    bias = np.zeros(len(classes))
    history = {}
    for i, cls in enumerate(classes):
        y = np.where(np.asarray(y_tags) == cls, 1.0, -1.0)
        weights[i], bias[i], history[cls] = _optimize_hinge(x, y, c)
    return SvmModel(classes=classes, weights=weights, bias=bias, c=c,
                    objective_history=history)


def decision_values(model: SvmModel, x) -> np.ndarray:
    """Per-class decision values for one row or a matrix of rows."""
    scores = x @ model.weights.T
    if sparse.issparse(scores):
        scores = scores.toarray()
    return np.asarray(scores) + model.bias


def predict(model: SvmModel, x) -> str:
    """Tag with the largest decision value; ties go to alphabetical order."""
    scores = decision_values(model, x).reshape(-1)
    return model.classes[int(np.argmax(scores))]


def predict_many(model: SvmModel, x) -> list[str]:
    scores = decision_values(model, x)
    return [model.classes[i] for i in np.argmax(scores, axis=1)]


@dataclass(frozen=True)
class EvalReport:
    classes: tuple[str, ...]
    confusion: np.ndarray             # rows = predicted, cols = true
    accuracy: float
    precision: tuple[float, ...]
    recall: tuple[float, ...]
    kappa: float | None               # None when expected agreement is 1
    population: str
    warnings: tuple[str, ...] = ()


def cohen_kappa(confusion: np.ndarray) -> float | None:
    """Chance-corrected agreement; None when the marginals force p_e = 1."""
    n = confusion.sum()
    if n == 0:
        raise ConfigError("empty confusion matrix")
    p_o = confusion.trace() / n
    p_e = float(confusion.sum(axis=1) @ confusion.sum(axis=0)) / (n * n)
    if 1.0 - p_e == 0.0:
        return None
    return (p_o - p_e) / (1.0 - p_e)


def evaluate(model: SvmModel, features: FeatureMatrix, tags: dict[str, str],
             plan: SplitPlan, population: str = "test") -> EvalReport:
    """Score predictions against true tags over the test set or all documents."""
    if population == "test":
        doc_ids = plan.test_ids
    elif population == "all":
        doc_ids = features.doc_ids
    else:
        raise ConfigError(f"unknown evaluation population: {population!r}")
    if not doc_ids:
        raise ConfigError("evaluation population is empty")
    missing = [d for d in doc_ids if d not in tags]
    if missing:
        raise DataError(f"{len(missing)} evaluation document(s) have no tag: "
                        + ", ".join(missing[:5]))
    row_of = {d: i for i, d in enumerate(features.doc_ids)}
    rows = [row_of[d] for d in doc_ids]
    y_true = [tags[d] for d in doc_ids]
    y_pred = predict_many(model, features.rows[rows])
    return report_from_labels(y_pred, y_true, extra_classes=model.classes,
                              population=population)


def report_from_labels(y_pred, y_true, extra_classes=(),
                       population: str = "labels") -> EvalReport:
    """Confusion matrix, precision/recall, and kappa from label sequences."""
    y_pred = list(y_pred)
    y_true = list(y_true)
    if len(y_pred) != len(y_true) or not y_true:
        raise ConfigError("prediction and truth label sequences must be "
                          "non-empty and equally long")
    classes = tuple(sorted(set(extra_classes) | set(y_true) | set(y_pred)))
    index = {cls: i for i, cls in enumerate(classes)}
    confusion = np.zeros((len(classes), len(classes)), dtype=np.int64)
    for pred_tag, true_tag in zip(y_pred, y_true):
        confusion[index[pred_tag], index[true_tag]] += 1

    warnings = []
    row_sums = confusion.sum(axis=1)
    col_sums = confusion.sum(axis=0)
    diag = confusion.diagonal()
    precision = []
    recall = []
    for i, cls in enumerate(classes):
        if row_sums[i] == 0:
            precision.append(0.0)
            warnings.append(f"class {cls!r} was never predicted; precision set to 0")
        else:
            precision.append(diag[i] / row_sums[i])
        if col_sums[i] == 0:
            recall.append(0.0)
            warnings.append(f"class {cls!r} has no true documents; recall set to 0")
        else:
            recall.append(diag[i] / col_sums[i])
    kappa = cohen_kappa(confusion)
    if kappa is None:
        warnings.append("kappa undefined: expected agreement is 1 "
                        "(single-class marginals)")
    return EvalReport(
        classes=classes,
        confusion=confusion,
        accuracy=float(diag.sum() / confusion.sum()),
        precision=tuple(precision),
        recall=tuple(recall),
        kappa=kappa,
        population=population,
        warnings=tuple(warnings),
    )


def _display(cls: str) -> str:
    return f"Topic {cls}"


def format_eval_text(report: EvalReport) -> str:
    """Tab-separated evaluation report: kappa line, then predicted-by-true matrix."""
    kappa = "undefined" if report.kappa is None else f"{report.kappa:.3f}"
    lines = [f"kappa: {kappa}"]
    header = [""] + [f"true {_display(c)}" for c in report.classes] + ["class precision"]
    lines.append("\t".join(header))
    for i, cls in enumerate(report.classes):
        row = [f"pred. {_display(cls)}"]
        row += [str(int(v)) for v in report.confusion[i]]
        row.append(f"{report.precision[i] * 100:.2f}%")
        lines.append("\t".join(row))
    recall_row = ["class recall"] + [f"{r * 100:.2f}%" for r in report.recall]
    lines.append("\t".join(recall_row))
    for warning in report.warnings:
        lines.append(f"warning: {warning}")
    return "\n".join(lines) + "\n"


def eval_csv_rows(report: EvalReport) -> list[list[str]]:
    kappa = "undefined" if report.kappa is None else f"{report.kappa:.3f}"
    rows = [[f"kappa: {kappa}"]]
    rows.append([""] + [f"true {_display(c)}" for c in report.classes]
                + ["class precision"])
    for i, cls in enumerate(report.classes):
        rows.append([f"pred. {_display(cls)}"]
                    + [str(int(v)) for v in report.confusion[i]]
                    + [f"{report.precision[i] * 100:.2f}%"])
    rows.append(["class recall"] + [f"{r * 100:.2f}%" for r in report.recall] + [""])
    return rows


MODEL_FORMAT = "etdmine-svm"
MODEL_VERSION = 1


def save_model(path: Path, model: SvmModel, features: FeatureMatrix,
               plan: SplitPlan, source: str, profile: PreprocessProfile) -> None:
    """Persist the decision functions plus everything predict/eval need.

    The preprocessing profile travels with the model (stop word removal
    happens before n-gram formation, so predict must replicate it exactly).
    """
    payload = {
        "format": MODEL_FORMAT,
        "version": MODEL_VERSION,
        "classes": list(model.classes),
        "c": model.c,
        "constant": model.constant,
        "vocab_hash": features.vocab_hash,
        "source": source,
        "profile": {
            "name": profile.name,
            "lowercase": profile.lowercase,
            "min_token_len": profile.min_token_len,
            "stopwords": sorted(profile.stopwords),
            "stem": profile.stem,
            "ngram_max": profile.ngram_max,
        },
        "vocab": list(features.terms),
        "idf": features.idf.tolist(),
        "weights": model.weights.tolist(),
        "bias": model.bias.tolist(),
        "split": {
            "seed": plan.seed,
            "train_ratio": plan.train_ratio,
            "train_ids": list(plan.train_ids),
            "test_ids": list(plan.test_ids),
        },
    }
    Path(path).write_text(json.dumps(payload), encoding="utf-8")


@dataclass(frozen=True)
class ModelBundle:
    model: SvmModel
    terms: tuple[str, ...]
    idf: np.ndarray
    plan: SplitPlan
    source: str
    profile: PreprocessProfile
    vocab_hash: str


def load_model(path: Path) -> ModelBundle:
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise DataError(f"cannot read model file {path}: {exc}") from exc
    if payload.get("format") != MODEL_FORMAT:
        raise DataError(f"{path} is not a model file")
    if payload.get("version") != MODEL_VERSION:
        raise DataError(f"unsupported model version {payload.get('version')!r}")
    model = SvmModel(
        classes=tuple(payload["classes"]),
        weights=np.asarray(payload["weights"], dtype=np.float64),
        bias=np.asarray(payload["bias"], dtype=np.float64),
        c=float(payload["c"]),
        constant=bool(payload.get("constant", False)),
    )
    split_info = payload["split"]
    plan = SplitPlan(
        seed=int(split_info["seed"]),
        train_ratio=float(split_info["train_ratio"]),
        train_ids=tuple(split_info["train_ids"]),
        test_ids=tuple(split_info["test_ids"]),
    )
    profile_info = payload["profile"]
    profile = PreprocessProfile(
        name=str(profile_info["name"]),
        lowercase=bool(profile_info["lowercase"]),
        min_token_len=int(profile_info["min_token_len"]),
        stopwords=frozenset(profile_info["stopwords"]),
        stem=bool(profile_info["stem"]),
        ngram_max=int(profile_info["ngram_max"]),
    )
    return ModelBundle(
        model=model,
        terms=tuple(payload["vocab"]),
        idf=np.asarray(payload["idf"], dtype=np.float64),
        plan=plan,
        source=payload.get("source", "body"),
        profile=profile,
        vocab_hash=payload["vocab_hash"],
    )


def vectorize_tokens(bundle: ModelBundle, token_docs: list[list[str]]) -> sparse.csr_matrix:
    """TF-IDF rows for new documents under a stored model's vocabulary.

    Terms outside the stored vocabulary are dropped.
    """
    index = {t: i for i, t in enumerate(bundle.terms)}
    indptr = [0]
    indices = []
    data = []
    for doc in token_docs:
        counts: dict[int, int] = {}
        for term in doc:
            term_id = index.get(term)
            if term_id is not None:
                counts[term_id] = counts.get(term_id, 0) + 1
        for term_id in sorted(counts):
            indices.append(term_id)
            data.append(counts[term_id] * bundle.idf[term_id])
        indptr.append(len(indices))
    rows = sparse.csr_matrix(
        (np.asarray(data, dtype=np.float64),
         np.asarray(indices, dtype=np.int32),
         np.asarray(indptr, dtype=np.int32)),
        shape=(len(token_docs), len(bundle.terms)),
    )
    norms = np.sqrt(rows.multiply(rows).sum(axis=1)).A1
    scale = np.where(norms > 0, 1.0 / np.where(norms > 0, norms, 1.0), 0.0)
    return sparse.csr_matrix(sparse.diags(scale) @ rows)
