"""Command line pipeline: ingest, topics, analyze, train, predict, eval.

Every run resolves its settings from defaults <- --config file <- explicit
flags, materializes any missing seeds, and writes the effective
``runconfig.json`` next to its outputs so the run can be reproduced
byte-for-byte from that file alone.

Exit codes: 0 success, 1 usage/configuration error, 2 data error.
"""

from __future__ import annotations

import csv
import json
import logging
import secrets
import sys
from pathlib import Path

import click

from . import analytics, classify, lda, report, synthetic
from .corpus import Corpus, load_corpus
from .errors import ConfigError, DataError
from .preprocess import (
    PreprocessProfile,
    build_tokenized_corpus,
    classify_profile,
    load_stopwords,
    no_stopword_variant,
    topic_profile,
)

log = logging.getLogger(__name__)

CONFIG_VERSION = 1


def default_config() -> dict:
    return {
        "version": CONFIG_VERSION,
        "paths": {"text_dir": None, "metadata_file": None, "model_file": None},
        "lda": {"k": 5, "alpha": 10.0, "beta": 0.01, "iterations": 1000,
                "alpha_per_topic": False, "seed": None},
        "classify": {"train_ratio": 0.7, "c": 1.0, "stratified": False,
                     "population": "test", "seed": None, "source": "body",
                     "tags_file": None},
        "analytics": {"keywords_file": None, "keywords": None, "window": 5,
                      "segments": 10, "top_n": 25, "include_stopwords": False},
        "profiles": {"stopwords_file": None, "min_token_len": 1},
        "synth": {"docs": 263, "topics": 5, "words_per_topic": 40,
                  "doc_len_min": 60, "doc_len_max": 120, "purity": 0.85,
                  "missing_advisor": 0, "missing_department": 0},
    }


def _merge(base: dict, overlay: dict) -> None:
    for key, value in overlay.items():
        if isinstance(value, dict) and isinstance(base.get(key), dict):
            _merge(base[key], value)
        elif value is not None:
            base[key] = value


def resolve_config(ctx_obj: dict, overrides: dict) -> dict:
    """defaults <- config file <- global --seed <- explicit flags."""
    cfg = default_config()
    config_file = ctx_obj.get("config_file")
    if config_file:
        try:
            loaded = json.loads(Path(config_file).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config file {config_file}: {exc}") from exc
        if not isinstance(loaded, dict):
            raise ConfigError(f"config file {config_file} must hold a JSON object")
        _merge(cfg, loaded)
    if ctx_obj.get("seed") is not None:
        cfg["lda"]["seed"] = ctx_obj["seed"]
        cfg["classify"]["seed"] = ctx_obj["seed"]
    _merge(cfg, overrides)
    # Seeds are mandatory in the persisted config so runs stay auditable.
    for section in ("lda", "classify"):
        if cfg[section]["seed"] is None:
            cfg[section]["seed"] = secrets.randbits(32)
    return cfg


def write_runconfig(out_dir: Path, command: str, cfg: dict,
                    sections: tuple[str, ...]) -> Path:
    """Persist the sections this command actually used.

    Staged runs share one out-dir, so the file is merged cumulatively: a
    later `train` must not clobber the `lda` section a `topics` run wrote.
    """
    path = out_dir / "runconfig.json"
    persisted: dict = {}
    if path.exists():
        try:
            persisted = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError):
            persisted = {}
        if not isinstance(persisted, dict):
            persisted = {}
    persisted["version"] = CONFIG_VERSION
    persisted["command"] = command
    for section in sections:
        persisted[section] = cfg[section]
    path.write_text(json.dumps(persisted, indent=2, sort_keys=True) + "\n",
                    encoding="utf-8")
    return path


def _out_dir(ctx_obj: dict) -> Path:
    out = Path(ctx_obj.get("out_dir") or "out")
    out.mkdir(parents=True, exist_ok=True)
    return out


def _require_paths(cfg: dict) -> tuple[Path, Path]:
    text_dir = cfg["paths"].get("text_dir")
    metadata = cfg["paths"].get("metadata_file")
    if not text_dir or not metadata:
        raise ConfigError("--text-dir and --metadata are required "
                          "(directly or via --config)")
    cfg["paths"]["text_dir"] = str(Path(text_dir).resolve())
    cfg["paths"]["metadata_file"] = str(Path(metadata).resolve())
    return Path(text_dir), Path(metadata)


def _load_corpus(cfg: dict) -> Corpus:
    text_dir, metadata = _require_paths(cfg)
    corpus = load_corpus(text_dir, metadata)
    if len(corpus) == 0:
        raise DataError(f"no documents found: {text_dir} and {metadata} "
                        "share no document ids")
    return corpus


def _stopwords(cfg: dict):
    path = cfg["profiles"].get("stopwords_file")
    if path is None:
        return None
    try:
        return load_stopwords(Path(path))
    except OSError as exc:
        raise ConfigError(f"cannot read stopword file {path}: {exc}") from exc


def _topic_profile(cfg: dict) -> PreprocessProfile:
    return topic_profile(stopwords=_stopwords(cfg),
                         min_token_len=int(cfg["profiles"]["min_token_len"]))


def _classify_profile(cfg: dict) -> PreprocessProfile:
    return classify_profile(stopwords=_stopwords(cfg),
                            min_token_len=int(cfg["profiles"]["min_token_len"]))


def _lda_config(cfg: dict) -> lda.LdaConfig:
    section = cfg["lda"]
    return lda.LdaConfig(
        k=int(section["k"]),
        alpha=float(section["alpha"]),
        beta=float(section["beta"]),
        iterations=int(section["iterations"]),
        seed=int(section["seed"]),
        alpha_per_topic=bool(section["alpha_per_topic"]),
    )


def _load_tags_file(path: Path) -> dict[str, str]:
    """Read doc -> tag from a CSV with Doc and Tag columns (doc_topics.csv works)."""
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames is None or not {"Doc", "Tag"} <= set(reader.fieldnames):
                raise DataError(f"tags file {path} needs 'Doc' and 'Tag' columns")
            return {row["Doc"]: row["Tag"] for row in reader}
    except OSError as exc:
        raise DataError(f"cannot read tags file {path}: {exc}") from exc


def _resolve_tags(cfg: dict, out_dir: Path, topics_dir: str | None) -> dict[str, str]:
    """Tags from --tags/config, else a prior topics run's doc_topics.csv.

    The path actually used is written back to the config so a re-run from
    runconfig.json reads the same file.
    """
    tags_file = cfg["classify"].get("tags_file")
    if not tags_file:
        candidate = Path(topics_dir) if topics_dir else out_dir
        doc_topics = candidate / "doc_topics.csv"
        if not doc_topics.exists():
            raise ConfigError(
                "no tags available: pass --tags FILE or --topics-dir pointing "
                f"at a prior topics run (doc_topics.csv not found in {candidate})")
        tags_file = doc_topics
    tags_file = Path(tags_file).resolve()
    cfg["classify"]["tags_file"] = str(tags_file)
    return _load_tags_file(tags_file)


def _read_keyword_file(path: Path) -> list[str]:
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise ConfigError(f"cannot read keywords file {path}: {exc}") from exc
    words = []
    for line in lines:
        line = line.strip()
        if line and not line.startswith("#"):
            words.append(line)
    return words


def _resolve_keywords(cfg: dict, out_dir: Path, topics_dir: str | None) -> list[str]:
    """Resolution order: --keywords file, persisted list, config file, then
    the union of top-5 words per topic from a prior topics run.

    The resolved list is written back to the config for reproducible re-runs.
    """
    section = cfg["analytics"]
    if section.get("keywords_file"):
        keywords_file = Path(section["keywords_file"]).resolve()
        section["keywords_file"] = str(keywords_file)
        words = _read_keyword_file(keywords_file)
    elif section.get("keywords"):
        words = [str(w) for w in section["keywords"]]
    else:
        candidate = Path(topics_dir) if topics_dir else out_dir
        topic_words = candidate / "topic_words.csv"
        if not topic_words.exists():
            raise ConfigError(
                "no keywords available: pass --keywords FILE or --topics-dir "
                f"pointing at a prior topics run (topic_words.csv not found in "
                f"{candidate})")
        words = []
        with open(topic_words, encoding="utf-8", newline="") as fh:
            for row in csv.DictReader(fh):
                if int(row["Rank"]) <= 5 and row["Term"] not in words:
                    words.append(row["Term"])
    if not words:
        raise ConfigError("keyword list is empty")
    section["keywords"] = words
    return words


@click.group()
@click.option("--config", "config_file", type=click.Path(), default=None,
              help="JSON run configuration to start from.")
@click.option("--seed", type=int, default=None,
              help="Seed for every seeded stage (overrides config seeds).")
@click.option("--out-dir", type=click.Path(), default=None,
              help="Output directory (default: ./out).")
@click.pass_context
def cli(ctx, config_file, seed, out_dir):
    """Topic modeling, word analytics, and tag prediction for text corpora."""
    ctx.obj = {"config_file": config_file, "seed": seed, "out_dir": out_dir}


def corpus_options(fn):
    fn = click.option("--text-dir", type=click.Path(), default=None,
                      help="Directory of <id>.txt documents.")(fn)
    fn = click.option("--metadata", type=click.Path(), default=None,
                      help="JSON-lines metadata sidecar.")(fn)
    return fn


def profile_options(fn):
    fn = click.option("--stopwords", "stopwords_file", type=click.Path(),
                      default=None, help="Stop word list override (one per line).")(fn)
    fn = click.option("--min-token-len", type=int, default=None,
                      help="Minimum surviving token length.")(fn)
    return fn


@cli.command()
@corpus_options
@profile_options
@click.pass_context
def ingest(ctx, text_dir, metadata, stopwords_file, min_token_len):
    """Load the corpus and print a summary."""
    cfg = resolve_config(ctx.obj, {
        "paths": {"text_dir": text_dir, "metadata_file": metadata},
        "profiles": {"stopwords_file": stopwords_file, "min_token_len": min_token_len},
    })
    corpus = _load_corpus(cfg)
    missing_advisor = sum(1 for d in corpus if not d.meta.advisor)
    missing_department = sum(1 for d in corpus if not d.meta.department)
    click.echo(f"{len(corpus)} documents; {missing_advisor} missing advisor; "
               f"{missing_department} missing department")
    for profile, source in ((_topic_profile(cfg), "body"),
                            (_classify_profile(cfg), "body")):
        tc = build_tokenized_corpus(corpus, profile, source=source)
        click.echo(f"{profile.name} profile: {tc.total_tokens} tokens, "
                   f"{len(tc.vocab)} terms")
    out_dir = _out_dir(ctx.obj)
    write_runconfig(out_dir, "ingest", cfg, sections=("paths", "profiles"))


@cli.command()
@corpus_options
@profile_options
@click.option("--k", type=int, default=None, help="Number of topics.")
@click.option("--alpha", type=float, default=None,
              help="Total document-topic concentration.")
@click.option("--alpha-per-topic", is_flag=True, default=None,
              help="Interpret --alpha as the per-topic value instead of the total.")
@click.option("--beta", type=float, default=None, help="Topic-word smoothing.")
@click.option("--iterations", type=int, default=None, help="Gibbs sweeps.")
@click.option("--no-timestamp", is_flag=True, default=False,
              help="Omit the timestamp from report.html.")
@click.pass_context
def topics(ctx, text_dir, metadata, stopwords_file, min_token_len, k, alpha,
           alpha_per_topic, beta, iterations, no_timestamp):
    """Fit the topic model and emit doc_topics.csv, topic_words.csv, report.html."""
    cfg = resolve_config(ctx.obj, {
        "paths": {"text_dir": text_dir, "metadata_file": metadata},
        "profiles": {"stopwords_file": stopwords_file, "min_token_len": min_token_len},
        "lda": {"k": k, "alpha": alpha, "beta": beta, "iterations": iterations,
                "alpha_per_topic": alpha_per_topic},
    })
    corpus = _load_corpus(cfg)
    tc = build_tokenized_corpus(corpus, _topic_profile(cfg), source="body")
    model = lda.fit(tc, _lda_config(cfg))
    out_dir = _out_dir(ctx.obj)
    report.write_doc_topics_csv(out_dir / "doc_topics.csv", model)
    report.write_topic_words_csv(out_dir / "topic_words.csv", model)
    titles = {d.meta.id: d.meta.title for d in corpus}
    html_text = report.render_topics_html(model, titles, timestamp=not no_timestamp)
    (out_dir / "report.html").write_text(html_text, encoding="utf-8")
    report.topic_proportions_figure(model, out_dir / "topic_proportions.png")
    write_runconfig(out_dir, "topics", cfg, sections=("paths", "profiles", "lda"))
    tags = lda.dominant_tags(model)
    counts = {t: tags.count(t) for t in sorted(set(tags))}
    click.echo(f"fitted {model.config.k} topics on {len(corpus)} documents "
               f"(seed {model.config.seed})")
    click.echo("tag counts: " + ", ".join(f"{t}={n}" for t, n in counts.items()))
    click.echo(f"outputs in {out_dir}: doc_topics.csv, topic_words.csv, "
               "report.html, topic_proportions.png")


@cli.command()
@corpus_options
@profile_options
@click.option("--keywords", "keywords_file", type=click.Path(), default=None,
              help="Keyword list, one per line ('*' suffix for prefix match).")
@click.option("--topics-dir", type=click.Path(), default=None,
              help="Prior topics run to take default keywords from.")
@click.option("--window", type=int, default=None,
              help="Context words on each side of a keyword.")
@click.option("--segments", type=int, default=None,
              help="Positional segments per document in trend.csv.")
@click.option("--top-n", type=int, default=None,
              help="Collocate neighbors kept per keyword.")
@click.option("--include-stopwords", is_flag=True, default=None,
              help="Count collocates on the raw (unfiltered) token stream.")
@click.pass_context
def analyze(ctx, text_dir, metadata, stopwords_file, min_token_len,
            keywords_file, topics_dir, window, segments, top_n,
            include_stopwords):
    """Trend and collocate-network analysis over bibliographic text."""
    cfg = resolve_config(ctx.obj, {
        "paths": {"text_dir": text_dir, "metadata_file": metadata},
        "profiles": {"stopwords_file": stopwords_file, "min_token_len": min_token_len},
        "analytics": {"keywords_file": keywords_file, "window": window,
                      "segments": segments, "top_n": top_n,
                      "include_stopwords": include_stopwords},
    })
    out_dir = _out_dir(ctx.obj)
    section = cfg["analytics"]
    words = _resolve_keywords(cfg, out_dir, topics_dir)
    queries = [analytics.TermQuery(w) for w in words]

    corpus = _load_corpus(cfg)
    profile = _topic_profile(cfg)
    tc = build_tokenized_corpus(corpus, profile, source="bibliographic")
    n_segments = int(section["segments"])
    trends = [analytics.trend(tc, q, segments=n_segments) for q in queries]

    colloc_tc = tc
    if section["include_stopwords"]:
        colloc_tc = build_tokenized_corpus(
            corpus, no_stopword_variant(profile), source="bibliographic")
    graph = analytics.collocates(colloc_tc, queries,
                                 window=int(section["window"]),
                                 top_n=int(section["top_n"]))
    counts = analytics.keyword_counts(colloc_tc, queries)

    report.write_trend_csv(out_dir / "trend.csv", trends, n_segments)
    (out_dir / "collocates.dot").write_text(analytics.to_dot(graph), encoding="utf-8")
    (out_dir / "collocates.json").write_text(
        json.dumps(analytics.to_json_dict(graph), indent=2) + "\n", encoding="utf-8")
    report.write_keywords_csv(out_dir / "keywords.csv", counts, graph)
    report.trend_figure(trends, out_dir / "trend.png")
    write_runconfig(out_dir, "analyze", cfg,
                    sections=("paths", "profiles", "analytics"))
    click.echo(f"analyzed {len(queries)} keyword(s) over {len(corpus)} documents "
               f"(window {section['window']})")
    click.echo(f"outputs in {out_dir}: trend.csv, collocates.dot, "
               "collocates.json, keywords.csv, trend.png")


@cli.command()
@corpus_options
@profile_options
@click.option("--tags", "tags_file", type=click.Path(), default=None,
              help="CSV with Doc and Tag columns (defaults to a topics run).")
@click.option("--topics-dir", type=click.Path(), default=None,
              help="Prior topics run to take tags from.")
@click.option("--ratio", "train_ratio", type=float, default=None,
              help="Training fraction of the corpus.")
@click.option("--c", "c_value", type=float, default=None,
              help="SVM regularization trade-off.")
@click.option("--stratified", is_flag=True, default=None,
              help="Preserve per-tag proportions in the split.")
@click.option("--population", type=click.Choice(["test", "all"]), default=None,
              help="Evaluation population for the report.")
@click.option("--classify-source", type=click.Choice(["body", "bibliographic"]),
              default=None, help="Text fed to the classify profile.")
@click.pass_context
def train(ctx, text_dir, metadata, stopwords_file, min_token_len, tags_file,
          topics_dir, train_ratio, c_value, stratified, population,
          classify_source):
    """Split, train the one-vs-rest SVM, and evaluate it."""
    cfg = resolve_config(ctx.obj, {
        "paths": {"text_dir": text_dir, "metadata_file": metadata},
        "profiles": {"stopwords_file": stopwords_file, "min_token_len": min_token_len},
        "classify": {"train_ratio": train_ratio, "c": c_value,
                     "stratified": stratified, "population": population,
                     "source": classify_source, "tags_file": tags_file},
    })
    out_dir = _out_dir(ctx.obj)
    section = cfg["classify"]
    corpus = _load_corpus(cfg)
    tags = _resolve_tags(cfg, out_dir, topics_dir)

    profile = _classify_profile(cfg)
    tc = build_tokenized_corpus(corpus, profile, source=section["source"])
    features = classify.vectorize(tc)
    tag_list = None
    if section["stratified"]:
        missing = [d for d in features.doc_ids if d not in tags]
        if missing:
            raise DataError(f"{len(missing)} document(s) have no tag: "
                            + ", ".join(missing[:5]))
        tag_list = [tags[d] for d in features.doc_ids]
    plan = classify.split(features.doc_ids, float(section["train_ratio"]),
                          int(section["seed"]), tags=tag_list,
                          stratified=bool(section["stratified"]))
    model = classify.train(features, tags, plan, c=float(section["c"]),
                           seed=int(section["seed"]))
    eval_report = classify.evaluate(model, features, tags, plan,
                                    population=section["population"])

    classify.save_model(out_dir / "model.json", model, features, plan,
                        source=section["source"], profile=profile)
    eval_text = classify.format_eval_text(eval_report)
    (out_dir / "eval.txt").write_text(eval_text, encoding="utf-8")
    with open(out_dir / "eval.csv", "w", encoding="utf-8", newline="") as fh:
        csv.writer(fh).writerows(classify.eval_csv_rows(eval_report))
    report.confusion_figure(eval_report, out_dir / "confusion.png")
    cfg["paths"]["model_file"] = str((out_dir / "model.json").resolve())
    write_runconfig(out_dir, "train", cfg,
                    sections=("paths", "profiles", "classify"))
    click.echo(f"train {len(plan.train_ids)} / test {len(plan.test_ids)} documents; "
               f"classes: {', '.join(model.classes)}")
    click.echo(eval_text.splitlines()[0])
    click.echo(f"outputs in {out_dir}: model.json, eval.txt, eval.csv, confusion.png")


def _require_model(cfg: dict, model_file: str | None) -> Path:
    path = model_file or cfg["paths"].get("model_file")
    if not path:
        raise ConfigError("--model is required (directly or via --config)")
    cfg["paths"]["model_file"] = str(Path(path).resolve())
    return Path(path)


@cli.command()
@click.option("--model", "model_file", type=click.Path(), default=None,
              help="Model file written by train.")
@click.option("--text-dir", type=click.Path(), default=None,
              help="Directory of new <id>.txt documents to tag.")
@click.option("--metadata", type=click.Path(), default=None,
              help="Metadata sidecar (required for bibliographic-source models).")
@click.pass_context
def predict(ctx, model_file, text_dir, metadata):
    """Tag new text files with a stored model."""
    cfg = resolve_config(ctx.obj, {
        "paths": {"text_dir": text_dir, "metadata_file": metadata},
    })
    bundle = classify.load_model(_require_model(cfg, model_file))
    text_dir = cfg["paths"].get("text_dir")
    if not text_dir:
        raise ConfigError("--text-dir is required (directly or via --config)")
    cfg["paths"]["text_dir"] = str(Path(text_dir).resolve())
    text_dir = Path(text_dir)
    if not text_dir.is_dir():
        raise DataError(f"corpus directory not readable: {text_dir}")

    if bundle.source == "bibliographic":
        metadata = cfg["paths"].get("metadata_file")
        if not metadata:
            raise ConfigError("this model was trained on bibliographic text; "
                              "pass --metadata")
        corpus = load_corpus(text_dir, Path(metadata))
        if len(corpus) == 0:
            raise DataError("no documents found")
        doc_ids = corpus.ids
        tc = build_tokenized_corpus(corpus, bundle.profile, source="bibliographic")
        token_docs = [[tc.vocab.decode(t) for t in doc] for doc in tc.docs]
    else:
        paths = sorted(text_dir.glob("*.txt"))
        if not paths:
            raise DataError(f"no .txt documents in {text_dir}")
        doc_ids = [p.stem for p in paths]
        token_docs = []
        for path in paths:
            try:
                text = path.read_text(encoding="utf-8")
            except (OSError, UnicodeDecodeError) as exc:
                raise DataError(f"cannot read document {path}: {exc}") from exc
            token_docs.append(bundle.profile.process(text))

    rows = classify.vectorize_tokens(bundle, token_docs)
    predicted = classify.predict_many(bundle.model, rows)
    out_dir = _out_dir(ctx.obj)
    report.write_csv(out_dir / "predictions.csv", ["Doc", "Tag"],
                     list(zip(doc_ids, predicted)))
    write_runconfig(out_dir, "predict", cfg, sections=("paths",))
    click.echo(f"tagged {len(doc_ids)} document(s); wrote {out_dir / 'predictions.csv'}")


@cli.command("eval")
@corpus_options
@click.option("--model", "model_file", type=click.Path(), default=None,
              help="Model file written by train.")
@click.option("--tags", "tags_file", type=click.Path(), default=None,
              help="CSV with Doc and Tag columns (defaults to a topics run).")
@click.option("--topics-dir", type=click.Path(), default=None,
              help="Prior topics run to take tags from.")
@click.option("--population", type=click.Choice(["test", "all"]), default=None,
              help="Evaluation population for the report.")
@click.pass_context
def eval_cmd(ctx, text_dir, metadata, model_file, tags_file, topics_dir,
             population):
    """Re-evaluate a stored model against the corpus it was trained on."""
    cfg = resolve_config(ctx.obj, {
        "paths": {"text_dir": text_dir, "metadata_file": metadata},
        "classify": {"population": population, "tags_file": tags_file},
    })
    out_dir = _out_dir(ctx.obj)
    bundle = classify.load_model(_require_model(cfg, model_file))
    corpus = _load_corpus(cfg)
    tags = _resolve_tags(cfg, out_dir, topics_dir)
    tc = build_tokenized_corpus(corpus, bundle.profile, source=bundle.source)
    features = classify.vectorize(tc)
    if features.vocab_hash != bundle.vocab_hash:
        raise DataError("vocabulary hash mismatch between model and corpus; "
                        "the model was trained on different documents or "
                        "preprocessing")
    eval_report = classify.evaluate(bundle.model, features, tags, bundle.plan,
                                    population=cfg["classify"]["population"])
    eval_text = classify.format_eval_text(eval_report)
    (out_dir / "eval.txt").write_text(eval_text, encoding="utf-8")
    with open(out_dir / "eval.csv", "w", encoding="utf-8", newline="") as fh:
        csv.writer(fh).writerows(classify.eval_csv_rows(eval_report))
    report.confusion_figure(eval_report, out_dir / "confusion.png")
    write_runconfig(out_dir, "eval", cfg, sections=("paths", "classify"))
    click.echo(eval_text.splitlines()[0])
    click.echo(f"outputs in {out_dir}: eval.txt, eval.csv, confusion.png")


@cli.command()
@click.option("--docs", type=int, default=None, help="Number of documents.")
@click.option("--topics", "n_topics", type=int, default=None, help="Planted topics.")
@click.option("--words-per-topic", type=int, default=None)
@click.option("--doc-len-min", type=int, default=None)
@click.option("--doc-len-max", type=int, default=None)
@click.option("--purity", type=float, default=None,
              help="Share of each document drawn from its planted topic.")
@click.option("--missing-advisor", type=int, default=None)
@click.option("--missing-department", type=int, default=None)
@click.pass_context
def synth(ctx, docs, n_topics, words_per_topic, doc_len_min, doc_len_max,
          purity, missing_advisor, missing_department):
    """Generate a planted-topic demo corpus under the output directory."""
    cfg = resolve_config(ctx.obj, {
        "synth": {"docs": docs, "topics": n_topics,
                  "words_per_topic": words_per_topic,
                  "doc_len_min": doc_len_min, "doc_len_max": doc_len_max,
                  "purity": purity, "missing_advisor": missing_advisor,
                  "missing_department": missing_department},
    })
    out_dir = _out_dir(ctx.obj)
    section = cfg["synth"]
    seed = int(cfg["lda"]["seed"])
    corpus = synthetic.generate_planted_corpus(
        out_dir,
        n_docs=int(section["docs"]),
        n_topics=int(section["topics"]),
        words_per_topic=int(section["words_per_topic"]),
        doc_len_range=(int(section["doc_len_min"]), int(section["doc_len_max"])),
        purity=float(section["purity"]),
        n_missing_advisor=int(section["missing_advisor"]),
        n_missing_department=int(section["missing_department"]),
        seed=seed,
    )
    rows = sorted(corpus.planted.items())
    report.write_csv(out_dir / "planted_tags.csv", ["Doc", "Topic"], rows)
    cfg["paths"]["text_dir"] = str(corpus.text_dir.resolve())
    cfg["paths"]["metadata_file"] = str(corpus.metadata_file.resolve())
    write_runconfig(out_dir, "synth", cfg, sections=("paths", "lda", "synth"))
    click.echo(f"wrote {section['docs']} documents to {corpus.text_dir} "
               f"(metadata: {corpus.metadata_file}, seed {seed})")


def main(argv=None) -> int:
    """Entry point with the documented exit-code mapping."""
    logging.basicConfig(level=logging.INFO, format="%(levelname)s: %(message)s",
                        stream=sys.stderr)
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.exceptions.Exit as exc:
        return int(exc.exit_code)
    except click.UsageError as exc:
        exc.show(file=sys.stderr)
        return 1
    except click.ClickException as exc:
        exc.show(file=sys.stderr)
        return 1
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
