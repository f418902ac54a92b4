"""Corpus ingestion: plain-text documents plus a JSON-lines metadata sidecar.

A corpus directory holds one ``<id>.txt`` file per document; the metadata
file holds one JSON object per line with fields: id, title, author, advisor,
department, year, abstract, keywords, subject.  Only ``id`` is mandatory;
records with missing advisor or department are kept.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

from .errors import DataError

log = logging.getLogger(__name__)

METADATA_FIELDS = (
    "id", "title", "author", "advisor", "department",
    "year", "abstract", "keywords", "subject",
)

# Field order used when flattening a record to analysis text.
BIBLIOGRAPHIC_ORDER = (
    "title", "abstract", "keywords", "subject", "author", "advisor", "department",
)


@dataclass(frozen=True)
class DocumentMeta:
    id: str
    title: str = ""
    author: str | None = None
    advisor: str | None = None
    department: str | None = None
    year: int | None = None
    abstract: str | None = None
    keywords: tuple[str, ...] = ()
    subject: str | None = None


@dataclass(frozen=True)
class Document:
    meta: DocumentMeta
    text: str


@dataclass(frozen=True)
class Corpus:
    """Immutable, id-sorted document collection."""

    documents: tuple[Document, ...] = field(default_factory=tuple)

    def __len__(self) -> int:
        return len(self.documents)

    def __iter__(self):
        return iter(self.documents)

    def __getitem__(self, i: int) -> Document:
        return self.documents[i]

    @property
    def ids(self) -> list[str]:
        return [doc.meta.id for doc in self.documents]


def _parse_meta_line(line: str, lineno: int) -> DocumentMeta:
    try:
        record = json.loads(line)
    except json.JSONDecodeError as exc:
        raise DataError(f"malformed metadata line {lineno}: {exc.msg}") from exc
    if not isinstance(record, dict):
        raise DataError(f"malformed metadata line {lineno}: expected an object")
    doc_id = record.get("id")
    if not isinstance(doc_id, str) or not doc_id:
        raise DataError(f"malformed metadata line {lineno}: missing or empty 'id'")
    keywords = record.get("keywords") or []
    if not isinstance(keywords, list):
        raise DataError(f"malformed metadata line {lineno}: 'keywords' must be a list")
    year = record.get("year")
    if year is not None and not isinstance(year, int):
        raise DataError(f"malformed metadata line {lineno}: 'year' must be an integer")

    def opt(name):
        value = record.get(name)
        return value if value is None else str(value)

    return DocumentMeta(
        id=doc_id,
        title=str(record.get("title") or ""),
        author=opt("author"),
        advisor=opt("advisor"),
        department=opt("department"),
        year=year,
        abstract=opt("abstract"),
        keywords=tuple(str(k) for k in keywords),
        subject=opt("subject"),
    )


def read_metadata(metadata_file: Path) -> dict[str, DocumentMeta]:
    """Parse the JSON-lines sidecar; duplicate ids are fatal."""
    metadata_file = Path(metadata_file)
    try:
        raw = metadata_file.read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot read metadata file {metadata_file}: {exc}") from exc
    records: dict[str, DocumentMeta] = {}
    for lineno, line in enumerate(raw.splitlines(), start=1):
        if not line.strip():
            continue
        meta = _parse_meta_line(line, lineno)
        if meta.id in records:
            raise DataError(f"duplicate document id in metadata: {meta.id!r}")
        records[meta.id] = meta
    return records


def load_corpus(text_dir: Path, metadata_file: Path) -> Corpus:
    """Join ``<id>.txt`` files with metadata records into an id-sorted Corpus.

    Documents present in only one source are dropped with a warning; the
    result is the intersection of both id sets.
    """
    text_dir = Path(text_dir)
    if not text_dir.is_dir():
        raise DataError(f"corpus directory not readable: {text_dir}")
    metadata = read_metadata(metadata_file)

    text_ids = {p.stem: p for p in text_dir.glob("*.txt") if p.is_file()}
    text_only = sorted(set(text_ids) - set(metadata))
    meta_only = sorted(set(metadata) - set(text_ids))
    if text_only:
        log.warning("%d document(s) have text but no metadata: %s",
                    len(text_only), ", ".join(text_only))
    if meta_only:
        log.warning("%d metadata record(s) have no text file: %s",
                    len(meta_only), ", ".join(meta_only))

    documents = []
    for doc_id in sorted(set(text_ids) & set(metadata)):
        path = text_ids[doc_id]
        try:
            # newline='' keeps the file contents byte-exact after decoding
            with open(path, encoding="utf-8", newline="") as fh:
                text = fh.read()
        except (OSError, UnicodeDecodeError) as exc:
            raise DataError(f"cannot read document {path}: {exc}") from exc
        documents.append(Document(meta=metadata[doc_id], text=text))
    return Corpus(documents=tuple(documents))


def bibliographic_text(doc: Document) -> str:
    """Space-joined metadata fields in the fixed bibliographic order."""
    meta = doc.meta
    parts: list[str] = []
    for name in BIBLIOGRAPHIC_ORDER:
        value = getattr(meta, name)
        if name == "keywords":
            parts.extend(value)
        elif value:
            parts.append(value)
    return " ".join(parts)
