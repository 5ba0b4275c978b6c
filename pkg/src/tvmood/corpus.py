"""Transcript documents: tokenization, term counting, loading, filtering.

The interchange format is JSON lines, one object per document. Required
fields: ``id``, ``channel``, ``timestamp`` (ISO-8601, UTC). Exactly one of
``text`` (raw transcript, tokenized at load time) or ``term_counts``
(pre-counted token map) must be present, matching the load mode. ``genre``
is optional; unlabeled documents are allowed and are only excluded by
genre-based operations.
"""

from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Iterable, Optional, TextIO

# Token characters are letters or digits (underscore is a separator) plus
# apostrophes; everything else splits.
_TOKEN_RE = re.compile(r"(?:[^\W_]|')+")


class CorpusError(ValueError):
    """Raised for malformed corpus data."""


def tokenize(text: str) -> list[str]:
    """Lowercase and split into tokens.

    Splits on every character that is not a letter, digit, or apostrophe,
    strips leading/trailing apostrophes, and drops empty tokens.
    """
    tokens = []
    for token in _TOKEN_RE.findall(text.lower()):
        token = token.strip("'")
        if token:
            tokens.append(token)
    return tokens


def count_terms(tokens: Iterable[str]) -> tuple[dict[str, int], int]:
    """Count occurrences per distinct token; return (counts, total)."""
    counts = Counter(tokens)
    return dict(counts), sum(counts.values())


def parse_timestamp(value: str) -> datetime:
    """Parse an ISO-8601 timestamp to an aware UTC datetime (seconds precision).

    A trailing ``Z`` is accepted; naive timestamps are taken as UTC.
    """
    text = value.strip()
    if text.endswith(("Z", "z")):
        text = text[:-1] + "+00:00"
    moment = datetime.fromisoformat(text)
    if moment.tzinfo is None:
        moment = moment.replace(tzinfo=timezone.utc)
    return moment.astimezone(timezone.utc).replace(microsecond=0)


def format_timestamp(moment: datetime) -> str:
    """Render an aware datetime as ISO-8601 UTC with a ``Z`` suffix."""
    return moment.astimezone(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


@dataclass(frozen=True, slots=True)
class Document:
    """One transcript item with per-term counts.

    Immutable after construction. ``timestamp`` may be None for documents
    built programmatically; time-windowed operations reject such documents,
    everything else accepts them.
    """

    id: str
    channel: str
    term_counts: dict[str, int]
    total_tokens: int
    genre: Optional[str] = None
    timestamp: Optional[datetime] = None

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("document id is empty")
        for term, count in self.term_counts.items():
            if not isinstance(count, int) or isinstance(count, bool) or count < 1:
                raise ValueError(
                    f"document {self.id!r}: term {term!r} has non-positive "
                    f"count {count!r}"
                )
        if self.total_tokens != sum(self.term_counts.values()):
            raise ValueError(
                f"document {self.id!r}: total_tokens {self.total_tokens} does "
                f"not equal the sum of term counts"
            )
        if self.timestamp is not None:
            if self.timestamp.tzinfo is None:
                raise ValueError(f"document {self.id!r}: timestamp is naive")
            normalized = self.timestamp.astimezone(timezone.utc).replace(microsecond=0)
            object.__setattr__(self, "timestamp", normalized)

    @classmethod
    def from_text(
        cls,
        id: str,
        channel: str,
        text: str,
        genre: Optional[str] = None,
        timestamp: Optional[datetime] = None,
    ) -> "Document":
        counts, total = count_terms(tokenize(text))
        return cls(id, channel, counts, total, genre, timestamp)

    @classmethod
    def from_counts(
        cls,
        id: str,
        channel: str,
        term_counts: dict[str, int],
        genre: Optional[str] = None,
        timestamp: Optional[datetime] = None,
    ) -> "Document":
        """Build from a pre-counted map; tokens are lowercased and merged."""
        merged: dict[str, int] = {}
        for term, count in term_counts.items():
            lowered = term.lower()
            merged[lowered] = merged.get(lowered, 0) + count
        return cls(id, channel, merged, sum(merged.values()), genre, timestamp)


@dataclass(frozen=True, slots=True)
class Corpus:
    """Ordered, immutable collection of documents with distinct ids."""

    documents: tuple[Document, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.documents, tuple):
            object.__setattr__(self, "documents", tuple(self.documents))
        seen: set[str] = set()
        for doc in self.documents:
            if doc.id in seen:
                raise CorpusError(f"duplicate document id {doc.id!r}")
            seen.add(doc.id)

    @property
    def label_set(self) -> set[str]:
        return {doc.genre for doc in self.documents if doc.genre is not None}

    def __len__(self) -> int:
        return len(self.documents)

    def __iter__(self):
        return iter(self.documents)

    def channels(self) -> list[str]:
        """Distinct channel names in sorted order."""
        return sorted({doc.channel for doc in self.documents})

    def by_channel(self, channel: str) -> list[Document]:
        return [doc for doc in self.documents if doc.channel == channel]


def load_corpus(source: str | TextIO | Iterable[str], mode: str) -> Corpus:
    """Load a JSON-lines corpus in ``text`` or ``counts`` mode.

    In ``text`` mode each record's ``text`` field is tokenized and counted;
    in ``counts`` mode the ``term_counts`` map is used as given, except that
    tokens are lowercased (counts merge on collision). Raises
    :class:`CorpusError` with a line number for malformed records and names
    the offending id for duplicates.
    """
    if mode not in ("text", "counts"):
        raise ValueError(f"unknown corpus mode {mode!r}; use 'text' or 'counts'")
    lines: Iterable[str]
    if isinstance(source, str):
        lines = source.splitlines()
    else:
        lines = source

    documents: list[Document] = []
    seen: set[str] = set()
    for line_no, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CorpusError(f"line {line_no}: invalid JSON ({exc.msg})") from None
        if not isinstance(record, dict):
            raise CorpusError(f"line {line_no}: record is not a JSON object")

        for key in ("id", "channel", "timestamp"):
            if key not in record:
                raise CorpusError(f"line {line_no}: missing required field {key!r}")
            if not isinstance(record[key], str):
                raise CorpusError(f"line {line_no}: field {key!r} must be a string")
        if "text" in record and "term_counts" in record:
            raise CorpusError(
                f"line {line_no}: record has both 'text' and 'term_counts'"
            )

        doc_id = record["id"]
        if doc_id in seen:
            raise CorpusError(f"duplicate document id {doc_id!r}")
        seen.add(doc_id)

        try:
            timestamp = parse_timestamp(record["timestamp"])
        except ValueError:
            raise CorpusError(
                f"line {line_no}: invalid timestamp {record['timestamp']!r}"
            ) from None

        genre = record.get("genre")
        if genre is not None and not isinstance(genre, str):
            raise CorpusError(f"line {line_no}: field 'genre' must be a string")

        if mode == "text":
            if "text" not in record:
                raise CorpusError(f"line {line_no}: missing required field 'text'")
            if not isinstance(record["text"], str):
                raise CorpusError(f"line {line_no}: field 'text' must be a string")
            document = Document.from_text(
                doc_id, record["channel"], record["text"], genre, timestamp
            )
        else:
            if "term_counts" not in record:
                raise CorpusError(
                    f"line {line_no}: missing required field 'term_counts'"
                )
            raw_counts = record["term_counts"]
            if not isinstance(raw_counts, dict):
                raise CorpusError(
                    f"line {line_no}: field 'term_counts' must be an object"
                )
            for term, count in raw_counts.items():
                if not isinstance(count, int) or isinstance(count, bool) or count < 1:
                    raise CorpusError(
                        f"line {line_no}: term {term!r} has non-positive "
                        f"count {count!r}"
                    )
            document = Document.from_counts(
                doc_id, record["channel"], raw_counts, genre, timestamp
            )
        documents.append(document)
    return Corpus(tuple(documents))


def load_corpus_file(path: str, mode: str) -> Corpus:
    """Read and parse a JSON-lines corpus file (UTF-8)."""
    with open(path, encoding="utf-8") as handle:
        return load_corpus(handle, mode)


def corpus_to_jsonl(corpus: Corpus) -> str:
    """Render a corpus to the JSON-lines interchange format.

    Emits ``term_counts`` records with sorted keys, so identical corpora
    produce byte-identical output. Every document must carry a timestamp.
    """
    lines = []
    for doc in corpus.documents:
        if doc.timestamp is None:
            raise CorpusError(
                f"document {doc.id!r} has no timestamp; the JSON-lines format "
                f"requires one"
            )
        record: dict[str, object] = {
            "id": doc.id,
            "channel": doc.channel,
            "timestamp": format_timestamp(doc.timestamp),
        }
        if doc.genre is not None:
            record["genre"] = doc.genre
        record["term_counts"] = dict(sorted(doc.term_counts.items()))
        lines.append(json.dumps(record, separators=(",", ":"), sort_keys=False))
    return "\n".join(lines) + ("\n" if lines else "")


def filter_min_genre_support(corpus: Corpus, min_programs: int) -> Corpus:
    """Keep documents whose genre occurs in at least ``min_programs`` documents.

    Unlabeled documents are dropped; relative order is preserved. Idempotent.
    """
    if min_programs < 1:
        raise ValueError(f"min_programs must be >= 1, got {min_programs}")
    support = Counter(doc.genre for doc in corpus.documents if doc.genre is not None)
    kept = tuple(
        doc
        for doc in corpus.documents
        if doc.genre is not None and support[doc.genre] >= min_programs
    )
    return Corpus(kept)
