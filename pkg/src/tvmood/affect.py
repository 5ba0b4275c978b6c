"""Frequency-weighted affect scoring for documents, channels, and time windows.

Every score is a weighted mean over the terms a text shares with the
lexicon: each matched term contributes its lexicon mean once per
occurrence. Channel and window scores pool term counts across documents
first and score the pooled map, so longer documents weigh more, and the
reported spread is the weighted population standard deviation of the
term-value distribution (divide by total matched tokens, not n-1).
"""

from __future__ import annotations

import csv
import io
import math
from collections import Counter, defaultdict
from dataclasses import dataclass
from datetime import datetime, timedelta
from typing import Mapping, Optional

from .corpus import Corpus, format_timestamp
from .lexicon import AffectEntry, AffectLexicon

DIMENSIONS = ("valence", "arousal", "dominance")

SERIES_CSV_HEADER = (
    "channel",
    "window_start",
    "valence",
    "arousal",
    "dominance",
    "valence_sd",
    "arousal_sd",
    "dominance_sd",
    "matched_tokens",
)


class NoSignalError(ValueError):
    """No token matched the lexicon, so the weighted mean is undefined."""


@dataclass(frozen=True, slots=True)
class AffectScore:
    """Weighted-mean affect of one text, channel, or window."""

    valence: float
    arousal: float
    dominance: float
    matched_distinct_terms: int
    matched_token_total: int


@dataclass(frozen=True, slots=True)
class AffectSpread:
    """Per-dimension weighted population standard deviation."""

    valence: float
    arousal: float
    dominance: float


@dataclass(frozen=True, slots=True)
class SeriesPoint:
    """One window of an affect series; ``score is None`` marks a gap."""

    start: datetime
    score: Optional[AffectScore]
    spread: Optional[AffectSpread]

    @property
    def is_gap(self) -> bool:
        return self.score is None


@dataclass(frozen=True, slots=True)
class AffectSeries:
    channel: str
    window_length: timedelta
    points: tuple[SeriesPoint, ...]

    def __post_init__(self) -> None:
        starts = [point.start for point in self.points]
        if any(b <= a for a, b in zip(starts, starts[1:])):
            raise ValueError("series points must be strictly ordered by start")


def _matched_entries(
    term_counts: Mapping[str, int], lexicon: AffectLexicon
) -> list[tuple[int, AffectEntry]]:
    return [
        (count, entry)
        for term, count in term_counts.items()
        if (entry := lexicon.lookup(term)) is not None
    ]


def _score_pooled(
    term_counts: Mapping[str, int], lexicon: AffectLexicon
) -> tuple[AffectScore, AffectSpread]:
    matched = _matched_entries(term_counts, lexicon)
    if not matched:
        raise NoSignalError("no term matched the lexicon")
    total = sum(count for count, _ in matched)
    means = []
    sds = []
    for dim in DIMENSIONS:
        values = [(count, getattr(entry, dim).mean) for count, entry in matched]
        mean = math.fsum(count * value for count, value in values) / total
        # the true mean lies within the matched value range; clamp float dust
        low = min(value for _, value in values)
        high = max(value for _, value in values)
        mean = min(max(mean, low), high)
        variance = (
            math.fsum(count * (value - mean) ** 2 for count, value in values) / total
        )
        means.append(mean)
        sds.append(math.sqrt(variance) if variance > 0 else 0.0)
    score = AffectScore(means[0], means[1], means[2], len(matched), total)
    return score, AffectSpread(sds[0], sds[1], sds[2])


def score_counts(term_counts: Mapping[str, int], lexicon: AffectLexicon) -> AffectScore:
    """Score one term-count map.

    For each dimension the score is sum(count * lexicon mean) / sum(count)
    over the terms present in both the map and the lexicon. Raises
    :class:`NoSignalError` when nothing matches.
    """
    score, _ = _score_pooled(term_counts, lexicon)
    return score


def score_counts_with_spread(
    term_counts: Mapping[str, int], lexicon: AffectLexicon
) -> tuple[AffectScore, AffectSpread]:
    """Like :func:`score_counts` but also returns the weighted spread."""
    return _score_pooled(term_counts, lexicon)


def score_channel(
    corpus: Corpus, channel: str, lexicon: AffectLexicon
) -> tuple[AffectScore, AffectSpread]:
    """Score one channel by pooling term counts across all its documents.

    Pooling happens before scoring, so this is not an average of per-document
    scores: documents contribute in proportion to their matched token counts.
    """
    pooled: Counter[str] = Counter()
    found = False
    for doc in corpus.documents:
        if doc.channel == channel:
            found = True
            pooled.update(doc.term_counts)
    if not found:
        raise NoSignalError(f"no documents for channel {channel!r}")
    try:
        return _score_pooled(pooled, lexicon)
    except NoSignalError:
        raise NoSignalError(
            f"channel {channel!r} has no terms matching the lexicon"
        ) from None


def score_windows(
    corpus: Corpus,
    channel: str,
    lexicon: AffectLexicon,
    window_length: timedelta,
    origin: datetime,
) -> AffectSeries:
    """Score a channel over consecutive half-open time windows.

    Documents are bucketed into windows ``[origin + k*length, origin +
    (k+1)*length)`` and each occupied window is scored from its pooled
    counts. Windows between the first and last occupied ones that have no
    documents, or no lexicon matches, appear as gap points rather than
    fabricated values. A channel with no documents yields an empty series.
    """
    if window_length <= timedelta(0):
        raise ValueError("window_length must be positive")
    docs = corpus.by_channel(channel)
    for doc in docs:
        if doc.timestamp is None:
            raise ValueError(
                f"document {doc.id!r} has no timestamp; windowed scoring "
                f"requires one"
            )
    if not docs:
        return AffectSeries(channel, window_length, ())

    buckets: dict[int, Counter[str]] = defaultdict(Counter)
    for doc in docs:
        index = (doc.timestamp - origin) // window_length
        buckets[index].update(doc.term_counts)

    points = []
    for index in range(min(buckets), max(buckets) + 1):
        start = origin + index * window_length
        counts = buckets.get(index)
        if counts is None:
            points.append(SeriesPoint(start, None, None))
            continue
        try:
            score, spread = _score_pooled(counts, lexicon)
        except NoSignalError:
            points.append(SeriesPoint(start, None, None))
            continue
        points.append(SeriesPoint(start, score, spread))
    return AffectSeries(channel, window_length, tuple(points))


def series_to_csv(series_list: list[AffectSeries]) -> str:
    """Render affect series as CSV; gap windows emit empty value fields."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(SERIES_CSV_HEADER)
    for series in series_list:
        for point in series.points:
            row: list[str] = [series.channel, format_timestamp(point.start)]
            if point.is_gap:
                row.extend([""] * 7)
            else:
                row.extend(
                    [
                        repr(point.score.valence),
                        repr(point.score.arousal),
                        repr(point.score.dominance),
                        repr(point.spread.valence),
                        repr(point.spread.arousal),
                        repr(point.spread.dominance),
                        str(point.score.matched_token_total),
                    ]
                )
            writer.writerow(row)
    return buffer.getvalue()
