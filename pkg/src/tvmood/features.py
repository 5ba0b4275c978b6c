"""Classifier input representations: per-document summary statistics and
lexicon-restricted term-count vectors.

The summary representation carries five statistics (min, max, mean, sd,
median) per affect dimension plus four stylistic counts, nineteen features
in all. Statistics are computed over the frequency-weighted multiset of
matched-term values: a term counted three times contributes its lexicon
value three times. The mean therefore agrees exactly with
:func:`tvmood.affect.score_counts`, the sd is the weighted population sd,
and the median is the weighted median (lower-middle element when the total
weight is even). A document with no lexicon matches gets missing values for
all fifteen affect statistics; the stylistic counts are always present.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Optional

from .corpus import Corpus, Document
from .lexicon import AffectLexicon

# Canonical feature order for dense vectors and CSV export.
FEATURE_NAMES = (
    "valence_min",
    "valence_max",
    "valence_mean",
    "valence_sd",
    "valence_median",
    "arousal_min",
    "arousal_max",
    "arousal_mean",
    "arousal_sd",
    "arousal_median",
    "dominance_min",
    "dominance_max",
    "dominance_mean",
    "dominance_sd",
    "dominance_median",
    "num_words",
    "num_unique_words",
    "num_unique_anew_words",
    "max_word_frequency",
)

# Sparse term -> count map restricted to the lexicon vocabulary.
VsmVector = dict[str, int]


@dataclass(frozen=True, slots=True)
class DimensionStats:
    """Weighted summary statistics of one affect dimension."""

    min: float
    max: float
    mean: float
    sd: float
    median: float


@dataclass(frozen=True, slots=True)
class MetaFeatureVector:
    """The nineteen-feature document summary.

    The three affect slots are None when the document shares no term with
    the lexicon.
    """

    valence: Optional[DimensionStats]
    arousal: Optional[DimensionStats]
    dominance: Optional[DimensionStats]
    num_words: int
    num_unique_words: int
    num_unique_anew_words: int
    max_word_frequency: int


def _weighted_stats(pairs: list[tuple[float, int]]) -> DimensionStats:
    """Stats over a weighted multiset given as (value, weight) pairs."""
    total = sum(weight for _, weight in pairs)
    low = min(value for value, _ in pairs)
    high = max(value for value, _ in pairs)
    mean = math.fsum(value * weight for value, weight in pairs) / total
    # the true mean lies within [low, high]; clamp float dust
    mean = min(max(mean, low), high)
    variance = math.fsum(weight * (value - mean) ** 2 for value, weight in pairs) / total
    sd = math.sqrt(variance) if variance > 0 else 0.0

    # Weighted median: the element at 1-based position ceil(total/2) of the
    # expanded multiset, i.e. the lower-middle element for even totals.
    target = (total + 1) // 2
    accumulated = 0
    median = pairs[0][0]
    for value, weight in sorted(pairs):
        accumulated += weight
        if accumulated >= target:
            median = value
            break
    return DimensionStats(low, high, mean, sd, median)


def extract_meta(doc: Document, lexicon: AffectLexicon) -> MetaFeatureVector:
    """Build the summary-statistics representation of one document."""
    matched = [
        (count, entry)
        for term, count in doc.term_counts.items()
        if (entry := lexicon.lookup(term)) is not None
    ]
    num_words = doc.total_tokens
    num_unique_words = len(doc.term_counts)
    max_word_frequency = max(doc.term_counts.values(), default=0)

    if not matched:
        return MetaFeatureVector(
            valence=None,
            arousal=None,
            dominance=None,
            num_words=num_words,
            num_unique_words=num_unique_words,
            num_unique_anew_words=0,
            max_word_frequency=max_word_frequency,
        )

    stats = {}
    for dim in ("valence", "arousal", "dominance"):
        pairs = [(getattr(entry, dim).mean, count) for count, entry in matched]
        stats[dim] = _weighted_stats(pairs)
    return MetaFeatureVector(
        valence=stats["valence"],
        arousal=stats["arousal"],
        dominance=stats["dominance"],
        num_words=num_words,
        num_unique_words=num_unique_words,
        num_unique_anew_words=len(matched),
        max_word_frequency=max_word_frequency,
    )


def extract_vsm(doc: Document, lexicon: AffectLexicon) -> VsmVector:
    """Restrict the document's term counts to the lexicon vocabulary."""
    return {
        term: count for term, count in doc.term_counts.items() if term in lexicon
    }


def fuse(meta: MetaFeatureVector) -> list[Optional[float]]:
    """Flatten a summary vector into the canonical 19-slot dense layout.

    Order: valence (min, max, mean, sd, median), then arousal, then
    dominance, then the four stylistic counts. Missing affect statistics
    stay None so classifiers can skip them.
    """
    dense: list[Optional[float]] = []
    for stats in (meta.valence, meta.arousal, meta.dominance):
        if stats is None:
            dense.extend([None] * 5)
        else:
            dense.extend([stats.min, stats.max, stats.mean, stats.sd, stats.median])
    dense.extend(
        [
            float(meta.num_words),
            float(meta.num_unique_words),
            float(meta.num_unique_anew_words),
            float(meta.max_word_frequency),
        ]
    )
    return dense


def features_to_csv(corpus: Corpus, lexicon: AffectLexicon) -> str:
    """Feature-matrix CSV: ``id,genre`` plus the 19 canonical features.

    Missing values (affect statistics of unmatched documents, absent genre)
    serialize as empty fields.
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(("id", "genre") + FEATURE_NAMES)
    for doc in corpus.documents:
        dense = fuse(extract_meta(doc, lexicon))
        row = [doc.id, doc.genre if doc.genre is not None else ""]
        for index, value in enumerate(dense):
            if value is None:
                row.append("")
            elif index >= 15:
                row.append(str(int(value)))
            else:
                row.append(repr(value))
        writer.writerow(row)
    return buffer.getvalue()
