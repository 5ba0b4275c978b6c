"""Stratified cross-validation and classification metrics.

Metrics are pooled: every document is predicted exactly once by the fold
that holds it out, and TP rate, FP rate, AUC, and the confusion matrix are
computed over the pooled predictions. AUC is the rank-statistic form (pairs
won plus half the ties, over all positive-negative pairs), one class
against the rest, scored by the posterior probability of that class.

Fold shuffling uses Python's Mersenne Twister (``random.Random``) with a
caller-supplied seed, so assignments are reproducible across runs and
platforms.
"""

from __future__ import annotations

import csv
import io
import json
import math
import random
from collections import Counter
from dataclasses import dataclass
from typing import Hashable, Optional, Sequence

from . import classify, features
from .corpus import Corpus
from .lexicon import AffectLexicon

REPRESENTATIONS = ("vsm", "meta")

REPORT_FORMAT_VERSION = 1


@dataclass(frozen=True, slots=True)
class FoldAssignment:
    """Maps each instance key to a fold index in ``[0, k)``."""

    k: int
    assignment: dict[Hashable, int]
    seed: int

    def fold_sizes(self) -> list[int]:
        sizes = [0] * self.k
        for fold in self.assignment.values():
            sizes[fold] += 1
        return sizes


@dataclass(frozen=True, slots=True)
class ClassMetrics:
    label: str
    support: int
    tp_rate: float
    fp_rate: float
    auc: float


@dataclass(frozen=True, slots=True)
class ClassifierConfig:
    """Classifier choice for :func:`run_cv`.

    ``kind`` is ``gaussian`` or ``multinomial``; ``alpha`` is the smoothing
    weight and only applies to the multinomial variant.
    """

    kind: str
    alpha: float = 1.0

    def __post_init__(self) -> None:
        if self.kind not in ("gaussian", "multinomial"):
            raise ValueError(f"unknown classifier kind {self.kind!r}")
        if self.alpha <= 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")


@dataclass(frozen=True, slots=True)
class EvalReport:
    """Cross-validation outcome in the shape of a per-genre results table."""

    class_metrics: tuple[ClassMetrics, ...]
    class_order: tuple[str, ...]
    confusion: tuple[tuple[int, ...], ...]
    weighted_tp_rate: float
    weighted_fp_rate: float
    weighted_auc: float
    config: dict[str, object]


def stratified_folds(
    labels: Sequence[str],
    k: int,
    seed: int,
    ids: Optional[Sequence[Hashable]] = None,
) -> FoldAssignment:
    """Deal instances into k folds, stratified by label.

    Within each class (classes visited in sorted order) the instances are
    shuffled by a seeded RNG and dealt round-robin; the deal pointer starts
    at fold 0 and carries over between classes, which keeps both per-class
    and overall fold sizes within one of each other. Identical
    ``(labels, k, seed)`` always produce the identical assignment.
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if k > len(labels):
        raise ValueError(f"k={k} exceeds the instance count {len(labels)}")
    if ids is None:
        keys: Sequence[Hashable] = range(len(labels))
    else:
        if len(ids) != len(labels):
            raise ValueError("ids and labels have different lengths")
        if len(set(ids)) != len(ids):
            raise ValueError("ids are not distinct")
        keys = ids

    rng = random.Random(seed)
    assignment: dict[Hashable, int] = {}
    pointer = 0
    for label in sorted(set(labels)):
        members = [i for i, value in enumerate(labels) if value == label]
        rng.shuffle(members)
        for position in members:
            assignment[keys[position]] = pointer % k
            pointer += 1
    return FoldAssignment(k=k, assignment=assignment, seed=seed)


def auc_one_vs_rest(scores: Sequence[float], is_positive: Sequence[bool]) -> float:
    """Rank-statistic AUC with half credit for ties.

    Equals the fraction of (positive, negative) pairs where the positive
    outscores the negative, counting ties as half a win. Computed from
    midranks, which is algebraically the same thing.
    """
    if len(scores) != len(is_positive):
        raise ValueError("scores and is_positive have different lengths")
    positives = sum(1 for flag in is_positive if flag)
    negatives = len(is_positive) - positives
    if positives == 0 or negatives == 0:
        raise ValueError("AUC is undefined without both positives and negatives")

    order = sorted(range(len(scores)), key=lambda i: scores[i])
    ranks = [0.0] * len(scores)
    cursor = 0
    while cursor < len(order):
        tie_end = cursor
        while (
            tie_end + 1 < len(order)
            and scores[order[tie_end + 1]] == scores[order[cursor]]
        ):
            tie_end += 1
        midrank = (cursor + tie_end) / 2.0 + 1.0
        for position in range(cursor, tie_end + 1):
            ranks[order[position]] = midrank
        cursor = tie_end + 1

    positive_rank_sum = math.fsum(
        rank for rank, flag in zip(ranks, is_positive) if flag
    )
    return (positive_rank_sum - positives * (positives + 1) / 2.0) / (
        positives * negatives
    )


def confusion_and_rates(
    truth: Sequence[str],
    predicted: Sequence[str],
    class_order: Sequence[str],
) -> tuple[list[list[int]], dict[str, float], dict[str, float]]:
    """Confusion matrix plus one-vs-rest TP and FP rates per class.

    ``matrix[i][j]`` counts instances with true class ``class_order[i]``
    predicted as ``class_order[j]``. A rate whose denominator is zero is
    reported as 0.0.
    """
    if len(truth) != len(predicted):
        raise ValueError("truth and predicted have different lengths")
    index = {label: i for i, label in enumerate(class_order)}
    for label in list(truth) + list(predicted):
        if label not in index:
            raise ValueError(f"label {label!r} is not in class_order")

    size = len(class_order)
    matrix = [[0] * size for _ in range(size)]
    for true_label, predicted_label in zip(truth, predicted):
        matrix[index[true_label]][index[predicted_label]] += 1

    total = len(truth)
    tp_rates: dict[str, float] = {}
    fp_rates: dict[str, float] = {}
    for i, label in enumerate(class_order):
        row_total = sum(matrix[i])
        column_total = sum(matrix[j][i] for j in range(size))
        true_positives = matrix[i][i]
        false_positives = column_total - true_positives
        tp_rates[label] = true_positives / row_total if row_total else 0.0
        rest = total - row_total
        fp_rates[label] = false_positives / rest if rest else 0.0
    return matrix, tp_rates, fp_rates


def _default_config(representation: str) -> ClassifierConfig:
    if representation == "meta":
        return ClassifierConfig(kind="gaussian")
    return ClassifierConfig(kind="multinomial", alpha=1.0)


def run_cv(
    corpus: Corpus,
    lexicon: AffectLexicon,
    representation: str,
    k: int,
    seed: int,
    config: Optional[ClassifierConfig] = None,
) -> EvalReport:
    """Stratified k-fold cross-validation over a fully labeled corpus.

    Each fold trains on the remaining folds and predicts its held-out
    documents; metrics are computed over the pooled predictions. Any
    vocabulary fitting happens inside training (the multinomial vocabulary
    and the dense feature space for Gaussian-on-counts come from training
    folds only), so no information leaks from held-out documents. The
    per-document representations themselves are parameter-free.
    """
    if representation not in REPRESENTATIONS:
        raise ValueError(f"unknown representation {representation!r}")
    if config is None:
        config = _default_config(representation)
    if representation == "meta" and config.kind != "gaussian":
        raise ValueError(
            "the meta representation is real-valued and requires the "
            "gaussian classifier"
        )

    docs = corpus.documents
    unlabeled = [doc.id for doc in docs if doc.genre is None]
    if unlabeled:
        raise ValueError(
            f"corpus contains unlabeled documents (first: {unlabeled[0]!r}); "
            f"filter before evaluating"
        )
    labels = [doc.genre for doc in docs]
    support = Counter(labels)
    for label in sorted(support):
        if support[label] < k:
            raise ValueError(
                f"class {label!r} has support {support[label]} < k={k}"
            )
    class_order = tuple(sorted(support))

    folds = stratified_folds(labels, k, seed, ids=[doc.id for doc in docs])
    fold_of = [folds.assignment[doc.id] for doc in docs]

    # Per-document representations carry no fitted parameters, so they can
    # be extracted once up front without leaking across folds.
    if representation == "meta":
        dense = [features.fuse(features.extract_meta(doc, lexicon)) for doc in docs]
    else:
        sparse = [features.extract_vsm(doc, lexicon) for doc in docs]

    posteriors: list[Optional[classify.Posterior]] = [None] * len(docs)
    for fold in range(k):
        train_idx = [i for i in range(len(docs)) if fold_of[i] != fold]
        test_idx = [i for i in range(len(docs)) if fold_of[i] == fold]
        train_labels = [labels[i] for i in train_idx]

        if representation == "meta":
            model = classify.train_gaussian(
                [dense[i] for i in train_idx], train_labels
            )
            for i in test_idx:
                posteriors[i] = classify.predict_gaussian(model, dense[i])
        elif config.kind == "multinomial":
            model = classify.train_multinomial(
                [sparse[i] for i in train_idx], train_labels, config.alpha
            )
            for i in test_idx:
                posteriors[i] = classify.predict_multinomial(model, sparse[i])
        else:
            # Gaussian over counts: densify on the training vocabulary only;
            # held-out terms outside it are dropped.
            vocabulary = sorted({t for i in train_idx for t in sparse[i]})
            if not vocabulary:
                raise ValueError("empty vocabulary: no training document has any term")

            def densify(vector: dict[str, int]) -> list[float]:
                return [float(vector.get(term, 0)) for term in vocabulary]

            model = classify.train_gaussian(
                [densify(sparse[i]) for i in train_idx], train_labels
            )
            for i in test_idx:
                posteriors[i] = classify.predict_gaussian(model, densify(sparse[i]))

    predicted = [posterior.predicted_label for posterior in posteriors]
    matrix, tp_rates, fp_rates = confusion_and_rates(labels, predicted, class_order)

    metrics = []
    for label in class_order:
        scores = [posterior.probability(label) for posterior in posteriors]
        flags = [value == label for value in labels]
        metrics.append(
            ClassMetrics(
                label=label,
                support=support[label],
                tp_rate=tp_rates[label],
                fp_rate=fp_rates[label],
                auc=auc_one_vs_rest(scores, flags),
            )
        )

    total = len(docs)
    weighted = {
        name: math.fsum(getattr(m, name) * m.support for m in metrics) / total
        for name in ("tp_rate", "fp_rate", "auc")
    }

    echo: dict[str, object] = {
        "representation": representation,
        "model": config.kind,
        "k": k,
        "seed": seed,
        "metrics": "pooled",
    }
    if config.kind == "multinomial":
        echo["alpha"] = config.alpha
    else:
        echo["variance_floor_scale"] = classify.VARIANCE_FLOOR_SCALE

    return EvalReport(
        class_metrics=tuple(metrics),
        class_order=class_order,
        confusion=tuple(tuple(row) for row in matrix),
        weighted_tp_rate=weighted["tp_rate"],
        weighted_fp_rate=weighted["fp_rate"],
        weighted_auc=weighted["auc"],
        config=echo,
    )


def report_to_json(report: EvalReport) -> str:
    """Serialize an :class:`EvalReport` to deterministic JSON."""
    payload = {
        "format_version": REPORT_FORMAT_VERSION,
        "config": report.config,
        "classes": [
            {
                "label": m.label,
                "support": m.support,
                "tp_rate": m.tp_rate,
                "fp_rate": m.fp_rate,
                "auc": m.auc,
            }
            for m in report.class_metrics
        ],
        "weighted_average": {
            "tp_rate": report.weighted_tp_rate,
            "fp_rate": report.weighted_fp_rate,
            "auc": report.weighted_auc,
        },
        "confusion": {
            "class_order": list(report.class_order),
            "matrix": [list(row) for row in report.confusion],
        },
    }
    return json.dumps(payload, indent=2)


def report_to_csv(report: EvalReport) -> str:
    """Per-genre results table: one row per class plus a weighted average."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(("genre", "tp_rate", "fp_rate", "auc"))
    for m in report.class_metrics:
        writer.writerow((m.label, repr(m.tp_rate), repr(m.fp_rate), repr(m.auc)))
    writer.writerow(
        (
            "weighted_average",
            repr(report.weighted_tp_rate),
            repr(report.weighted_fp_rate),
            repr(report.weighted_auc),
        )
    )
    return buffer.getvalue()
