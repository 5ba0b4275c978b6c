"""Naive Bayes classifiers.

Two variants: Gaussian over dense real vectors (missing entries allowed;
a missing feature simply contributes no likelihood term, and so does a
feature a class never saw), and multinomial over sparse term counts with
additive smoothing. Both predict through log space with log-sum-exp
normalization, so posteriors are always finite and sum to one.

Models are immutable after training and serialize to a versioned JSON
document that round-trips predictions bit-exactly.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

# Variance floor scale, relative to the largest per-feature variance of the
# training data. Keeps constant features from producing infinite densities.
VARIANCE_FLOOR_SCALE = 1e-9

MODEL_FORMAT_VERSION = 1

Instance = Sequence[Optional[float]]


@dataclass(frozen=True, slots=True)
class Posterior:
    """Class probabilities in a fixed label order.

    ``predicted_label`` is the argmax; exact ties resolve to the first
    label in the model's canonical order.
    """

    labels: tuple[str, ...]
    probabilities: tuple[float, ...]

    @property
    def predicted_label(self) -> str:
        best = max(range(len(self.labels)), key=lambda i: self.probabilities[i])
        return self.labels[best]

    def probability(self, label: str) -> float:
        return self.probabilities[self.labels.index(label)]

    def items(self) -> tuple[tuple[str, float], ...]:
        return tuple(zip(self.labels, self.probabilities))


def _log_priors(labels: Sequence[str], class_labels: tuple[str, ...]) -> tuple[float, ...]:
    total = len(labels)
    return tuple(
        math.log(sum(1 for value in labels if value == label) / total)
        for label in class_labels
    )


def _normalize_log_scores(
    class_labels: tuple[str, ...], log_scores: Sequence[float]
) -> Posterior:
    peak = max(log_scores)
    shifted = [math.exp(score - peak) for score in log_scores]
    total = math.fsum(shifted)
    return Posterior(class_labels, tuple(value / total for value in shifted))


def _population_moments(values: Sequence[float]) -> tuple[float, float]:
    mean = math.fsum(values) / len(values)
    variance = math.fsum((value - mean) ** 2 for value in values) / len(values)
    return mean, variance


@dataclass(frozen=True, slots=True)
class GaussianNbModel:
    """Per class and feature: mean and floored variance of training values.

    ``means[c][f]`` is None when class ``c`` had no non-missing value for
    feature ``f``; such pairs are skipped at prediction.
    """

    class_labels: tuple[str, ...]
    log_priors: tuple[float, ...]
    means: tuple[tuple[Optional[float], ...], ...]
    variances: tuple[tuple[Optional[float], ...], ...]
    variance_floor: float
    feature_count: int


def train_gaussian(
    instances: Sequence[Instance], labels: Sequence[str]
) -> GaussianNbModel:
    """Fit per-class, per-feature Gaussians.

    Moments use the population form over non-missing values. Variances are
    floored at ``1e-9`` times the largest per-feature variance of the whole
    training set (or at ``1e-9`` when every feature is constant). Priors
    are class frequencies.
    """
    if len(instances) != len(labels):
        raise ValueError("instances and labels have different lengths")
    if not instances:
        raise ValueError("no training instances")
    class_labels = tuple(sorted(set(labels)))
    if len(class_labels) < 2:
        raise ValueError("training data contains a single class")
    feature_count = len(instances[0])
    for instance in instances:
        if len(instance) != feature_count:
            raise ValueError("training instances have inconsistent arity")

    global_max_variance = 0.0
    for feature in range(feature_count):
        values = [x[feature] for x in instances if x[feature] is not None]
        if values:
            _, variance = _population_moments(values)
            global_max_variance = max(global_max_variance, variance)
    variance_floor = (
        VARIANCE_FLOOR_SCALE * global_max_variance
        if global_max_variance > 0
        else VARIANCE_FLOOR_SCALE
    )

    means: list[tuple[Optional[float], ...]] = []
    variances: list[tuple[Optional[float], ...]] = []
    for label in class_labels:
        class_instances = [x for x, y in zip(instances, labels) if y == label]
        class_means: list[Optional[float]] = []
        class_variances: list[Optional[float]] = []
        for feature in range(feature_count):
            values = [x[feature] for x in class_instances if x[feature] is not None]
            if not values:
                class_means.append(None)
                class_variances.append(None)
                continue
            mean, variance = _population_moments(values)
            class_means.append(mean)
            class_variances.append(max(variance, variance_floor))
        means.append(tuple(class_means))
        variances.append(tuple(class_variances))

    return GaussianNbModel(
        class_labels=class_labels,
        log_priors=_log_priors(labels, class_labels),
        means=tuple(means),
        variances=tuple(variances),
        variance_floor=variance_floor,
        feature_count=feature_count,
    )


def predict_gaussian(model: GaussianNbModel, instance: Instance) -> Posterior:
    """Posterior over classes for one instance.

    Missing entries and (class, feature) pairs without training data are
    skipped; an instance with no usable feature falls back to the priors.
    """
    if len(instance) != model.feature_count:
        raise ValueError(
            f"instance has {len(instance)} features, model expects "
            f"{model.feature_count}"
        )
    log_scores = []
    for index in range(len(model.class_labels)):
        score = model.log_priors[index]
        terms = []
        for feature, value in enumerate(instance):
            if value is None:
                continue
            mean = model.means[index][feature]
            if mean is None:
                continue
            variance = model.variances[index][feature]
            terms.append(
                -0.5 * (math.log(2.0 * math.pi * variance) + (value - mean) ** 2 / variance)
            )
        log_scores.append(score + math.fsum(terms))
    return _normalize_log_scores(model.class_labels, log_scores)


@dataclass(frozen=True, slots=True)
class MultinomialNbModel:
    """Smoothed per-class term distributions over the training vocabulary."""

    class_labels: tuple[str, ...]
    log_priors: tuple[float, ...]
    vocabulary: tuple[str, ...]
    log_term_probs: tuple[tuple[float, ...], ...]
    alpha: float
    term_index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "term_index", {term: i for i, term in enumerate(self.vocabulary)}
        )


def train_multinomial(
    instances: Sequence[Mapping[str, int]],
    labels: Sequence[str],
    alpha: float = 1.0,
) -> MultinomialNbModel:
    """Fit smoothed term distributions per class.

    ``P(term | class) = (count + alpha) / (class total + alpha * |V|)`` with
    the vocabulary V taken from the training instances only.
    """
    if len(instances) != len(labels):
        raise ValueError("instances and labels have different lengths")
    if not instances:
        raise ValueError("no training instances")
    if alpha <= 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    class_labels = tuple(sorted(set(labels)))
    if len(class_labels) < 2:
        raise ValueError("training data contains a single class")
    vocabulary = tuple(sorted({term for vector in instances for term in vector}))
    if not vocabulary:
        raise ValueError("empty vocabulary: no training instance has any term")

    log_term_probs = []
    for label in class_labels:
        counts = {term: 0 for term in vocabulary}
        for vector, value in zip(instances, labels):
            if value != label:
                continue
            for term, count in vector.items():
                counts[term] += count
        class_total = sum(counts.values())
        denominator = math.log(class_total + alpha * len(vocabulary))
        log_term_probs.append(
            tuple(
                math.log(counts[term] + alpha) - denominator for term in vocabulary
            )
        )

    return MultinomialNbModel(
        class_labels=class_labels,
        log_priors=_log_priors(labels, class_labels),
        vocabulary=vocabulary,
        log_term_probs=tuple(log_term_probs),
        alpha=alpha,
    )


def predict_multinomial(
    model: MultinomialNbModel, instance: Mapping[str, int]
) -> Posterior:
    """Posterior over classes for one term-count vector.

    Terms outside the training vocabulary are ignored; an empty instance
    yields the priors.
    """
    log_scores = []
    for index in range(len(model.class_labels)):
        row = model.log_term_probs[index]
        terms = [
            count * row[model.term_index[term]]
            for term, count in instance.items()
            if term in model.term_index
        ]
        log_scores.append(model.log_priors[index] + math.fsum(terms))
    return _normalize_log_scores(model.class_labels, log_scores)


def model_to_json(model: GaussianNbModel | MultinomialNbModel) -> str:
    """Serialize a trained model to versioned JSON.

    Floats are written in shortest round-trip form, so a reloaded model
    predicts bit-exactly like the original.
    """
    if isinstance(model, GaussianNbModel):
        payload = {
            "format_version": MODEL_FORMAT_VERSION,
            "kind": "gaussian",
            "class_labels": list(model.class_labels),
            "log_priors": list(model.log_priors),
            "variance_floor": model.variance_floor,
            "feature_count": model.feature_count,
            "means": [list(row) for row in model.means],
            "variances": [list(row) for row in model.variances],
        }
    elif isinstance(model, MultinomialNbModel):
        payload = {
            "format_version": MODEL_FORMAT_VERSION,
            "kind": "multinomial",
            "class_labels": list(model.class_labels),
            "log_priors": list(model.log_priors),
            "alpha": model.alpha,
            "vocabulary": list(model.vocabulary),
            "log_term_probs": [list(row) for row in model.log_term_probs],
        }
    else:
        raise TypeError(f"not a model: {model!r}")
    return json.dumps(payload, indent=2)


def model_from_json(text: str) -> GaussianNbModel | MultinomialNbModel:
    """Reload a model serialized by :func:`model_to_json`."""
    payload = json.loads(text)
    version = payload.get("format_version")
    if version != MODEL_FORMAT_VERSION:
        raise ValueError(f"unsupported model format version {version!r}")
    kind = payload.get("kind")
    if kind == "gaussian":
        return GaussianNbModel(
            class_labels=tuple(payload["class_labels"]),
            log_priors=tuple(payload["log_priors"]),
            means=tuple(tuple(row) for row in payload["means"]),
            variances=tuple(tuple(row) for row in payload["variances"]),
            variance_floor=payload["variance_floor"],
            feature_count=payload["feature_count"],
        )
    if kind == "multinomial":
        return MultinomialNbModel(
            class_labels=tuple(payload["class_labels"]),
            log_priors=tuple(payload["log_priors"]),
            vocabulary=tuple(payload["vocabulary"]),
            log_term_probs=tuple(tuple(row) for row in payload["log_term_probs"]),
            alpha=payload["alpha"],
        )
    raise ValueError(f"unknown model kind {kind!r}")
