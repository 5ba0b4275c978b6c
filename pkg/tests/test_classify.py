"""Naive Bayes training, prediction, and serialization."""

from __future__ import annotations

import math
import random

import pytest

from tvmood.classify import (
    VARIANCE_FLOOR_SCALE,
    GaussianNbModel,
    MultinomialNbModel,
    model_from_json,
    model_to_json,
    predict_gaussian,
    predict_multinomial,
    train_gaussian,
    train_multinomial,
)


from oracles import gaussian_posterior, multinomial_posterior


def test_gaussian_hand_moments():
    model = train_gaussian([[0.0], [2.0], [4.0], [6.0]], ["A", "A", "B", "B"])
    assert model.class_labels == ("A", "B")
    assert model.means == ((1.0,), (5.0,))
    assert model.variances == ((1.0,), (1.0,))
    assert [math.exp(p) for p in model.log_priors] == pytest.approx([0.5, 0.5])


def test_gaussian_midpoint_is_symmetric():
    model = train_gaussian([[0.0], [2.0], [4.0], [6.0]], ["A", "A", "B", "B"])
    posterior = predict_gaussian(model, [3.0])
    assert posterior.probabilities == pytest.approx((0.5, 0.5), abs=1e-12)
    assert posterior.predicted_label == "A"  # first label wins exact ties


def test_gaussian_pulls_toward_nearer_class():
    model = train_gaussian([[0.0], [2.0], [4.0], [6.0]], ["A", "A", "B", "B"])
    assert predict_gaussian(model, [1.0]).probability("A") > 0.5
    assert predict_gaussian(model, [5.0]).probability("B") > 0.5


def test_gaussian_all_missing_falls_back_to_priors():
    model = train_gaussian(
        [[0.0], [2.0], [4.0]], ["A", "A", "B"]
    )
    posterior = predict_gaussian(model, [None])
    assert posterior.probabilities == pytest.approx((2 / 3, 1 / 3), abs=1e-12)


def test_gaussian_single_class_is_an_error():
    with pytest.raises(ValueError, match="single class"):
        train_gaussian([[1.0], [2.0]], ["A", "A"])


def test_gaussian_constant_feature_hits_floor():
    model = train_gaussian(
        [[1.0, 0.0], [1.0, 2.0], [1.0, 4.0], [1.0, 6.0]], ["A", "A", "B", "B"]
    )
    # feature 0 is constant in both classes; floored variance keeps it finite
    assert model.variances[0][0] == model.variance_floor
    posterior = predict_gaussian(model, [1.0, 3.0])
    assert all(math.isfinite(p) for p in posterior.probabilities)
    assert math.fsum(posterior.probabilities) == pytest.approx(1.0, abs=1e-9)


def test_gaussian_class_without_feature_values_is_skipped():
    instances = [[0.0, None], [2.0, None], [4.0, 1.0], [6.0, 3.0]]
    model = train_gaussian(instances, ["A", "A", "B", "B"])
    assert model.means[0][1] is None
    posterior = predict_gaussian(model, [3.0, 2.0])
    assert math.fsum(posterior.probabilities) == pytest.approx(1.0, abs=1e-9)


def test_gaussian_arity_mismatch():
    model = train_gaussian([[0.0], [4.0]], ["A", "B"])
    with pytest.raises(ValueError, match="features"):
        predict_gaussian(model, [1.0, 2.0])


def test_gaussian_matches_density_oracle():
    rng = random.Random(53)
    for _ in range(100):
        n_classes = rng.randint(2, 3)
        n_features = rng.randint(1, 3)
        labels, instances = [], []
        for c in range(n_classes):
            for _ in range(rng.randint(1, 6)):
                labels.append(f"c{c}")
                instances.append(
                    [
                        None if rng.random() < 0.15 else rng.uniform(-5, 5)
                        for _ in range(n_features)
                    ]
                )
        if len(set(labels)) < 2:
            continue
        # ensure every class keeps at least one instance after masking
        model = train_gaussian(instances, labels)
        query = [None if rng.random() < 0.2 else rng.uniform(-5, 5) for _ in range(n_features)]
        posterior = predict_gaussian(model, query)
        oracle_labels, oracle_probs = gaussian_posterior(instances, labels, query)
        assert posterior.labels == tuple(oracle_labels)
        assert posterior.probabilities == pytest.approx(oracle_probs, abs=1e-9)


def test_multinomial_hand_smoothing():
    model = train_multinomial([{"a": 2, "b": 1}, {"c": 3}], ["x", "y"], alpha=1.0)
    x_row = model.log_term_probs[model.class_labels.index("x")]
    probs = {t: math.exp(x_row[model.vocabulary.index(t)]) for t in model.vocabulary}
    assert probs["a"] == pytest.approx(3 / 6)  # (2+1)/(3+3)
    assert probs["b"] == pytest.approx(2 / 6)
    assert probs["c"] == pytest.approx(1 / 6)  # absent term stays positive
    assert math.fsum(probs.values()) == pytest.approx(1.0, abs=1e-12)


def test_multinomial_large_alpha_approaches_uniform():
    model = train_multinomial([{"a": 5}, {"b": 5}], ["x", "y"], alpha=1e9)
    for row in model.log_term_probs:
        for log_prob in row:
            assert math.exp(log_prob) == pytest.approx(0.5, rel=1e-6)


def test_multinomial_empty_instance_returns_priors():
    model = train_multinomial([{"a": 1}, {"a": 1}, {"b": 1}], ["x", "x", "y"])
    posterior = predict_multinomial(model, {})
    assert posterior.probabilities == pytest.approx((2 / 3, 1 / 3), abs=1e-12)


def test_multinomial_unknown_terms_are_ignored():
    model = train_multinomial([{"a": 1}, {"b": 1}], ["x", "y"])
    with_unknown = predict_multinomial(model, {"a": 2, "zzz": 50})
    without = predict_multinomial(model, {"a": 2})
    assert with_unknown == without


def test_multinomial_prefers_matching_class():
    model = train_multinomial(
        [{"goal": 3, "match": 2}, {"vote": 4, "poll": 1}], ["sport", "politics"]
    )
    assert predict_multinomial(model, {"goal": 2}).predicted_label == "sport"
    assert predict_multinomial(model, {"poll": 2}).predicted_label == "politics"


def test_multinomial_doubling_counts_keeps_argmax():
    rng = random.Random(59)
    model = train_multinomial(
        [{"a": 3, "b": 1}, {"b": 4, "c": 2}, {"c": 5}], ["x", "y", "y"]
    )
    for _ in range(30):
        instance = {t: rng.randint(1, 6) for t in rng.sample(["a", "b", "c"], rng.randint(1, 3))}
        single = predict_multinomial(model, instance)
        doubled = predict_multinomial(model, {t: 2 * c for t, c in instance.items()})
        probs = sorted(single.probabilities, reverse=True)
        if probs[0] > probs[1]:  # strict ordering only
            assert doubled.predicted_label == single.predicted_label


def test_multinomial_errors():
    with pytest.raises(ValueError, match="single class"):
        train_multinomial([{"a": 1}, {"b": 1}], ["x", "x"])
    with pytest.raises(ValueError, match="vocabulary"):
        train_multinomial([{}, {}], ["x", "y"])
    with pytest.raises(ValueError, match="alpha"):
        train_multinomial([{"a": 1}, {"b": 1}], ["x", "y"], alpha=0.0)


def test_multinomial_matches_fraction_oracle():
    rng = random.Random(61)
    vocabulary = [f"t{i}" for i in range(8)]
    for _ in range(100):
        n_classes = rng.randint(2, 3)
        labels, instances = [], []
        for c in range(n_classes):
            for _ in range(rng.randint(1, 5)):
                labels.append(f"c{c}")
                terms = rng.sample(vocabulary, rng.randint(1, 4))
                instances.append({t: rng.randint(1, 5) for t in terms})
        alpha = rng.choice([1.0, 0.5, 2.0])
        model = train_multinomial(instances, labels, alpha)
        query_terms = rng.sample(vocabulary + ["zzz"], rng.randint(0, 4))
        query = {t: rng.randint(1, 4) for t in query_terms}
        posterior = predict_multinomial(model, query)
        oracle_labels, oracle_probs = multinomial_posterior(instances, labels, alpha, query)
        assert posterior.labels == tuple(oracle_labels)
        assert posterior.probabilities == pytest.approx(oracle_probs, abs=1e-9)


def test_posteriors_sum_to_one_and_stay_finite():
    rng = random.Random(67)
    for _ in range(50):
        instances = [[rng.uniform(-1e3, 1e3) for _ in range(2)] for _ in range(8)]
        labels = [rng.choice(["a", "b", "c"]) for _ in range(8)]
        if len(set(labels)) < 2:
            continue
        model = train_gaussian(instances, labels)
        posterior = predict_gaussian(model, [rng.uniform(-1e3, 1e3), rng.uniform(-1e3, 1e3)])
        assert math.fsum(posterior.probabilities) == pytest.approx(1.0, abs=1e-9)
        assert all(0.0 <= p <= 1.0 and math.isfinite(p) for p in posterior.probabilities)


def test_prediction_is_deterministic():
    model = train_gaussian([[0.0], [2.0], [4.0], [6.0]], ["A", "A", "B", "B"])
    first = predict_gaussian(model, [2.5])
    second = predict_gaussian(model, [2.5])
    assert first == second


def test_gaussian_serialization_round_trip_is_bit_exact():
    rng = random.Random(71)
    instances = [
        [rng.uniform(-3, 3), None if rng.random() < 0.2 else rng.uniform(-3, 3)]
        for _ in range(12)
    ]
    labels = [rng.choice(["a", "b", "c"]) for _ in range(12)]
    model = train_gaussian(instances, labels)
    reloaded = model_from_json(model_to_json(model))
    assert isinstance(reloaded, GaussianNbModel)
    assert reloaded == model
    for _ in range(20):
        query = [rng.uniform(-3, 3), rng.uniform(-3, 3)]
        assert predict_gaussian(reloaded, query) == predict_gaussian(model, query)


def test_multinomial_serialization_round_trip_is_bit_exact():
    model = train_multinomial(
        [{"a": 2, "b": 1}, {"c": 3}, {"a": 1, "c": 1}], ["x", "y", "y"], alpha=0.7
    )
    reloaded = model_from_json(model_to_json(model))
    assert isinstance(reloaded, MultinomialNbModel)
    assert reloaded == model
    for query in ({"a": 2}, {"b": 1, "c": 4}, {}, {"zzz": 9}):
        assert predict_multinomial(reloaded, query) == predict_multinomial(model, query)


def test_model_json_rejects_bad_payloads():
    model = train_multinomial([{"a": 1}, {"b": 1}], ["x", "y"])
    text = model_to_json(model)
    with pytest.raises(ValueError, match="version"):
        model_from_json(text.replace('"format_version": 1', '"format_version": 99'))
    with pytest.raises(ValueError, match="kind"):
        model_from_json(text.replace('"kind": "multinomial"', '"kind": "forest"'))
