"""Minimal linear classifier: least squares on +/-1 targets with a bias term."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Ridge applied to the normal equations; absorbs near-collinear features.
_RIDGE = 1e-10


@dataclass(frozen=True)
class LinearClassifier:
    """Weight vector of length M+1; the last entry is the bias."""

    weights: np.ndarray


def fit_linear(features: np.ndarray, labels: np.ndarray) -> LinearClassifier:
    """Least-squares fit of [features, 1] . w ~ labels over +/-1 labels."""
    x = np.asarray(features, dtype=float)
    t = np.asarray(labels, dtype=float).ravel()
    if x.ndim != 2:
        raise ValueError(f"features must be 2-D, got shape {x.shape}")
    if x.shape[0] != t.shape[0]:
        raise ValueError(f"{x.shape[0]} rows vs {t.shape[0]} labels")
    if x.shape[0] < 2:
        raise ValueError("need at least 2 samples")
    if not np.all(np.isin(t, (-1.0, 1.0))):
        raise ValueError("labels must be +1 or -1")
    if np.unique(t).size < 2:
        raise ValueError("both classes must be present")
    a = np.hstack([x, np.ones((x.shape[0], 1))])
    gram = a.T @ a + _RIDGE * np.eye(a.shape[1])
    w = np.linalg.solve(gram, a.T @ t)
    return LinearClassifier(weights=w)


def predict(clf: LinearClassifier, x: np.ndarray) -> int:
    """Label for one feature vector; a score of exactly zero maps to +1."""
    x = np.asarray(x, dtype=float).ravel()
    if x.shape[0] != clf.weights.shape[0] - 1:
        raise ValueError(
            f"expected {clf.weights.shape[0] - 1} features, got {x.shape[0]}"
        )
    score = x @ clf.weights[:-1] + clf.weights[-1]
    return 1 if score >= 0.0 else -1


def predict_many(clf: LinearClassifier, x: np.ndarray) -> np.ndarray:
    """Vectorized :func:`predict` over the rows of a feature matrix."""
    x = np.asarray(x, dtype=float)
    if x.ndim != 2 or x.shape[1] != clf.weights.shape[0] - 1:
        raise ValueError(
            f"expected a T x {clf.weights.shape[0] - 1} matrix, got {x.shape}"
        )
    scores = x @ clf.weights[:-1] + clf.weights[-1]
    return np.where(scores >= 0.0, 1, -1)


def error_rate(clf: LinearClassifier, features: np.ndarray, labels: np.ndarray) -> float:
    """Fraction of rows whose predicted label differs from the given one."""
    t = np.asarray(labels).ravel()
    pred = predict_many(clf, features)
    if t.shape[0] != pred.shape[0]:
        raise ValueError(f"{pred.shape[0]} rows vs {t.shape[0]} labels")
    return float(np.mean(pred != t))
