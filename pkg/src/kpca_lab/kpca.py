"""Kernel PCA: fit, out-of-sample transform, Gaussian pre-images, width selection.

Fitting solves the centered-Gram eigenproblem K~ a = (N lambda) a and rescales
each coefficient vector so the implicit feature-space eigenvector has unit
norm: lambda * N * (a.a) = 1.  Components whose raw Gram eigenvalue is
numerically zero are dropped, so the number of retained components can be
smaller than requested.

Pre-images exist only for the gaussian kernel, via the fixed-point iteration

    z <- sum_i w_i(z) x_i / sum_i w_i(z),
    w_i(z) = g_i * exp(-|z - x_i|^2 / (2 sigma^2)).

Because fitting centers the Gram matrix, the plain coefficient weights
gamma_i = sum_k y_k a_ki are adjusted to g_i = gamma_i - mean(gamma) + 1/N;
this accounts for the implicit feature mean and keeps pre-images anchored to
the data region.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .eigen import sym_eig
from .kernels import KernelSpec, center_cross, center_gram, kernel_matrix

# Components with raw centered-Gram eigenvalue <= DROP_RTOL * largest are
# treated as numerically zero and dropped.
DROP_RTOL = 1e-10

# Below this denominator magnitude the fixed-point step is meaningless:
# every gaussian weight has underflowed or cancelled.
_DENOM_FLOOR = 1e-300


class UnsupportedKernelError(ValueError):
    """Raised when an operation needs a kernel kind the model does not have."""


class PreimageDivergenceError(RuntimeError):
    """Fixed-point iteration lost all weight mass; carries the failing iterate."""

    def __init__(self, message: str, iterate: np.ndarray, iteration: int):
        super().__init__(message)
        self.iterate = iterate
        self.iteration = iteration


@dataclass(frozen=True)
class KpcaModel:
    """Retained training data plus normalized dual coefficients.

    ``coefficients`` is N x M with column k holding a_k; ``eigenvalues`` are
    the lambda_k of the eigenproblem (raw Gram eigenvalue / N), descending.
    ``train_gram`` caches the uncentered training kernel matrix for centering
    out-of-sample rows.
    """

    training: np.ndarray
    spec: KernelSpec
    coefficients: np.ndarray
    eigenvalues: np.ndarray
    train_gram: np.ndarray

    @property
    def n_samples(self) -> int:
        return self.training.shape[0]

    @property
    def n_features(self) -> int:
        return self.training.shape[1]

    @property
    def n_components(self) -> int:
        return self.coefficients.shape[1]


@dataclass(frozen=True)
class PreimageConfig:
    """Controls for the fixed-point iteration.

    ``initial`` defaults to the training mean, which is a safe starting
    point in practice.  ``tolerance`` is on the Euclidean step norm.
    """

    max_iterations: int = 1000
    tolerance: float = 1e-9
    initial: np.ndarray | None = None

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ValueError(f"max_iterations must be >= 1, got {self.max_iterations}")
        if not self.tolerance > 0.0:
            raise ValueError(f"tolerance must be > 0, got {self.tolerance}")


class PreimageResult(NamedTuple):
    z: np.ndarray
    iterations: int
    converged: bool


def fit_kpca(x: np.ndarray, spec: KernelSpec, m: int) -> KpcaModel:
    """Fit kernel PCA with up to ``m`` components.

    Steps: build the kernel matrix, center it, eigendecompose, keep the top
    components with positive raw eigenvalue, and rescale each eigenvector
    alpha_k (unit norm from the solver) to a_k = alpha_k / sqrt(raw_k) so
    that lambda_k * N * |a_k|^2 = 1.

    Identical data points are legal: the centered Gram is then zero and the
    model simply retains no components.
    """
    x = np.asarray(x, dtype=float)
    if x.ndim != 2:
        raise ValueError(f"data matrix must be 2-D, got shape {x.shape}")
    if not np.isfinite(x).all():
        raise ValueError("data matrix contains non-finite entries")
    n = x.shape[0]
    if n < 2:
        raise ValueError(f"need at least 2 samples, got {n}")
    if not 1 <= m <= n:
        raise ValueError(f"components M={m} outside [1, N] = [1, {n}]")
    k = kernel_matrix(spec, x, x)
    dec = sym_eig(center_gram(k))
    raw = dec.values
    cutoff = DROP_RTOL * max(raw[0], 0.0)
    keep = [i for i in range(m) if raw[i] > cutoff and raw[i] > 0.0]
    coeffs = dec.vectors[:, keep] / np.sqrt(raw[keep])[None, :] if keep \
        else np.zeros((n, 0))
    values = raw[keep] / n if keep else np.zeros(0)
    return KpcaModel(
        training=x.copy(),
        spec=spec,
        coefficients=coeffs,
        eigenvalues=values,
        train_gram=k,
    )


def kpca_transform(model: KpcaModel, q: np.ndarray) -> np.ndarray:
    """Kernel principal components of query rows, as a T x M matrix.

    Each query row is kernel-evaluated against the training set, the block
    is centered consistently with the training Gram, and the result is
    contracted with the coefficient vectors.
    """
    q = np.asarray(q, dtype=float)
    if q.ndim != 2:
        raise ValueError(f"query matrix must be 2-D, got shape {q.shape}")
    if q.shape[1] != model.n_features:
        raise ValueError(
            f"expected {model.n_features} features, got {q.shape[1]}"
        )
    k_test = kernel_matrix(model.spec, q, model.training)
    return center_cross(k_test, model.train_gram) @ model.coefficients


def preimage_weights(model: KpcaModel, y: np.ndarray) -> np.ndarray:
    """Centering-adjusted pre-image weights for a feature vector ``y``.

    gamma_i = sum_k y_k a_ki, shifted by -mean(gamma) + 1/N to account for
    the centered fit (see module docstring).
    """
    y = np.asarray(y, dtype=float).ravel()
    if y.shape[0] != model.n_components:
        raise ValueError(
            f"expected {model.n_components} feature values, got {y.shape[0]}"
        )
    gamma = model.coefficients @ y
    return gamma - gamma.mean() + 1.0 / model.n_samples


def kpca_preimage(
    model: KpcaModel, y: np.ndarray, cfg: PreimageConfig | None = None
) -> PreimageResult:
    """Approximate input-space pre-image of the feature vector ``y``.

    Runs the gaussian fixed-point iteration until the step norm drops below
    ``cfg.tolerance`` or ``cfg.max_iterations`` is reached; the flag in the
    result records which.  Raises :class:`UnsupportedKernelError` for
    non-gaussian models and :class:`PreimageDivergenceError` when all
    gaussian weights underflow (iterate far outside the data region).
    """
    if model.spec.kind != "gaussian":
        raise UnsupportedKernelError(
            f"pre-images are only defined for the gaussian kernel, "
            f"model uses {model.spec.kind!r}"
        )
    if cfg is None:
        cfg = PreimageConfig()
    weights = preimage_weights(model, y)
    x = model.training
    if cfg.initial is not None:
        z = np.asarray(cfg.initial, dtype=float).ravel().copy()
        if z.shape[0] != model.n_features:
            raise ValueError(
                f"initial point has {z.shape[0]} features, expected {model.n_features}"
            )
    else:
        z = x.mean(axis=0)
    inv = 1.0 / (2.0 * model.spec.width**2)
    converged = False
    iterations = 0
    for iterations in range(1, cfg.max_iterations + 1):
        d2 = ((x - z) ** 2).sum(axis=1)
        w = weights * np.exp(-d2 * inv)
        denom = w.sum()
        if not np.isfinite(denom) or abs(denom) < _DENOM_FLOOR:
            raise PreimageDivergenceError(
                f"pre-image iteration {iterations} diverged: weight mass "
                f"{denom!r} at iterate {z.tolist()}",
                iterate=z,
                iteration=iterations,
            )
        z_next = (w @ x) / denom
        step = float(np.linalg.norm(z_next - z))
        z = z_next
        if step < cfg.tolerance:
            converged = True
            break
    return PreimageResult(z=z, iterations=iterations, converged=converged)


def select_sigma(x: np.ndarray) -> float:
    """Gaussian width heuristic: 5 x mean nearest-neighbor distance.

    The nearest neighbor of row i is the closest row with a different index,
    so duplicate rows contribute zero distance.
    """
    x = np.asarray(x, dtype=float)
    if x.ndim != 2:
        raise ValueError(f"data matrix must be 2-D, got shape {x.shape}")
    n = x.shape[0]
    if n < 2:
        raise ValueError(f"need at least 2 rows, got {n}")
    nn = np.empty(n)
    for i in range(n):
        d2 = ((x - x[i]) ** 2).sum(axis=1)
        d2[i] = np.inf
        nn[i] = np.sqrt(d2.min())
    return 5.0 * float(nn.mean())
