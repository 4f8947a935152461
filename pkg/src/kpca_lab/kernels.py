"""Kernel evaluation, kernel-matrix construction, and Gram centering."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class KernelSpec:
    """Tagged choice of kernel: linear, polynomial (x.y + c)^d, or gaussian.

    Use the classmethod constructors; they validate the parameters that
    matter for each kind (degree >= 1, offset >= 0, width > 0).
    """

    kind: str
    degree: int = 1
    offset: float = 0.0
    width: float = 1.0

    @classmethod
    def linear(cls) -> "KernelSpec":
        return cls(kind="linear")

    @classmethod
    def polynomial(cls, degree: int, offset: float = 0.0) -> "KernelSpec":
        if degree < 1:
            raise ValueError(f"polynomial degree must be >= 1, got {degree}")
        if offset < 0.0:
            raise ValueError(f"polynomial offset must be >= 0, got {offset}")
        return cls(kind="polynomial", degree=int(degree), offset=float(offset))

    @classmethod
    def gaussian(cls, width: float) -> "KernelSpec":
        if not width > 0.0:
            raise ValueError(f"gaussian width must be > 0, got {width}")
        return cls(kind="gaussian", width=float(width))

    def __post_init__(self):
        if self.kind not in ("linear", "polynomial", "gaussian"):
            raise ValueError(f"unknown kernel kind {self.kind!r}")


def eval_kernel(spec: KernelSpec, x: np.ndarray, y: np.ndarray) -> float:
    """Evaluate the kernel on a single pair of equal-length vectors."""
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    if x.shape != y.shape:
        raise ValueError(f"dimension mismatch: {x.shape} vs {y.shape}")
    if spec.kind == "linear":
        return float(x @ y)
    if spec.kind == "polynomial":
        return float((x @ y + spec.offset) ** spec.degree)
    d = x - y
    return float(np.exp(-(d @ d) / (2.0 * spec.width**2)))


def _as_matrix(m: np.ndarray, name: str) -> np.ndarray:
    m = np.asarray(m, dtype=float)
    if m.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got shape {m.shape}")
    return m


def _mirror_upper(k: np.ndarray) -> np.ndarray:
    # Exact symmetry for the self-kernel case, independent of BLAS rounding.
    return np.triu(k) + np.triu(k, 1).T


def kernel_matrix(spec: KernelSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Pairwise kernel table: entry [i, j] = kernel(a_i, b_j).

    When ``a`` and ``b`` are the same object the result is made exactly
    symmetric, and for the gaussian kernel the diagonal is exactly 1.
    """
    a = _as_matrix(a, "a")
    b = _as_matrix(b, "b")
    if a.shape[1] != b.shape[1]:
        raise ValueError(
            f"feature dimension mismatch: {a.shape[1]} vs {b.shape[1]}"
        )
    same = a is b
    if spec.kind == "gaussian":
        # Row-at-a-time exact differences: keeps memory at O(N*D) and makes
        # zero distances exact, so k(x, x) == 1 without correction.
        k = np.empty((a.shape[0], b.shape[0]))
        inv = 1.0 / (2.0 * spec.width**2)
        for i in range(a.shape[0]):
            d2 = ((a[i] - b) ** 2).sum(axis=1)
            k[i] = np.exp(-d2 * inv)
        return k
    k = a @ b.T
    if spec.kind == "polynomial":
        k = (k + spec.offset) ** spec.degree
    if same:
        k = _mirror_upper(k)
    return k


def center_gram(k: np.ndarray) -> np.ndarray:
    """Center a square kernel matrix so the implicit features have zero mean.

    Equivalent to K - J K - K J + J K J with J the all-1/N matrix; computed
    via row/column means.  Output rows and columns sum to ~0 and symmetry is
    preserved exactly.
    """
    k = _as_matrix(k, "k")
    if k.shape[0] != k.shape[1]:
        raise ValueError(f"center_gram needs a square matrix, got {k.shape}")
    r = k.mean(axis=1)
    m = r.mean()
    return k - r[:, None] - r[None, :] + m


def center_cross(k_test: np.ndarray, k_train: np.ndarray) -> np.ndarray:
    """Center a T x N test-vs-train kernel block against the training Gram.

    Out-of-sample counterpart of :func:`center_gram`: subtracts the training
    column means and the per-row test means, then adds back the training
    grand mean.  Rows equal to training rows reproduce the corresponding
    rows of ``center_gram(k_train)``.
    """
    k_test = _as_matrix(k_test, "k_test")
    k_train = _as_matrix(k_train, "k_train")
    n = k_train.shape[0]
    if k_train.shape[1] != n:
        raise ValueError(f"k_train must be square, got {k_train.shape}")
    if k_test.shape[1] != n:
        raise ValueError(
            f"k_test has {k_test.shape[1]} columns, expected {n}"
        )
    col_means = k_train.mean(axis=1)  # == column means; k_train is symmetric
    grand = col_means.mean()
    row_means = k_test.mean(axis=1)
    return k_test - col_means[None, :] - row_means[:, None] + grand
