"""Deterministic symmetric eigendecomposition.

Every numerical module in the toolkit funnels its eigenproblems through
:func:`sym_eig` so that ordering and sign conventions are fixed in exactly
one place.  The decomposition itself is delegated to LAPACK via
``numpy.linalg.eigh``; the wrapper adds input validation, descending order
with stable tie-breaking, and a deterministic sign convention.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Relative tolerance for accepting an input matrix as symmetric.
SYMMETRY_RTOL = 1e-12


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues (descending) and matching orthonormal eigenvector columns."""

    values: np.ndarray   # shape (n,)
    vectors: np.ndarray  # shape (n, n), column k pairs with values[k]


def _validate_symmetric(a: np.ndarray) -> None:
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.isfinite(a).all():
        raise ValueError("matrix contains non-finite entries")
    scale = max(1.0, float(np.abs(a).max())) if a.size else 1.0
    asym = float(np.abs(a - a.T).max()) if a.size else 0.0
    if asym > SYMMETRY_RTOL * scale:
        raise ValueError(
            f"matrix is not symmetric: max |A - A^T| = {asym:.3e} "
            f"exceeds {SYMMETRY_RTOL:.0e} * {scale:.3e}"
        )


def sym_eig(a: np.ndarray) -> EigenDecomposition:
    """Full eigendecomposition of a symmetric matrix.

    Returns eigenvalues sorted descending.  Ties keep the order in which the
    underlying solver produced them (stable sort), and each eigenvector is
    scaled so that its entry of largest magnitude is non-negative, which
    resolves the +/-v ambiguity deterministically.

    Raises ``ValueError`` for non-square, non-finite, or asymmetric input.
    """
    a = np.asarray(a, dtype=float)
    _validate_symmetric(a)
    w, v = np.linalg.eigh(a)
    order = np.argsort(-w, kind="stable")
    w = w[order]
    v = v[:, order]
    n = a.shape[0]
    lead = np.argmax(np.abs(v), axis=0)
    flip = v[lead, np.arange(n)] < 0.0
    v[:, flip] *= -1.0
    return EigenDecomposition(values=w, vectors=v)
