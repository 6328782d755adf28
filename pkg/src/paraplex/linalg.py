"""Dense small-matrix helpers: checked float inverses and a generic
Gauss-Jordan inverse over any division ring (floats, Jet2, ComplexJet)."""

from __future__ import annotations

import numpy as np

from .errors import SingularMatrix
from .jets import ComplexJet, Jet2

DET_EPS = 1e-10


def checked_inverse(m: np.ndarray, tol: float = DET_EPS) -> np.ndarray:
    """Inverse of a well-conditioned small matrix; refuses near-singular input."""
    m = np.asarray(m, dtype=float)
    if abs(np.linalg.det(m)) <= tol:
        raise SingularMatrix(f"|det| <= {tol}")
    return np.linalg.inv(m)


def _pivot_mag(x) -> float:
    if isinstance(x, ComplexJet):
        v = x.re.value + 1j * x.im.value
        return float(np.min(np.abs(v)))
    if isinstance(x, Jet2):
        return float(np.min(np.abs(x.value)))
    return float(np.min(np.abs(np.asarray(x))))


def ring_inverse(mat, pivot_tol: float = 1e-10):
    """Invert an n x n nested list of ring elements by Gauss-Jordan.

    Elimination runs in fixed row order (deterministic for batched jets, where
    per-element pivoting would diverge across the batch); a pivot whose value
    magnitude drops below ``pivot_tol`` anywhere in the batch raises.
    """
    n = len(mat)
    a = [list(row) for row in mat]
    one, zero = 1.0, 0.0
    inv = [[one if i == j else zero for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = a[col][col]
        if _pivot_mag(piv) < pivot_tol:
            raise SingularMatrix(f"pivot {col} below {pivot_tol} in ring inverse")
        ipiv = 1.0 / piv if not isinstance(piv, (Jet2, ComplexJet)) else (
            piv.reciprocal() if isinstance(piv, Jet2) else 1.0 / piv
        )
        for j in range(n):
            a[col][j] = a[col][j] * ipiv
            inv[col][j] = inv[col][j] * ipiv
        for r in range(n):
            if r == col:
                continue
            f = a[r][col]
            if _pivot_mag(f) == 0.0 and not isinstance(f, (Jet2, ComplexJet)):
                continue
            for j in range(n):
                a[r][j] = a[r][j] - f * a[col][j]
                inv[r][j] = inv[r][j] - f * inv[col][j]
    return inv
