"""Small dense matrix kit (N up to 8).

Determinant and adjugate are computed by cofactor expansion, which is
exact in structure at these sizes.  Eigenvalues and singular values come
from numpy's dense routines.  The module also provides the rank-(N-1)
adjugate factorization adj(A) = c v u^T and extraction of the left/right
eigenvector pair for a unit eigenvalue with the normalization
u^T v = 1, e1^T v = 1 used throughout the shrinking-point machinery.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "LinalgError",
    "det",
    "adj",
    "adj_rank_deficient",
    "eigs",
    "unit_eig_pair",
]

MAX_DIM = 8
_SV_RTOL = 1e-8  # rank decisions: singular values below 1e-8 * s_max are zero


class LinalgError(ValueError):
    pass


def _check(A):
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise LinalgError(f"expected a square matrix, got shape {A.shape}")
    if not (2 <= A.shape[0] <= MAX_DIM):
        raise LinalgError(f"dimension {A.shape[0]} outside 2..{MAX_DIM}")
    return A


def det(A):
    """Determinant by cofactor expansion along the first row."""
    A = _check(A)
    return _det(A)


def _det(A):
    n = A.shape[0]
    if n == 1:
        return A[0, 0]
    if n == 2:
        return A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0]
    total = 0.0
    rest = A[1:]
    for j in range(n):
        if A[0, j] == 0.0:
            continue
        minor = np.delete(rest, j, axis=1)
        total += (-1.0) ** j * A[0, j] * _det(minor)
    return total


def adj(A):
    """Adjugate by cofactors: adj(A)[i, j] = (-1)^(i+j) * minor(A, j, i)."""
    A = _check(A)
    n = A.shape[0]
    out = np.empty((n, n))
    for i in range(n):
        for j in range(n):
            minor = np.delete(np.delete(A, j, axis=0), i, axis=1)
            out[i, j] = (-1.0) ** (i + j) * _det(minor)
    return out


def eigs(A):
    """Eigenvalues (with multiplicity) as a complex array."""
    A = _check(A)
    return np.linalg.eigvals(A)


def adj_rank_deficient(A):
    """Factor adj(A) = c * v * u^T for a matrix of rank exactly N-1.

    Returns (c, v, u) with u^T A = 0, A v = 0, u^T v = 1, and c equal to
    the product of the nonzero eigenvalues of A.  Raises LinalgError if
    the two smallest singular values do not show rank N-1.
    """
    A = _check(A)
    n = A.shape[0]
    U, s, Vt = np.linalg.svd(A)
    tol = _SV_RTOL * s[0] if s[0] > 0 else _SV_RTOL
    if s[-1] > tol or (n >= 2 and s[-2] <= tol):
        raise LinalgError(
            f"rank is not {n - 1}: smallest singular values {s[-1]:.3e}, {s[-2]:.3e}"
        )
    v = Vt[-1]  # right null vector
    u = U[:, -1]  # left null vector
    scale = u @ v
    if abs(scale) < 1e-12:
        raise LinalgError("left and right null vectors are orthogonal")
    u = u / scale  # now u^T v = 1
    adjA = adj(A)
    c = u @ adjA @ v
    return c, v, u


def unit_eig_pair(A, target=1.0, rtol=1e-6):
    """Right/left eigenvector pair (v, u) for the eigenvalue nearest *target*.

    The eigenvalue must be within *rtol* of target and simple.  The pair
    is normalized so that u^T v = 1 and e1^T v = 1; failure of the e1
    normalization signals that the wrong cyclic index was used.
    """
    A = _check(A)
    w = np.linalg.eigvals(A)
    dist = np.abs(w - target)
    order = np.argsort(dist)
    if dist[order[0]] > rtol:
        raise LinalgError(
            f"no eigenvalue within {rtol} of {target}: nearest is {w[order[0]]}"
        )
    if len(w) > 1 and dist[order[1]] <= rtol:
        raise LinalgError(f"eigenvalue {target} is not simple: {np.sort(w)}")
    lam = w[order[0]]
    n = A.shape[0]
    # null vectors of A - lam*I via SVD (real part: lam is real up to rounding)
    B = A - np.real(lam) * np.eye(n)
    U, s, Vt = np.linalg.svd(B)
    v = Vt[-1]
    u = U[:, -1]
    if abs(v[0]) < 1e-8:
        raise LinalgError("right eigenvector has (near-)zero first component")
    v = v / v[0]  # e1^T v = 1
    uv = u @ v
    if abs(uv) < 1e-12:
        raise LinalgError("left and right eigenvectors are orthogonal")
    u = u / uv  # u^T v = 1
    return v, u
