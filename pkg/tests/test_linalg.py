import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from modelock import linalg


def random_matrix(seed, n):
    return np.asarray(np.random.default_rng(seed).standard_normal((n, n)))


@given(st.integers(0, 200), st.integers(2, 6))
def test_det_matches_numpy(seed, n):
    A = random_matrix(seed, n)
    ref = np.linalg.det(A)
    assert abs(linalg.det(A) - ref) <= 1e-9 * (1 + abs(ref))


@given(st.integers(0, 200), st.integers(2, 6))
@settings(deadline=None)
def test_adjugate_identity(seed, n):
    A = random_matrix(seed, n)
    d = linalg.det(A)
    scale = np.abs(A).max() ** n + 1
    assert np.allclose(linalg.adj(A) @ A, d * np.eye(n), atol=1e-9 * scale)
    assert np.allclose(A @ linalg.adj(A), d * np.eye(n), atol=1e-9 * scale)


def test_adjugate_of_singular_matrix():
    # rank n-1: adjugate is a rank-one outer product of null vectors
    A = np.array([[1.0, 2.0, 3.0], [2.0, 4.0, 6.0], [1.0, 0.0, 1.0]])
    adjA = linalg.adj(A)
    assert np.allclose(adjA @ A, 0.0, atol=1e-12)
    assert np.linalg.matrix_rank(adjA) == 1
    assert linalg.adj_rank_deficient(A)


def test_eigs_match_numpy():
    A = random_matrix(7, 5)
    got = np.sort_complex(linalg.eigs(A))
    ref = np.sort_complex(np.linalg.eigvals(A))
    assert np.allclose(got, ref)


def test_unit_eig_pair_normalization():
    rng = np.random.default_rng(3)
    for _ in range(20):
        V = rng.standard_normal((4, 4))
        lam = rng.uniform(0.5, 2.0)
        D = np.diag([lam, 0.3, -0.2, 0.1])
        A = V @ D @ np.linalg.inv(V)
        v, u = linalg.unit_eig_pair(A, target=lam)
        assert np.allclose(A @ v, lam * v, atol=1e-8 * lam)
        assert np.allclose(u @ A, lam * u, atol=1e-8 * lam)
        assert v[0] == pytest.approx(1.0)
        assert u @ v == pytest.approx(1.0)


def test_unit_eig_pair_rejects_complex_target():
    # rotation matrix has no real eigenvector for modulus-1 eigenvalues
    c, s = np.cos(1.0), np.sin(1.0)
    A = np.array([[c, -s], [s, c]])
    with pytest.raises(linalg.LinalgError):
        linalg.unit_eig_pair(A, target=1.0)


def test_dimension_guard():
    with pytest.raises(linalg.LinalgError):
        linalg.det(np.eye(linalg.MAX_DIM + 1))
    with pytest.raises(linalg.LinalgError):
        linalg.det(np.zeros((2, 3)))
