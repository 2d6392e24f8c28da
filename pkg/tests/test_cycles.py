import numpy as np
import pytest

from modelock.cycles import (
    CycleError,
    cycle_matrices,
    s_formula_residual,
    solve_cycle,
    varrho,
    word_matrix,
)
from modelock.maps import evaluate, get_family
from modelock.symbolic import RotSpec, Word, build_rotational, shift


@pytest.fixture(scope="module")
def bcnf3():
    fam = get_family("bcnf3")
    # the family defaults are a degenerate point (unit multiplier);
    # nudge into a generic region
    return fam, fam.default_point(tauR=-1.9, deltaL=0.22)


def test_word_matrix_order(bcnf3):
    fam, p = bcnf3
    A_L, A_R, B = evaluate(fam, p)
    assert np.allclose(word_matrix(A_L, A_R, Word("LR")), A_R @ A_L)
    assert np.allclose(word_matrix(A_L, A_R, Word("RRL")), A_L @ A_R @ A_R)


def test_cycle_matrices_recursion(bcnf3):
    fam, p = bcnf3
    A_L, A_R, B = evaluate(fam, p)
    w = Word("LRRLR")
    M, P = cycle_matrices(A_L, A_R, w)
    assert np.allclose(M, word_matrix(A_L, A_R, w))
    # P satisfies x_n = M x_0 + P B mu for the inhomogeneous iteration
    x0 = np.array([0.3, -0.2, 0.5])
    x = x0
    for sym in str(w):
        A = A_L if sym == "L" else A_R
        x = A @ x + B * p.mu
    assert np.allclose(x, M @ x0 + P @ B * p.mu)


def test_fixed_point_words(bcnf3):
    fam, p = bcnf3
    A_L, A_R, B = evaluate(fam, p)
    for w, A in ((Word("L"), A_L), (Word("R"), A_R)):
        sol = solve_cycle(fam, p, w)
        expect = np.linalg.solve(np.eye(3) - A, B * p.mu)
        assert np.allclose(sol.points[0], expect)
        assert sol.admissible == (
            expect[0] <= 1e-9 if str(w) == "L" else expect[0] >= -1e-9)


def test_cycle_closes_and_margin(bcnf3):
    fam, p = bcnf3
    w = build_rotational(RotSpec(2, 2, 5))
    sol = solve_cycle(fam, p, w)
    # the orbit closes after one period
    A_L, A_R, B = evaluate(fam, p)
    A = A_R if str(w)[-1] == "R" else A_L
    back = A @ sol.points[-1] + B * p.mu
    assert np.allclose(back, sol.points[0], atol=1e-10)
    assert sol.s == pytest.approx(list(sol.points[:, 0]))
    signed = [(-s if c == "L" else s) for s, c in zip(sol.s, str(w))]
    assert sol.margin == pytest.approx(min(signed))
    assert sol.admissible == (sol.margin >= -1e-9)


def test_shifted_words_share_orbit(bcnf3):
    fam, p = bcnf3
    w = build_rotational(RotSpec(2, 2, 5))
    sol = solve_cycle(fam, p, w)
    for j in range(1, 5):
        sj = solve_cycle(fam, p, shift(w, j))
        assert np.allclose(sj.points[0], sol.points[j])
        assert sj.margin == pytest.approx(sol.margin)
        assert np.allclose(np.sort_complex(sj.multipliers),
                           np.sort_complex(sol.multipliers), atol=1e-9)


def test_s_formula(bcnf3):
    fam, p = bcnf3
    for spec in (RotSpec(2, 2, 5), RotSpec(3, 2, 5), RotSpec(1, 1, 3)):
        sol = solve_cycle(fam, p, build_rotational(spec))
        assert s_formula_residual(fam, p, sol) < 1e-12


def test_varrho_same_for_both_pieces(bcnf3):
    fam, p = bcnf3
    A_L, A_R, B = evaluate(fam, p)
    assert np.allclose(varrho(A_L, A_R), varrho(A_R, A_L))


def test_singular_cycle_raises():
    fam = get_family("bcnf3")
    # tauL = 2, sigmaL... make I - A_L singular for the word "L":
    # choose parameters with eigenvalue 1 of A_L
    p = fam.default_point(tauL=1.0, sigmaL=1.0, deltaL=1.0)
    with pytest.raises(CycleError):
        solve_cycle(fam, p, Word("L"))


def test_stability_flag(bcnf3):
    fam, p = bcnf3
    sol = solve_cycle(fam, p, build_rotational(RotSpec(2, 2, 5)))
    assert sol.stable == bool(np.all(np.abs(sol.multipliers) < 1 - 1e-9))
