"""Periodic-solution machinery for symbol sequences.

For a word S of length n over {L,R} the S-cycle is the orbit of the
fixed point of f_{S_{n-1}} o ... o f_{S_0}, i.e. the solution of

    x_0 = M_S x_0 + P_S B mu,

where M_S is the product of the half-map matrices along S and P_S the
matching geometric sum.  The cycle is admissible when each point lies
in the half-space its symbol names, measured by s_i = e1^T x_i.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .maps import MapFamily, ParamPoint, evaluate
from .symbolic import Word, shift

__all__ = [
    "CycleError",
    "CycleSolution",
    "cycle_matrices",
    "word_matrix",
    "varrho",
    "solve_cycle",
    "s_formula_residual",
]

ADMISSIBLE_TOL = 1e-9
S_FORMULA_RTOL = 1e-8
STABLE_GAP = 1e-9


class CycleError(ValueError):
    pass


def word_matrix(A_L, A_R, w: Word):
    """Product of the half-map matrices along *w*, first symbol applied first."""
    M = np.eye(A_L.shape[0])
    for sym in str(w):
        M = (A_L if sym == "L" else A_R) @ M
    return M


def cycle_matrices(A_L, A_R, w: Word):
    """(M_S, P_S) built by one pass over the word."""
    n = A_L.shape[0]
    M = np.eye(n)
    P = np.zeros((n, n))
    for sym in str(w):
        A = A_L if sym == "L" else A_R
        M = A @ M
        P = A @ P + np.eye(n)
    return M, P


def varrho(A_L, A_R):
    """Row vector e1^T adj(I - A_L); equal with A_R in its place."""
    n = A_L.shape[0]
    return linalg.adj(np.eye(n) - A_L)[0, :].copy()


@dataclass(frozen=True)
class CycleSolution:
    word: Word
    points: np.ndarray  # shape (n, N), points[i] = x_i
    s: np.ndarray  # s_i = e1^T x_i
    margin: float  # min over i of the signed admissibility margin
    admissible: bool
    M: np.ndarray  # M_S
    P: np.ndarray  # P_S
    det_ImM: float
    multipliers: np.ndarray  # eigenvalues of M_S
    stable: bool

    @property
    def period(self):
        return len(self.word)


def solve_cycle(fam: MapFamily, p: ParamPoint, w: Word, tol=ADMISSIBLE_TOL):
    A_L, A_R, B = evaluate(fam, p)
    M, P = cycle_matrices(A_L, A_R, w)
    n = len(w)
    N = fam.dim
    ImM = np.eye(N) - M
    det_ImM = linalg.det(ImM)
    try:
        x0 = np.linalg.solve(ImM, P @ B * p.mu)
    except np.linalg.LinAlgError:
        raise CycleError(f"I - M_S singular for word {w}") from None

    points = np.empty((n, N))
    points[0] = x0
    x = x0
    for i, sym in enumerate(str(w)[:-1]):
        A = A_L if sym == "L" else A_R
        x = A @ x + B * p.mu
        points[i + 1] = x
    s = points[:, 0].copy()

    margin = min(
        (-s[i] if sym == "L" else s[i]) for i, sym in enumerate(str(w))
    )
    multipliers = linalg.eigs(M)
    stable = bool(np.all(np.abs(multipliers) < 1.0 - STABLE_GAP))
    return CycleSolution(
        word=w,
        points=points,
        s=s,
        margin=float(margin),
        admissible=margin >= -tol,
        M=M,
        P=P,
        det_ImM=float(det_ImM),
        multipliers=multipliers,
        stable=stable,
    )


def s_formula_residual(fam: MapFamily, p: ParamPoint, sol: CycleSolution):
    """Max relative mismatch of det(I-M_S) s_i = det(P_{S^(i)}) varrho^T B mu."""
    A_L, A_R, B = evaluate(fam, p)
    rho_B_mu = float(varrho(A_L, A_R) @ B) * p.mu
    worst = 0.0
    scale = max(1.0, float(np.max(np.abs(sol.s))), abs(sol.det_ImM))
    for i in range(len(sol.word)):
        _, P_i = cycle_matrices(A_L, A_R, shift(sol.word, i))
        lhs = sol.det_ImM * sol.s[i]
        rhs = linalg.det(P_i) * rho_B_mu
        worst = max(worst, abs(lhs - rhs) / max(scale, abs(rhs)))
    return worst
