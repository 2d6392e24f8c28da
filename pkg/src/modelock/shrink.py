"""Location and analysis of shrinking points.

A shrinking point of the rotational family F[ell,m,n] is a parameter
point where the border-collision coordinates

    eta = s_0 of the S^(0-flip) cycle,
    nu  = s_{ell*d} of the S^(0-flip) cycle,

vanish simultaneously.  find_shrink runs a two-parameter Newton method
on (eta, nu) over the family's slice parameters.  analyze() then
extracts the scalar data (a, b, c, sigma, boundary eigenvectors and
kappa coefficients) that drive the size and orientation predictions
for nearby mode-locking regions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .cycles import CycleError, cycle_matrices, solve_cycle, word_matrix
from .maps import MapFamily, ParamPoint, evaluate
from .symbolic import RotSpec, Word, build_rotational, flip, shift

__all__ = [
    "ShrinkError",
    "NewtonResult",
    "ShrinkData",
    "SlowManifold",
    "eta_nu",
    "fd_jacobian",
    "find_shrink",
    "analyze",
    "kappa",
    "kappa_table",
    "slow_manifold",
    "KAPPA_CHI_MAX",
]

NEWTON_TOL = 1e-12
NEWTON_MAX_ITER = 50
FD_REL_STEP = 1e-6
KAPPA_CHI_MAX = 8
ZERO_S_TOL = 1e-8


class ShrinkError(RuntimeError):
    pass


def eta_nu(fam: MapFamily, p: ParamPoint, spec: RotSpec):
    """Border-collision coordinates (eta, nu) of F[ell,m,n] at *p*."""
    w0 = flip(build_rotational(spec), 0)
    sol = solve_cycle(fam, p, w0)
    ld = spec.ell * spec.d % spec.n
    return float(sol.s[0]), float(sol.s[ld])


def _steps(p: ParamPoint, names):
    return [FD_REL_STEP * (1.0 + abs(p.xi[name])) for name in names]


def fd_jacobian(fam: MapFamily, p: ParamPoint, spec: RotSpec):
    """Central-difference Jacobian of (eta, nu) over the slice parameters."""
    names = fam.slice_params
    J = np.empty((2, 2))
    for col, (name, h) in enumerate(zip(names, _steps(p, names))):
        hi = eta_nu(fam, p.with_values(**{name: p.xi[name] + h}), spec)
        lo = eta_nu(fam, p.with_values(**{name: p.xi[name] - h}), spec)
        J[0, col] = (hi[0] - lo[0]) / (2 * h)
        J[1, col] = (hi[1] - lo[1]) / (2 * h)
    return J


@dataclass(frozen=True)
class NewtonResult:
    point: ParamPoint
    eta: float
    nu: float
    jacobian: np.ndarray
    iterations: int
    converged: bool

    @property
    def residual(self):
        return max(abs(self.eta), abs(self.nu))


def find_shrink(fam, p0, spec, max_iter=NEWTON_MAX_ITER, tol=NEWTON_TOL):
    """Newton iteration on (eta, nu) = 0 starting from *p0*."""
    names = fam.slice_params
    p = p0
    eta, nu = eta_nu(fam, p, spec)
    J = fd_jacobian(fam, p, spec)
    it = 0
    while max(abs(eta), abs(nu)) > tol and it < max_iter:
        try:
            delta = np.linalg.solve(J, [eta, nu])
        except np.linalg.LinAlgError:
            raise ShrinkError(
                f"singular (eta, nu) Jacobian at iteration {it}"
            ) from None
        p = p.with_values(
            **{name: p.xi[name] - delta[col] for col, name in enumerate(names)}
        )
        try:
            eta, nu = eta_nu(fam, p, spec)
        except CycleError as err:
            raise ShrinkError(f"cycle solve failed during Newton: {err}") from None
        J = fd_jacobian(fam, p, spec)
        it += 1
    return NewtonResult(
        point=p,
        eta=eta,
        nu=nu,
        jacobian=J,
        iterations=it,
        converged=max(abs(eta), abs(nu)) <= tol,
    )


@dataclass(frozen=True)
class ShrinkData:
    fam: MapFamily
    point: ParamPoint
    spec: RotSpec
    word: Word  # S = F[ell, m, n]
    y: np.ndarray  # S^(0-flip)-cycle points
    t: np.ndarray  # t_i = e1^T y_i
    a: float  # det(I - M_{S^(0-flip)})
    b: float  # det(I - M_{S^(ld-flip)})
    c: float  # product of the non-unit part of eig(I - M_S)
    sigma: float  # largest non-unit multiplier modulus of M_S
    multipliers: np.ndarray  # eigenvalues of M_S
    uv: dict  # j -> (u_j, v_j) at j in {0, (ell-1)d, ell d, -d} mod n
    t_signs_ok: bool
    boundary_indices: tuple  # (0, ell*d mod n)

    def t_at(self, offset):
        """t at index offset*d mod n for integer offset."""
        return float(self.t[(offset * self.spec.d) % self.spec.n])


def _mat_power_apply(M, k, v):
    out = v
    for _ in range(k):
        out = M @ out
    return out


def analyze(fam: MapFamily, p: ParamPoint, spec: RotSpec, strict=True):
    """Scalar and eigenvector data of the shrinking point at *p*.

    *p* should already satisfy eta = nu = 0 to Newton tolerance; with
    strict=True the sign pattern of t at the four boundary-adjacent
    indices is enforced, as is s_i = 0 exactly at indices 0 and ell*d.
    """
    A_L, A_R, B = evaluate(fam, p)
    S = build_rotational(spec)
    n, d, ell = spec.n, spec.d, spec.ell
    ld = ell * d % n

    S0 = flip(S, 0)
    sol0 = solve_cycle(fam, p, S0)
    y = sol0.points
    t = sol0.s.copy()

    zero_idx = {i for i in range(n) if abs(t[i]) <= ZERO_S_TOL}
    if strict and zero_idx != {0, ld}:
        raise ShrinkError(
            f"expected s = 0 exactly at indices {{0, {ld}}}, got {sorted(zero_idx)}"
        )

    idx_d = d % n
    idx_lm1 = (ell - 1) * d % n
    idx_lp1 = (ell + 1) * d % n
    idx_md = (-d) % n
    t_signs_ok = (
        t[idx_d] < 0 and t[idx_lm1] < 0 and t[idx_lp1] > 0 and t[idx_md] > 0
    )
    if strict and not t_signs_ok:
        raise ShrinkError(
            "sign pattern of t at the boundary-adjacent indices is wrong: "
            f"t_d={t[idx_d]:.3e} t_(l-1)d={t[idx_lm1]:.3e} "
            f"t_(l+1)d={t[idx_lp1]:.3e} t_-d={t[idx_md]:.3e}"
        )

    N = fam.dim
    a = float(linalg.det(np.eye(N) - word_matrix(A_L, A_R, S0)))
    b = float(linalg.det(np.eye(N) - word_matrix(A_L, A_R, flip(S, ld))))
    M_S = word_matrix(A_L, A_R, S)
    mults = linalg.eigs(M_S)
    unit_pos = int(np.argmin(np.abs(mults - 1.0)))
    others = np.delete(mults, unit_pos)
    c = float(np.real(np.prod(1.0 - others))) if len(others) else 1.0
    sigma = float(np.max(np.abs(others))) if len(others) else 0.0

    uv = {}
    for j in (0, idx_lm1, ld, idx_md):
        M_j = word_matrix(A_L, A_R, shift(S, j))
        v, u = linalg.unit_eig_pair(M_j)
        uv[j] = (u, v)

    return ShrinkData(
        fam=fam,
        point=p,
        spec=spec,
        word=S,
        y=y,
        t=t,
        a=a,
        b=b,
        c=c,
        sigma=sigma,
        multipliers=mults,
        uv=uv,
        t_signs_ok=bool(t_signs_ok),
        boundary_indices=(0, ld),
    )


def kappa(data: ShrinkData, side, chi):
    """Boundary coupling coefficient kappa^side_chi, |chi| <= KAPPA_CHI_MAX."""
    if abs(chi) > KAPPA_CHI_MAX:
        raise ValueError(f"|chi| must be <= {KAPPA_CHI_MAX}, got {chi}")
    spec = data.spec
    n, d, ell = spec.n, spec.d, spec.ell
    ld = ell * d % n
    idx_lm1 = (ell - 1) * d % n
    idx_md = (-d) % n
    A_L, A_R, _ = evaluate(data.fam, data.point)
    S = data.word
    if side == "plus":
        if chi <= -1:
            M = word_matrix(A_L, A_R, shift(flip(S, 0), ld))
            u = data.uv[ld][0]
            v = data.uv[idx_lm1][1]
            return float(u @ _mat_power_apply(M, -chi - 1, v))
        M = word_matrix(A_L, A_R, flip(S, ld))
        u = data.uv[0][0]
        v = data.uv[idx_md][1]
        return float(u @ _mat_power_apply(M, chi, v))
    if side == "minus":
        if chi <= 0:
            M = word_matrix(A_L, A_R, flip(S, 0))
            u = data.uv[idx_md][0]
            v = data.uv[0][1]
            return float(u @ _mat_power_apply(M, -chi, v))
        M = word_matrix(A_L, A_R, shift(flip(S, ld), ld))
        u = data.uv[idx_lm1][0]
        v = data.uv[ld][1]
        return float(u @ _mat_power_apply(M, chi - 1, v))
    raise ValueError(f"side must be 'plus' or 'minus', got {side!r}")


def kappa_table(data: ShrinkData, chi_max=KAPPA_CHI_MAX):
    """{(side, chi): kappa} for |chi| <= chi_max."""
    return {
        (side, chi): kappa(data, side, chi)
        for side in ("plus", "minus")
        for chi in range(-chi_max, chi_max + 1)
    }


@dataclass(frozen=True)
class SlowManifold:
    index: int
    lam: float  # multiplier of M_S closest to 1
    zeta: np.ndarray  # right eigenvector, e1^T zeta = 1
    omega: np.ndarray  # left eigenvector, omega^T zeta = 1
    phi: np.ndarray  # base point of the slow line, e1^T phi = 0
    gamma: float  # drift along zeta per period


def slow_manifold(fam: MapFamily, p: ParamPoint, spec: RotSpec, j=0):
    """Slow direction of M_{S^(j)} near a shrinking point.

    Solves the bordered system ((I-M)(I - e1 e1^T) + zeta e1^T) w = P B mu
    whose determinant stays away from zero as the unit multiplier is
    approached; then phi = (I - e1 e1^T) w and gamma = e1^T w, so that
    one period maps phi + h zeta to phi + (h lam + gamma) zeta.
    """
    A_L, A_R, B = evaluate(fam, p)
    S = build_rotational(spec)
    Sj = shift(S, j % spec.n)
    M, P = cycle_matrices(A_L, A_R, Sj)
    N = fam.dim
    mults = linalg.eigs(M)
    lam = mults[int(np.argmin(np.abs(mults - 1.0)))]
    if abs(lam.imag) > 1e-8:
        raise ShrinkError(f"multiplier nearest 1 is not real: {lam}")
    lam = float(lam.real)
    zeta, omega = linalg.unit_eig_pair(M, target=lam)
    E = np.eye(N)
    E1 = np.zeros((N, N))
    E1[0, 0] = 1.0
    bordered = (E - M) @ (E - E1) + np.outer(zeta, E[0])
    w = np.linalg.solve(bordered, P @ B * p.mu)
    phi = w.copy()
    gamma = float(w[0])
    phi[0] = 0.0
    return SlowManifold(index=j % spec.n, lam=lam, zeta=zeta, omega=omega,
                        phi=phi, gamma=gamma)
