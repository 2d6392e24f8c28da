"""Consistency identities satisfied at a shrinking point.

Every quantity below is computable from ShrinkData alone.  The checks
tie together the boundary eigenvectors u_j, v_j at the four indices
j in {0, (ell-1)d, ell d, -d}, the word partition S = XY = Xhat Yhat,
the determinants a, b and the non-unit eigenvalue product c.  They are
used by the `verify` subcommand and by the acceptance tests.
"""

from __future__ import annotations

import numpy as np

from .cycles import word_matrix
from .maps import evaluate
from .shrink import ShrinkData
from .symbolic import flip, partitions

__all__ = ["verify_shrink", "IDENTITY_TOL"]

IDENTITY_TOL = 1e-8


def _relerr(got, want):
    got = np.asarray(got, dtype=float)
    want = np.asarray(want, dtype=float)
    scale = max(1.0, float(np.max(np.abs(want))))
    return float(np.max(np.abs(got - want))) / scale


def verify_shrink(data: ShrinkData):
    """Residuals of the shrinking-point identity suite, as a dict.

    All entries are relative errors except the boolean-valued sign
    checks, which are reported as 0.0 (pass) or 1.0 (fail).
    """
    spec = data.spec
    n, d, ell = spec.n, spec.d, spec.ell
    ld = ell * d % n
    i_lm1 = (ell - 1) * d % n
    i_md = (-d) % n
    t = data.t
    t_d, t_lm1 = t[d % n], t[i_lm1]
    t_lp1, t_md = t[(ell + 1) * d % n], t[i_md]
    u0, v0 = data.uv[0]
    u_lm1, v_lm1 = data.uv[i_lm1]
    u_ld, v_ld = data.uv[ld]
    u_md, v_md = data.uv[i_md]

    A_L, A_R, B = evaluate(data.fam, data.point)
    parts = partitions(spec)
    mat = lambda w: word_matrix(A_L, A_R, w)
    M_X, M_Y = mat(parts.X), mat(parts.Y)
    M_Xhat, M_Yhat = mat(parts.Xhat), mat(parts.Yhat)
    M_Xchk, M_Ychk = mat(parts.Xcheck), mat(parts.Ycheck)
    M_X0, M_Y0 = mat(flip(parts.X, 0)), mat(flip(parts.Y, 0))

    res = {}

    # eigenvector transport around the four boundary indices
    res["v_ld_from_v0"] = _relerr(v_ld, (t_d / t_lp1) * (M_X @ v0))
    res["u_ld_from_u0"] = _relerr(u_ld, (t_lp1 / t_d) * (u0 @ M_Y))
    res["v0_from_v_ld"] = _relerr(v0, (t_lp1 / t_d) * (M_Y @ v_ld))
    res["u0_from_u_ld"] = _relerr(u0, (t_d / t_lp1) * (u_ld @ M_X))
    res["v_lm1_from_v_md"] = _relerr(v_lm1, (t_md / t_lm1) * (M_X0 @ v_md))
    res["u_lm1_from_u_md"] = _relerr(u_lm1, (t_lm1 / t_md) * (u_md @ M_Y0))
    res["v_md_from_v_lm1"] = _relerr(v_md, (t_lm1 / t_md) * (M_Y0 @ v_lm1))
    res["u_md_from_u_lm1"] = _relerr(u_md, (t_md / t_lm1) * (u_lm1 @ M_X0))
    res["v_md_from_v0"] = _relerr(v_md, -(t_d / t_md) * (M_Xhat @ v0))
    res["u_md_from_u0"] = _relerr(u_md, -(t_md / t_d) * (u0 @ M_Yhat))
    res["v0_from_v_md"] = _relerr(v0, -(t_md / t_d) * (M_Yhat @ v_md))
    res["u0_from_u_md"] = _relerr(u0, -(t_d / t_md) * (u_md @ M_Xhat))
    res["v_lm1_from_v_ld"] = _relerr(v_lm1, -(t_lp1 / t_lm1) * (M_Xchk @ v_ld))
    res["u_lm1_from_u_ld"] = _relerr(u_lm1, -(t_lm1 / t_lp1) * (u_ld @ M_Ychk))
    res["v_ld_from_v_lm1"] = _relerr(v_ld, -(t_lm1 / t_lp1) * (M_Ychk @ v_lm1))
    res["u_ld_from_u_lm1"] = _relerr(u_ld, -(t_lp1 / t_lm1) * (u_lm1 @ M_Xchk))

    # both decompositions of 1/c
    inv_c = 1.0 / data.c
    res["inv_c_form1"] = _relerr(
        float(u0 @ v_md) / data.a + float(u_ld @ v_lm1) / data.b, inv_c)
    res["inv_c_form2"] = _relerr(
        float(u_lm1 @ v_ld) / data.a + float(u_md @ v0) / data.b, inv_c)

    # determinant ratio from the four t values
    res["a_over_b"] = _relerr(data.a / data.b,
                              -(t_d * t_lm1) / (t_md * t_lp1))

    # v_j from consecutive cycle points
    y = data.y
    for name, j in (("v0", 0), ("v_lm1", i_lm1), ("v_ld", ld), ("v_md", i_md)):
        jp = (j + d) % n
        vref = (y[jp] - y[j]) / (t[jp] - t[j])
        res[f"{name}_from_points"] = _relerr(data.uv[j][1], vref)

    # sign checks: 0.0 = pass
    res["t_sign_pattern"] = 0.0 if data.t_signs_ok else 1.0
    res["ab_negative"] = 0.0 if data.a * data.b < 0.0 else 1.0
    return res
