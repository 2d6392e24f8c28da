"""Leading-order predictions for mode-locking regions near a shrinking point.

In scaled polar coordinates

    eta = |c t_d / a| r cos(theta),
    nu  = |c t_{(ell-1)d} / a| r sin(theta),

the boundaries of the nearby regions collapse onto the curve
r = Gamma(theta) / k, and the region with symbolic itinerary
G^side[k, chi] sits at the angle theta^side_chi fixed by the kappa
coefficient of the shrinking point.  predict() evaluates these
formulas and maps the result back to the family's slice parameters
through the inverse Jacobian of (eta, nu).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .shrink import ShrinkData, ShrinkError, analyze, find_shrink, kappa
from .symbolic import NearbySpec

__all__ = [
    "Gamma",
    "theta_angle",
    "Prediction",
    "predict",
    "predict_table",
    "NearbyResult",
    "find_nearby",
    "DEGENERATE_KAPPA_TOL",
    "THETA_CLIP",
]

DEGENERATE_KAPPA_TOL = 1e-10
THETA_CLIP = 1e-3
_TAYLOR_WINDOW = 1e-6
_SQRT2 = math.sqrt(2.0)
_GAMMA_C2 = 5.0 * _SQRT2 / 6.0

_HALF_PI = math.pi / 2.0


def Gamma(theta):
    """(ln cos - ln sin)/(cos - sin), extended with period pi/2.

    Near theta = pi/4 (mod pi/2) the quotient is evaluated by its
    three-term Taylor polynomial to avoid 0/0 cancellation.
    """
    u = math.fmod(theta, _HALF_PI)
    if u < 0.0:
        u += _HALF_PI
    if u <= 0.0 or u >= _HALF_PI:
        raise ValueError(f"Gamma diverges at multiples of pi/2: theta={theta!r}")
    c, s = math.cos(u), math.sin(u)
    if abs(c - s) < _TAYLOR_WINDOW:
        du = u - math.pi / 4.0
        return _SQRT2 + _GAMMA_C2 * du * du
    return (math.log(c) - math.log(s)) / (c - s)


def _quadrant_offset(side, a):
    # which quadrant the region sits in: (pi/2, pi) gets +pi,
    # (3pi/2, 2pi) gets +2pi on top of the principal arctangent
    if (side == "plus") == (a < 0.0):
        return 2.0 * math.pi
    return math.pi


def theta_angle(data: ShrinkData, side, chi, kap=None):
    """Angle theta^side_chi of the G^side[k, chi] regions, in (0, 2pi)."""
    if kap is None:
        kap = kappa(data, side, chi)
    t_d = data.t_at(1)
    t_lm1 = data.t_at(data.spec.ell - 1)
    t_lp1 = data.t_at(data.spec.ell + 1)
    t_md = data.t_at(-1)
    ak = abs(kap)
    if ak <= DEGENERATE_KAPPA_TOL:
        raise ValueError(f"kappa^{side}_{chi} is degenerate: {kap!r}")
    if side == "plus":
        if chi <= -1:
            raw = math.atan(t_lp1 / (t_lm1 * ak))
        else:
            raw = math.atan(t_d / (t_md * ak))
    elif side == "minus":
        if chi <= 0:
            raw = math.atan(t_d * ak / t_md)
        else:
            raw = math.atan(t_lp1 * ak / t_lm1)
    else:
        raise ValueError(f"side must be 'plus' or 'minus', got {side!r}")
    # the ratios above are negative by the t sign pattern, so raw is the
    # principal value in (-pi/2, 0) and the quadrant offset lands theta
    # in (pi/2, pi) or (3pi/2, 2pi)
    return raw + _quadrant_offset(side, data.a)


@dataclass(frozen=True)
class Prediction:
    side: str
    chi: int
    k: int
    kappa: float
    kind: str  # shrinking-point | multiplier-minus1 | degenerate
    theta: float
    eta: float
    nu: float
    xi: dict  # predicted slice-parameter values


def predict(data: ShrinkData, jacobian, side, chi, k):
    """Leading-order location of the G^side[k, chi] feature.

    *jacobian* is the 2x2 matrix d(eta, nu)/d(slice params) at the
    shrinking point (from the Newton solve).  When kappa > 0 the
    predicted feature is the nearby shrinking point; when kappa < 0 it
    is the point where the region boundary carries a multiplier -1.
    """
    kap = kappa(data, side, chi)
    if abs(kap) <= DEGENERATE_KAPPA_TOL:
        kind = "degenerate"
    elif kap > 0.0:
        kind = "shrinking-point"
    else:
        kind = "multiplier-minus1"
    theta = theta_angle(data, side, chi, kap=kap)
    reduced = math.fmod(theta, _HALF_PI)
    if reduced < 0.0:
        reduced += _HALF_PI
    clipped = min(max(reduced, THETA_CLIP), _HALF_PI - THETA_CLIP)
    theta_eff = theta + (clipped - reduced)
    r = Gamma(theta_eff) / k
    scale_eta = abs(data.c * data.t_at(1) / data.a)
    scale_nu = abs(data.c * data.t_at(data.spec.ell - 1) / data.a)
    eta = scale_eta * r * math.cos(theta_eff)
    nu = scale_nu * r * math.sin(theta_eff)
    delta = np.linalg.solve(np.asarray(jacobian, dtype=float), [eta, nu])
    names = data.fam.slice_params
    xi = {
        name: data.point.xi[name] + float(delta[col])
        for col, name in enumerate(names)
    }
    return Prediction(side=side, chi=chi, k=k, kappa=kap, kind=kind,
                      theta=theta_eff, eta=eta, nu=nu, xi=xi)


def predict_table(data: ShrinkData, jacobian, k, chi_max=2):
    """Predictions for both sides over the admissible chi window.

    The plus side covers -chi_max <= chi < chi_max and the minus side
    -chi_max < chi <= chi_max, matching the index ranges of the
    distinct nearby regions.
    """
    rows = []
    for chi in range(-chi_max, chi_max):
        rows.append(predict(data, jacobian, "plus", chi, k))
    for chi in range(-chi_max + 1, chi_max + 1):
        rows.append(predict(data, jacobian, "minus", chi, k))
    return rows


@dataclass(frozen=True)
class NearbyResult:
    side: str
    chi: int
    k: int
    found: bool
    reason: str  # empty when found, otherwise why not
    xi: dict
    eta: float
    nu: float
    sgn_a_match: bool
    det_jtilde: float
    max_other_multiplier: float
    data: object  # ShrinkData of the nearby point, or None


def find_nearby(data: ShrinkData, jacobian, side, chi, k):
    """Solve for the G^side[k, chi] shrinking point seeded by predict().

    Failure to converge, or a seed whose kappa marks the feature as a
    multiplier -1 point instead, is a classified outcome (found=False
    with a reason), not an exception.
    """
    pred = predict(data, jacobian, side, chi, k)
    nan = float("nan")
    base = dict(side=side, chi=chi, k=k, xi=pred.xi, eta=nan, nu=nan,
                sgn_a_match=False, det_jtilde=nan,
                max_other_multiplier=nan, data=None)
    if pred.kind != "shrinking-point":
        return NearbyResult(found=False, reason=f"kappa kind {pred.kind}", **base)
    nspec = NearbySpec(side, k, chi).resolve(data.spec)
    p0 = data.point.with_values(**pred.xi)
    try:
        res = find_shrink(data.fam, p0, nspec)
    except ShrinkError as err:
        return NearbyResult(found=False, reason=str(err), **base)
    if not res.converged:
        return NearbyResult(found=False, reason="newton did not converge", **base)
    try:
        ndata = analyze(data.fam, res.point, nspec)
    except ShrinkError as err:
        return NearbyResult(found=False, reason=f"analysis failed: {err}", **base)
    base.update(
        xi={name: res.point.xi[name] for name in data.fam.slice_params},
        eta=res.eta, nu=res.nu,
        sgn_a_match=(ndata.a > 0) == (data.a > 0),
        det_jtilde=float(np.linalg.det(res.jacobian)),
        max_other_multiplier=ndata.sigma,
        data=ndata,
    )
    return NearbyResult(found=True, reason="", **base)
