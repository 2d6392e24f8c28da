"""Continuation of cycle-boundary curves in a 2D parameter slice.

A boundary of the mode-locking region of the word S is a curve where
the cycle point x_i hits the switching manifold, i.e. s_i = 0, which
is equivalent to det(P_{S^(i)}) = 0 away from det(I - M_S) = 0.  The
tracer follows that curve by pseudo-arclength continuation with a
Newton corrector, adapting its step and watching two event functions:
det(I - M_S) (zero at shrinking points) and the multiplier nearest -1
(zero of m + 1 at period-doubling boundaries).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .cycles import cycle_matrices
from .maps import MapFamily, ParamPoint, evaluate
from .symbolic import Word, shift

__all__ = [
    "TraceError",
    "TracePoint",
    "BoundaryTrace",
    "trace_boundary",
    "STEP_MIN",
    "STEP_MAX",
]

STEP_MIN = 1e-6
STEP_MAX = 1e-2
_FD_REL = 1e-7
_CORRECTOR_TOL = 1e-11
_CORRECTOR_LOOSE = 1e-8
_CORRECTOR_MAX = 12
_CLOSURE_TOL = 1e-6


class TraceError(RuntimeError):
    pass


@dataclass(frozen=True)
class TracePoint:
    step: int
    x: float
    y: float
    detP: float
    detImM: float
    mult_near_minus1: float  # real part of the multiplier nearest -1
    event: str = ""  # "", "shrinking-point", "period-doubling"


@dataclass(frozen=True)
class BoundaryTrace:
    word: Word
    index: int
    points: list
    closed: bool


class _Curve:
    """det(P_{S^(i)}) = 0 as a scalar function of the two slice params."""

    def __init__(self, fam, base, word, index):
        self.fam = fam
        self.base = base
        self.names = fam.slice_params
        self.word = shift(word, index)

    def _point(self, xy):
        return self.base.with_values(**dict(zip(self.names, map(float, xy))))

    def _matrices(self, xy):
        A_L, A_R, B = evaluate(self.fam, self._point(xy))
        return cycle_matrices(A_L, A_R, self.word)

    def monitors(self, xy):
        M, P = self._matrices(xy)
        detP = float(linalg.det(P))
        detImM = float(linalg.det(np.eye(self.fam.dim) - M))
        mults = linalg.eigs(M)
        near = mults[int(np.argmin(np.abs(mults + 1.0)))]
        return detP, detImM, float(near.real)

    def g(self, xy):
        _, P = self._matrices(xy)
        return float(linalg.det(P))

    def grad(self, xy):
        out = np.empty(2)
        for j in range(2):
            h = _FD_REL * (1.0 + abs(xy[j]))
            hi = xy.copy()
            hi[j] += h
            lo = xy.copy()
            lo[j] -= h
            out[j] = (self.g(hi) - self.g(lo)) / (2 * h)
        return out

    def correct(self, xy, tangent=None):
        """Newton back onto g = 0; movement confined normal to *tangent*.

        det(P) varies over many orders of magnitude along long words,
        so convergence is judged by the Newton step length, not the
        residual.
        """
        xy = np.asarray(xy, dtype=float)
        for _ in range(_CORRECTOR_MAX):
            val = self.g(xy)
            grad = self.grad(xy)
            if tangent is None:
                denom = float(grad @ grad)
                if denom == 0.0:
                    raise TraceError("vanishing gradient in corrector")
                step = -val * grad / denom
            else:
                J = np.vstack([grad, tangent])
                try:
                    step = np.linalg.solve(J, [-val, 0.0])
                except np.linalg.LinAlgError:
                    raise TraceError("singular corrector system") from None
            xy = xy + step
            last = np.linalg.norm(step)
            if last <= _CORRECTOR_TOL * (1.0 + np.linalg.norm(xy)):
                return xy
        # long words evaluate det(P) with a sizable cancellation noise
        # floor; accept a stagnated corrector that is already that close
        if last <= _CORRECTOR_LOOSE * (1.0 + np.linalg.norm(xy)):
            return xy
        raise TraceError("corrector did not converge")


def _tangent(curve, xy, prev=None):
    grad = curve.grad(xy)
    norm = np.linalg.norm(grad)
    if norm == 0.0:
        raise TraceError("vanishing gradient: tangent undefined")
    t = np.array([-grad[1], grad[0]]) / norm
    if prev is not None and t @ prev < 0:
        t = -t
    return t


def _in_window(xy, window):
    (xlo, xhi), (ylo, yhi) = window
    return xlo <= xy[0] <= xhi and ylo <= xy[1] <= yhi


def trace_boundary(fam: MapFamily, base: ParamPoint, word: Word, index: int,
                   start, window, max_steps=20000, step0=1e-3):
    """Trace det(P_{word^(index)}) = 0 through *start* within *window*.

    *start* is an (x, y) seed in the slice parameters; it is projected
    onto the curve first.  *window* is ((xlo, xhi), (ylo, yhi)); the
    trace runs in both directions until it leaves the window, closes
    up, or exhausts max_steps.  Raises TraceError when the corrector
    diverges or the adaptive step underflows.
    """
    curve = _Curve(fam, base, word, index)
    x0 = curve.correct(np.asarray(start, dtype=float))
    if not _in_window(x0, window):
        raise TraceError("projected start lies outside the window")

    def run(direction):
        pts = []
        xy = x0.copy()
        tan = _tangent(curve, xy) * direction
        h = step0
        closed = False
        while len(pts) < max_steps:
            moved = None
            while True:
                try:
                    pred = xy + h * tan
                    moved = curve.correct(pred, tangent=tan)
                    break
                except TraceError:
                    h *= 0.5
                    if h < STEP_MIN:
                        raise TraceError("step underflow") from None
            prev_xy = xy
            xy = moved
            tan = _tangent(curve, xy, prev=tan)
            h = min(h * 1.3, STEP_MAX)
            if not _in_window(xy, window):
                break
            pts.append(xy.copy())
            if len(pts) > 3 and np.linalg.norm(xy - x0) < _CLOSURE_TOL:
                closed = True
                break
        return pts, closed

    fwd, closed = run(+1.0)
    if closed:
        arcs = [[x0] + fwd]
    else:
        bwd, closed_b = run(-1.0)
        closed = closed_b
        arcs = [list(reversed(bwd)) + [x0] + fwd]

    points = []
    prev = None
    stepno = 0
    for xy in arcs[0]:
        detP, detImM, mreal = curve.monitors(xy)
        if prev is not None:
            pxy, pdetImM, pm = prev
            if pdetImM * detImM < 0.0:
                rxy, rmon = _bisect_on_curve(
                    curve, pxy, xy, pdetImM, lambda mon: mon[1])
                points.append(TracePoint(
                    step=stepno, x=float(rxy[0]), y=float(rxy[1]),
                    detP=rmon[0], detImM=rmon[1], mult_near_minus1=rmon[2],
                    event="shrinking-point"))
                stepno += 1
            elif (pm + 1.0) * (mreal + 1.0) < 0.0:
                rxy, rmon = _bisect_on_curve(
                    curve, pxy, xy, pm + 1.0, lambda mon: mon[2] + 1.0)
                # the nearest-to-(-1) multiplier can switch identity and
                # jump across -1 without a true crossing; only a genuine
                # crossing bisects down to the -1 axis itself
                if abs(rmon[2] + 1.0) < 1e-6:
                    points.append(TracePoint(
                        step=stepno, x=float(rxy[0]), y=float(rxy[1]),
                        detP=rmon[0], detImM=rmon[1],
                        mult_near_minus1=rmon[2],
                        event="period-doubling"))
                    stepno += 1
        points.append(TracePoint(step=stepno, x=float(xy[0]), y=float(xy[1]),
                                 detP=detP, detImM=detImM,
                                 mult_near_minus1=mreal))
        prev = (xy, detImM, mreal)
        stepno += 1
    return BoundaryTrace(word=curve.word, index=index, points=points,
                         closed=closed)


def _bisect_on_curve(curve, a, b, fa, pick):
    """Refine a sign change of pick(monitors) between on-curve points."""
    for _ in range(60):
        mid = curve.correct(0.5 * (a + b))
        fm = pick(curve.monitors(mid))
        if fa * fm <= 0.0:
            b = mid
        else:
            a, fa = mid, fm
        if np.linalg.norm(b - a) < 1e-13 * (1.0 + np.linalg.norm(a)):
            break
    mid = curve.correct(0.5 * (a + b))
    return mid, curve.monitors(mid)
