import numpy as np
import pytest

from modelock.cycles import cycle_matrices
from modelock.maps import evaluate, get_family
from modelock.symbolic import NearbySpec, RotSpec, build_nearby
from modelock.trace import TraceError, trace_boundary

WINDOW = ((-2.2, -1.8), (0.1, 0.3))


@pytest.fixture(scope="module")
def traced():
    fam = get_family("bcnf3")
    base = fam.default_point()
    word = build_nearby(RotSpec(2, 2, 5), NearbySpec("plus", 10, 0))
    return fam, base, word, trace_boundary(
        fam, base, word, 0, (-2.07, 0.163), WINDOW, max_steps=600)


def test_points_lie_on_zero_set(traced):
    fam, base, word, bt = traced
    for pt in bt.points:
        p = base.with_values(tauR=pt.x, deltaL=pt.y)
        A_L, A_R, B = evaluate(fam, p)
        _, P = cycle_matrices(A_L, A_R, word)
        from modelock import linalg
        # det P over this window reaches 1e5; on-curve points sit at the
        # cancellation floor of the determinant evaluation
        assert abs(linalg.det(P)) < 1e-4
        assert pt.detP == pytest.approx(float(linalg.det(P)), abs=1e-12)


def test_points_stay_in_window(traced):
    _, _, _, bt = traced
    (xlo, xhi), (ylo, yhi) = WINDOW
    for pt in bt.points:
        assert xlo - 1e-9 <= pt.x <= xhi + 1e-9
        assert ylo - 1e-9 <= pt.y <= yhi + 1e-9


def test_steps_are_monotone_and_events_marked(traced):
    _, _, _, bt = traced
    steps = [pt.step for pt in bt.points]
    assert steps == sorted(steps)
    kinds = {pt.event for pt in bt.points if pt.event}
    # kappa-plus at chi = 0 is negative at this point, so the boundary
    # passes period-doubling (multiplier -1) events, not shrinking points
    assert "period-doubling" in kinds
    assert "shrinking-point" not in kinds
    for pt in bt.points:
        if pt.event == "period-doubling":
            assert abs(pt.mult_near_minus1 + 1.0) < 1e-6


def test_consecutive_points_are_close(traced):
    _, _, _, bt = traced
    pts = [(p.x, p.y) for p in bt.points]
    gaps = [np.hypot(x1 - x0, y1 - y0)
            for (x0, y0), (x1, y1) in zip(pts, pts[1:])]
    assert max(gaps) < 2e-2


def test_bad_start_raises():
    fam = get_family("bcnf3")
    base = fam.default_point()
    word = build_nearby(RotSpec(2, 2, 5), NearbySpec("plus", 10, 0))
    with pytest.raises(TraceError):
        trace_boundary(fam, base, word, 0, (50.0, 50.0),
                       ((49.0, 51.0), (49.0, 51.0)), max_steps=50)
