"""Shared fixtures: solved shrinking points for the three builtin families."""

import pytest

from modelock.maps import get_family
from modelock.shrink import analyze, find_shrink
from modelock.symbolic import RotSpec


class SolvedPoint:
    """A converged shrinking-point solve plus its analysis bundle."""

    def __init__(self, family_name, spec, guess, **fixed):
        self.fam = get_family(family_name)
        self.spec = RotSpec(*spec)
        p0 = self.fam.default_point(**fixed)
        p0 = p0.with_values(**dict(zip(self.fam.slice_params, guess)))
        self.result = find_shrink(self.fam, p0, self.spec)
        assert self.result.converged
        self.data = analyze(self.fam, self.result.point, self.spec)

    @property
    def point(self):
        return self.result.point

    @property
    def jacobian(self):
        return self.result.jacobian


@pytest.fixture(scope="session")
def bcnf3_sp():
    return SolvedPoint("bcnf3", (2, 2, 5), (-1.9, 0.22))


@pytest.fixture(scope="session")
def ns2_sp():
    return SolvedPoint("ns2", (2, 1, 4), (0.29, 0.63))


@pytest.fixture(scope="session")
def gs2_sp():
    return SolvedPoint("gs2", (8, 2, 13), (1.06, 0.26))
