import math

import pytest
from hypothesis import given, strategies as st

from modelock.symbolic import (
    NearbySpec,
    RotSpec,
    build_nearby,
    build_rotational,
    ell_pm,
    farey_roots,
    flip,
    nearby_by_concatenation,
    partitions,
    rotational_word,
    shift,
)


def specs(n_max):
    for n in range(2, n_max + 1):
        for m in range(1, n):
            if math.gcd(m, n) != 1:
                continue
            for ell in range(1, n):
                yield RotSpec(ell, m, n)


def test_word_construction_examples():
    assert str(build_rotational(RotSpec(3, 5, 7))) == "LRRLRRL"
    assert str(build_rotational(RotSpec(4, 5, 7))) == "LRLLRRL"
    assert str(build_rotational(RotSpec(2, 2, 5))) == "LRRLR"
    assert str(rotational_word(0, 1, 1)) == "R"
    assert str(rotational_word(1, 1, 1)) == "L"


def test_flip_shift_example():
    S = build_rotational(RotSpec(3, 5, 7))
    assert str(flip(S, 4)) == "LRRLLRL"
    assert flip(S, 4) == shift(build_rotational(RotSpec(4, 5, 7)), 3)


def test_invalid_specs_rejected():
    with pytest.raises(ValueError):
        RotSpec(1, 2, 4)  # gcd(m, n) != 1
    with pytest.raises(ValueError):
        RotSpec(0, 1, 3)  # ell out of range
    with pytest.raises(ValueError):
        RotSpec(3, 1, 3)


def test_word_counts():
    for spec in specs(12):
        w = build_rotational(spec)
        assert len(w) == spec.n
        assert str(w).count("L") == spec.ell


def test_shift_equivalence_between_m_labels():
    # LRRLR under m=2 and its shifted twin under m=3 name the same cycle
    a = build_rotational(RotSpec(2, 2, 5))
    b = build_rotational(RotSpec(2, 3, 5))
    assert any(shift(a, j) == b for j in range(5))


def test_index_rule():
    # symbol at index j*d mod n is L exactly for j < ell
    for spec in specs(15):
        w = build_rotational(spec)
        for j in range(spec.n):
            expect = "L" if j < spec.ell else "R"
            assert w[(j * spec.d) % spec.n] == expect


def test_flip_identities():
    # flipping at (ell-1)d or ell*d steps ell down or up; the composite
    # flip at 0 and ell*d equals a d-shift of the original word
    for spec in specs(15):
        S = build_rotational(spec)
        n, d, ell = spec.n, spec.d, spec.ell
        if ell != 1:
            assert flip(S, ((ell - 1) * d) % n) == build_rotational(
                RotSpec(ell - 1, spec.m, n))
            assert flip(S, 0) == shift(
                build_rotational(RotSpec(ell - 1, spec.m, n)), (-d) % n)
        if ell != n - 1:
            assert flip(S, (ell * d) % n) == build_rotational(
                RotSpec(ell + 1, spec.m, n))
            assert flip(S, (-d) % n) == shift(
                build_rotational(RotSpec(ell + 1, spec.m, n)), d)
        assert shift(flip(flip(S, 0), (ell * d) % n), d) == S


def test_partition_words_example():
    p = partitions(RotSpec(3, 5, 7))
    assert (str(p.Xhat), str(p.Yhat)) == ("LRRL", "RRL")
    assert (str(p.Xcheck), str(p.Ycheck)) == ("RLRR", "LLR")


def test_partition_concatenations():
    for spec in specs(15):
        S = build_rotational(spec)
        p = partitions(spec)
        n, d, ell = spec.n, spec.d, spec.ell
        X0, Y0 = flip(p.X, 0), flip(p.Y, 0)
        assert p.X + p.Y == S
        assert p.Xhat + p.Yhat == S
        assert p.Xcheck + p.Ycheck == shift(S, (ell * d) % n)
        assert p.Y + p.X == shift(S, (ell * d) % n)
        assert X0 + Y0 == shift(S, (-d) % n)
        assert p.Yhat + p.Xhat == shift(S, (-d) % n)
        assert Y0 + X0 == shift(S, ((ell - 1) * d) % n)
        assert p.Ycheck + p.Xcheck == shift(S, ((ell - 1) * d) % n)
        # words between neighbouring boundary nodes commute as below
        assert p.X + p.Xcheck == p.Xhat + X0
        assert p.Y + p.Xhat == p.Xcheck + Y0
        assert p.Yhat + p.X == X0 + p.Ycheck
        assert p.Ycheck + p.Y == Y0 + p.Yhat


def test_farey_roots_relations():
    for n in range(2, 31):
        for m in range(1, n):
            if math.gcd(m, n) != 1:
                continue
            (mm, nm), (mp, np_) = farey_roots(m, n)
            assert mp * nm - mm * np_ == 1
            assert m * nm - mm * n == 1
            assert mp * n - m * np_ == 1
            assert (mm + mp, nm + np_) == (m, n)
            assert nm == pow(m, -1, n)


def test_ell_pm_are_L_counts():
    for spec in specs(15):
        lm, lp = ell_pm(spec)
        p = partitions(spec)
        assert lp == str(p.Xhat).count("L")
        assert lm == str(p.Yhat).count("L")
        assert lm + lp == spec.ell


def test_nearby_example():
    spec = RotSpec(3, 5, 7)
    gp = NearbySpec("plus", 3, 0).resolve(spec)
    gm = NearbySpec("minus", 3, 0).resolve(spec)
    assert (gp.ell, gp.m, gp.n) == (11, 18, 25)
    assert (gm.ell, gm.m, gm.n) == (10, 17, 24)
    assert str(build_rotational(gp)) == "LRRLRRLLRRLRRLLRRLRRLLRRL"
    assert str(build_rotational(gm)) == "LRRLRRLRRLLRRLRRLLRRLRRL"


def test_nearby_kd_plus_minus():
    # sequence of Farey roots of m_k/n_k, and the d values they induce
    for spec in specs(12):
        for k in range(1, 6):
            for side in ("plus", "minus"):
                nb = NearbySpec(side, k, 0).resolve(spec)
                roots = farey_roots(nb.m, nb.n)
                if side == "plus":
                    assert roots[0] == (spec.m, spec.n)
                    assert nb.d == spec.n  # d_k^+ = n
                else:
                    assert roots[1] == (spec.m, spec.n)
                    assert (-nb.d) % nb.n == spec.n


def test_nearby_boundary_node():
    # the L-count times d_k falls where the base boundary node falls,
    # displaced by chi periods
    for spec in specs(10):
        for k in range(1, 5):
            for chi in range(-min(3, k - 1), min(3, k - 1) + 1):
                for side, sgn in (("plus", 1), ("minus", -1)):
                    nb = NearbySpec(side, k, chi).resolve(spec)
                    lhs = (nb.ell * nb.d) % nb.n
                    base = (spec.ell * spec.d) % spec.n
                    assert lhs == (base + sgn * chi * spec.n) % nb.n


def test_nearby_concatenation_matches_construction():
    for spec in specs(15):
        for k in range(1, 9):
            for chi in range(-min(3, k - 1), min(3, k - 1) + 1):
                for side in ("plus", "minus"):
                    nb = NearbySpec(side, k, chi)
                    assert nearby_by_concatenation(spec, nb) == \
                        build_nearby(spec, nb)


def test_nearby_spec_validation():
    with pytest.raises(ValueError):
        NearbySpec("plus", 3, 3)
    with pytest.raises(ValueError):
        NearbySpec("up", 3, 0)
    with pytest.raises(ValueError):
        NearbySpec("plus", 0, 0)


@given(st.integers(2, 40), st.integers(1, 39), st.integers(1, 39),
       st.integers(0, 39), st.integers(0, 39))
def test_flip_and_shift_algebra(n, m, ell, i, j):
    if m >= n or ell >= n or math.gcd(m, n) != 1:
        return
    w = build_rotational(RotSpec(ell, m, n))
    i, j = i % n, j % n
    assert flip(flip(w, j), j) == w
    assert shift(shift(w, i), n - i) == w
    assert shift(flip(w, j), i) == flip(shift(w, i), (j - i) % n)
    assert w[0] == "L"
