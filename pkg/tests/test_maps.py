import numpy as np
import pytest

from modelock.maps import (
    BUILTIN_FAMILIES,
    MapError,
    ParamPoint,
    evaluate,
    get_family,
    iterate_word,
    parse_config,
    step,
)
from modelock.symbolic import Word

GOOD_CONFIG = """
[family]
name = demo
dim = 2
params = a, b
slice = a, b
mu = 1

[A_L]
row0 = a, 1
row1 = -b, 0

[A_R]
row0 = a - 1, 1
row1 = -b + 2, 0

[B]
row0 = 1, 0

[defaults]
a = 0.5
b = 0.25
"""


def test_builtin_families_evaluate():
    for name in ("bcnf3", "ns2", "gs2"):
        fam = get_family(name)
        assert fam is BUILTIN_FAMILIES[name]
        A_L, A_R, B = evaluate(fam, fam.default_point())
        assert A_L.shape == (fam.dim, fam.dim)
        assert B.shape == (fam.dim,)
        # the two pieces differ only in the first column
        assert np.allclose((A_R - A_L)[:, 1:], 0.0, atol=1e-14)


def test_unknown_family():
    with pytest.raises(MapError):
        get_family("nosuch")


def test_default_point_overrides():
    fam = get_family("bcnf3")
    p = fam.default_point(deltaR=3.5, mu=-2.0)
    assert p.xi["deltaR"] == 3.5
    assert p.mu == -2.0
    assert p.with_values(tauR=-1.0).xi["tauR"] == -1.0
    with pytest.raises(MapError):
        fam.default_point(mu=0.0)


def test_parse_config_round_trip():
    fam = parse_config(GOOD_CONFIG)
    assert fam.name == "demo"
    assert fam.dim == 2
    assert fam.slice_params == ("a", "b")
    A_L, A_R, B = evaluate(fam, fam.default_point())
    assert A_L[0, 0] == 0.5
    assert A_R[0, 0] == -0.5
    assert np.allclose(B, [1.0, 0.0])


def test_continuity_violation_rejected():
    bad = GOOD_CONFIG.replace("row0 = a - 1, 1", "row0 = a - 1, 2")
    with pytest.raises(MapError):
        fam = parse_config(bad)
        evaluate(fam, fam.default_point())


def test_step_is_continuous_across_manifold():
    fam = get_family("bcnf3")
    p = fam.default_point()
    x = np.array([0.0, 0.7, -0.3])
    A_L, A_R, B = evaluate(fam, p)
    left = A_L @ x + B * p.mu
    right = A_R @ x + B * p.mu
    assert np.allclose(left, right, atol=1e-12)
    assert np.allclose(step(fam, p, x), right)


def test_iterate_word_follows_symbols():
    fam = get_family("bcnf3")
    p = fam.default_point()
    x = np.array([0.2, -0.1, 0.4])
    A_L, A_R, B = evaluate(fam, p)
    manual = A_R @ (A_L @ x + B * p.mu) + B * p.mu
    assert np.allclose(iterate_word(fam, p, x, Word("LR")), manual)


def test_param_point_is_immutable_copy():
    xi = {"a": 1.0}
    p = ParamPoint(xi, mu=2.0)
    xi["a"] = 9.0
    assert p.xi["a"] == 1.0
