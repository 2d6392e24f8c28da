"""Piecewise-linear continuous map families.

A family provides matrices A_L(xi), A_R(xi) and a vector B(xi) whose
entries are scalar expressions in named parameters.  The map is

    x -> A_L x + B mu   if e1^T x <= 0,
    x -> A_R x + B mu   if e1^T x >= 0,

continuous across e1^T x = 0 because A_R - A_L is nonzero only in its
first column.  Families are defined in a sectioned key=value config
format (see parse_config) and three built-ins are registered:

    bcnf3  3D border-collision normal form
    ns2    2D map with Neimark-Sacker-like border collision
    gs2    2D return map of a grazing-sliding bifurcation (det A_R = 0)
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import expr
from .symbolic import Word

__all__ = [
    "MapFamily",
    "ParamPoint",
    "MapError",
    "parse_config",
    "load_family",
    "get_family",
    "BUILTIN_FAMILIES",
    "evaluate",
    "step",
    "iterate_word",
]

CONTINUITY_TOL = 1e-12


class MapError(ValueError):
    pass


@dataclass(frozen=True)
class ParamPoint:
    """Parameter bindings xi plus the scale parameter mu (nonzero)."""

    xi: dict
    mu: float = 1.0

    def __post_init__(self):
        if self.mu == 0.0:
            raise MapError("mu must be nonzero")
        object.__setattr__(self, "xi", dict(self.xi))

    def with_values(self, **updates):
        xi = dict(self.xi)
        mu = updates.pop("mu", self.mu)
        xi.update(updates)
        return ParamPoint(xi, mu)


@dataclass(frozen=True)
class MapFamily:
    name: str
    dim: int
    params: tuple
    slice_params: tuple
    mu_default: float
    defaults: dict = field(default_factory=dict)
    AL: tuple = ()  # dim*dim ExprAst entries, row-major
    AR: tuple = ()
    B: tuple = ()  # dim ExprAst entries

    def default_point(self, **overrides):
        xi = {name: 0.0 for name in self.params}
        xi.update(self.defaults)
        mu = overrides.pop("mu", self.mu_default)
        xi.update(overrides)
        return ParamPoint(xi, mu)


def _eval_entries(entries, env, shape):
    vals = np.array([expr.evaluate(e, env) for e in entries])
    return vals.reshape(shape)


def evaluate(fam: MapFamily, p: ParamPoint):
    """Numeric (A_L, A_R, B) at *p*; verifies the continuity condition."""
    env = p.xi
    n = fam.dim
    A_L = _eval_entries(fam.AL, env, (n, n))
    A_R = _eval_entries(fam.AR, env, (n, n))
    B = _eval_entries(fam.B, env, (n,))
    diff = A_R - A_L
    for i in range(n):
        for j in range(1, n):
            if abs(diff[i, j]) > CONTINUITY_TOL:
                raise MapError(
                    f"continuity violated: (A_R - A_L)[{i},{j}] = {diff[i, j]!r}"
                )
    return A_L, A_R, B


def step(fam: MapFamily, p: ParamPoint, x):
    """One iterate of the map: the half-map is chosen by sign(e1^T x)."""
    A_L, A_R, B = evaluate(fam, p)
    x = np.asarray(x, dtype=float)
    A = A_L if x[0] < 0.0 else A_R  # identical on the manifold by continuity
    return A @ x + B * p.mu


def iterate_word(fam: MapFamily, p: ParamPoint, x, w: Word):
    """Apply the half-maps in the order given by *w*, ignoring actual signs."""
    A_L, A_R, B = evaluate(fam, p)
    x = np.asarray(x, dtype=float)
    for sym in str(w):
        A = A_L if sym == "L" else A_R
        x = A @ x + B * p.mu
    return x


# ---------------------------------------------------------------------------
# config format


def parse_config(text):
    """Parse the sectioned key=value family format.

    Sections: [family] with keys name, dim, params, slice, mu; [A_L],
    [A_R] with keys row0..row{dim-1}; [B] with key row0; optional
    [defaults] with one key=value per fixed parameter.  Matrix entries
    are comma-separated expressions in the parameter names.
    """
    sections = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip()
            sections.setdefault(current, {})
            continue
        if "=" not in line or current is None:
            raise MapError(f"config line {lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        sections[current][key.strip()] = value.strip()

    try:
        fam_sec = sections["family"]
        name = fam_sec["name"]
        dim = int(fam_sec["dim"])
        params = tuple(s.strip() for s in fam_sec["params"].split(","))
        slice_params = tuple(s.strip() for s in fam_sec["slice"].split(","))
        mu_default = float(fam_sec.get("mu", "1"))
    except KeyError as missing:
        raise MapError(f"config missing required key {missing}") from None
    if len(slice_params) != 2 or any(s not in params for s in slice_params):
        raise MapError(f"slice must name two of the parameters, got {slice_params}")

    def parse_rows(section, nrows, ncols):
        entries = []
        for i in range(nrows):
            key = f"row{i}"
            if key not in sections.get(section, {}):
                raise MapError(f"config section [{section}] missing {key}")
            cells = sections[section][key].split(",")
            if len(cells) != ncols:
                raise MapError(
                    f"[{section}] {key}: expected {ncols} entries, got {len(cells)}"
                )
            entries.extend(expr.parse(cell) for cell in cells)
        return tuple(entries)

    defaults = {
        k: float(v) for k, v in sections.get("defaults", {}).items()
    }
    unknown = set(defaults) - set(params)
    if unknown:
        raise MapError(f"[defaults] names unknown parameters: {sorted(unknown)}")

    fam = MapFamily(
        name=name,
        dim=dim,
        params=params,
        slice_params=slice_params,
        mu_default=mu_default,
        defaults=defaults,
        AL=parse_rows("A_L", dim, dim),
        AR=parse_rows("A_R", dim, dim),
        B=parse_rows("B", 1, dim),
    )
    # continuity is structural: check it once at the default point
    evaluate(fam, fam.default_point())
    return fam


def load_family(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read())


_TWO_PI = "6.283185307179586"

_BCNF3 = f"""
[family]
name = bcnf3
dim = 3
params = tauL, sigmaL, deltaL, tauR, sigmaR, deltaR
slice = tauR, deltaL
mu = 1

[A_L]
row0 = tauL, 1, 0
row1 = -sigmaL, 0, 1
row2 = deltaL, 0, 0

[A_R]
row0 = tauR, 1, 0
row1 = -sigmaR, 0, 1
row2 = deltaR, 0, 0

[B]
row0 = 1, 0, 0

[defaults]
tauL = 0
sigmaL = -1
sigmaR = 0
deltaR = 2
tauR = -2
deltaL = 0.2
"""

_NS2 = f"""
[family]
name = ns2
dim = 2
params = rL, omegaL, sR, omegaR
slice = omegaR, sR
mu = 1

[A_L]
row0 = 2*rL*cos({_TWO_PI}*omegaL), 1
row1 = -rL^2, 0

[A_R]
row0 = (2/sR)*cos({_TWO_PI}*omegaR), 1
row1 = -1/sR^2, 0

[B]
row0 = 1, 0

[defaults]
rL = 0.3
omegaL = 0.09
sR = 2
omegaR = 0.2
"""

_GS2 = """
[family]
name = gs2
dim = 2
params = xi1, xi2
slice = xi1, xi2
mu = -1

[A_L]
row0 = 2*exp(xi2)*cos(xi1), 1
row1 = -exp(2*xi2), 0

[A_R]
row0 = exp(xi2)*cos(xi1), 1
row1 = 0, 0

[B]
row0 = 1, 0

[defaults]
xi1 = 0.9
xi2 = 0.1
"""

BUILTIN_FAMILIES = {
    "bcnf3": parse_config(_BCNF3),
    "ns2": parse_config(_NS2),
    "gs2": parse_config(_GS2),
}


def get_family(selector):
    """Resolve a --family selector: builtin name or 'file:PATH'."""
    if selector in BUILTIN_FAMILIES:
        return BUILTIN_FAMILIES[selector]
    if selector.startswith("file:"):
        return load_family(selector[5:])
    raise MapError(
        f"unknown family {selector!r}: expected one of "
        f"{sorted(BUILTIN_FAMILIES)} or file:PATH"
    )
