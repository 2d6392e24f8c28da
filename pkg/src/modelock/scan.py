"""Parameter-plane scans for admissible stable cycles.

Every grid cell is classified by the rotational cycle F[ell, m, n]
that is admissible and stable there, searching rotation numbers m/n in
Farey order up to a period bound.  The hot loop (cycle solve plus
admissibility margin for every candidate word) runs in a compiled
kernel when available, with a pure-Python fallback selected at import.

Shift-equivalent rotational words describe the same cycle, so the
candidate table holds one representative per cyclic class and reports
the smallest m label of the class.  Rows are scanned left to right:
after the first cell of a row the candidate set is narrowed to a
window around the previous cell's classification and widened on a
miss, so results are deterministic and independent of the thread count
(rows never exchange information).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

try:
    from . import _scankernel as _kernel
except ImportError:  # compiled extension not built
    from . import _scankernel_py as _kernel

from . import linalg
from .cycles import ADMISSIBLE_TOL, STABLE_GAP
from .maps import MapFamily, ParamPoint, evaluate
from .symbolic import rotational_word

__all__ = [
    "KERNEL_COMPILED",
    "CandidateTable",
    "build_candidates",
    "ScanConfig",
    "CellResult",
    "scan",
    "scan_margins",
]

KERNEL_COMPILED = bool(getattr(_kernel, "COMPILED", False))

TIE_BREAKS = ("highest-period", "lowest-period", "largest-margin")
_WINDOW = 0.08
_WIDENINGS = 2


def _farey(n_max):
    """Ascending Farey fractions m/n, 0/1 .. 1/1, denominators <= n_max."""
    a, b, c, d = 0, 1, 1, n_max
    yield a, b
    while c <= n_max:
        k = (n_max + b) // d
        a, b, c, d = c, d, k * c - a, k * d - b
        yield a, b


@dataclass(frozen=True)
class CandidateTable:
    """Cyclic classes of rotational words up to n_max, packed for the kernel.

    Entry i is the class of F[ell[i], ., n[i]] words; m[i] is the
    smallest valid m label and the full label set lives in
    msets[moffs[i]:moffs[i] + mcounts[i]] (used by the rotation-number
    window so the reported-label convention never hides a match).
    """

    n_max: int
    ell: np.ndarray
    m: np.ndarray
    n: np.ndarray
    rotnum: np.ndarray  # m / n with the smallest-m convention
    lfrac: np.ndarray  # ell / n
    symbols: np.ndarray  # uint8, 0 = L, 1 = R, all words concatenated
    offs: np.ndarray
    lens: np.ndarray
    msets: np.ndarray  # all m/n labels, flattened per class
    moffs: np.ndarray
    mcounts: np.ndarray

    def __len__(self):
        return len(self.ell)


_TABLE_CACHE = {}


def build_candidates(n_max):
    if n_max in _TABLE_CACHE:
        return _TABLE_CACHE[n_max]
    classes = {}  # (ell, n, canonical word) -> [m labels]
    order = []
    for m, n in _farey(n_max):
        if n == 1:
            ell_range = (0,) if m == 0 else (1,)
        else:
            ell_range = range(1, n)
        for ell in ell_range:
            w = str(rotational_word(ell, m, n))
            canon = min(w[i:] + w[:i] for i in range(n))
            key = (ell, n, canon)
            if key not in classes:
                classes[key] = []
                order.append((key, w))
            classes[key].append(m)
    ells, ms, ns, chunks, msets, mcounts = [], [], [], [], [], []
    for (ell, n, _), w in order:
        labels = classes[(ell, n, _)]
        ells.append(ell)
        ms.append(min(labels))
        ns.append(n)
        chunks.append(np.frombuffer(w.encode(), dtype=np.uint8) == ord("R"))
        msets.extend(lbl / n for lbl in labels)
        mcounts.append(len(labels))
    lens = np.array([len(c) for c in chunks], dtype=np.int64)
    offs = np.concatenate(([0], np.cumsum(lens)[:-1])).astype(np.int64)
    mcounts = np.array(mcounts, dtype=np.int64)
    moffs = np.concatenate(([0], np.cumsum(mcounts)[:-1])).astype(np.int64)
    table = CandidateTable(
        n_max=n_max,
        ell=np.array(ells, dtype=np.int64),
        m=np.array(ms, dtype=np.int64),
        n=np.array(ns, dtype=np.int64),
        rotnum=np.array(ms, dtype=float) / np.array(ns, dtype=float),
        lfrac=np.array(ells, dtype=float) / np.array(ns, dtype=float),
        symbols=np.concatenate(chunks).astype(np.uint8),
        offs=offs,
        lens=lens,
        msets=np.array(msets, dtype=float),
        moffs=moffs,
        mcounts=mcounts,
    )
    _TABLE_CACHE[n_max] = table
    return table


def scan_margins(A_L, A_R, B_mu, table, sel, tol=ADMISSIBLE_TOL):
    """Admissibility margins of the selected candidates (NaN = no cycle).

    Margins below -tol may be inexact: the kernel stops as soon as a
    candidate is certainly inadmissible.
    """
    out = np.empty(len(sel), dtype=float)
    _kernel.scan_margins(
        np.ascontiguousarray(A_L), np.ascontiguousarray(A_R),
        np.ascontiguousarray(B_mu), table.symbols, table.offs, table.lens,
        np.ascontiguousarray(sel, dtype=np.int64), float(tol), out,
    )
    return out


@dataclass(frozen=True)
class ScanConfig:
    fam: MapFamily
    base: ParamPoint
    x_param: str
    y_param: str
    x_range: tuple  # (lo, hi)
    y_range: tuple
    nx: int
    ny: int
    n_max: int = 50
    tol: float = ADMISSIBLE_TOL
    tie_break: str = "highest-period"
    threads: int = 1

    def __post_init__(self):
        if self.tie_break not in TIE_BREAKS:
            raise ValueError(
                f"tie_break must be one of {TIE_BREAKS}, got {self.tie_break!r}"
            )

    def cell_centers(self):
        xs = self.x_range[0] + (np.arange(self.nx) + 0.5) * (
            self.x_range[1] - self.x_range[0]) / self.nx
        ys = self.y_range[0] + (np.arange(self.ny) + 0.5) * (
            self.y_range[1] - self.y_range[0]) / self.ny
        return xs, ys


@dataclass(frozen=True)
class CellResult:
    x: float
    y: float
    found: bool
    ell: int = 0
    m: int = 0
    n: int = 0
    margin: float = float("nan")

    @property
    def period(self):
        return self.n

    @property
    def rotnum(self):
        return self.m / self.n if self.found else float("nan")


def _tie_order(table, idx, margins, tie_break):
    if tie_break == "highest-period":
        keys = np.lexsort((table.ell[idx], table.m[idx], -table.n[idx]))
    elif tie_break == "lowest-period":
        keys = np.lexsort((table.ell[idx], table.m[idx], table.n[idx]))
    else:  # largest-margin
        keys = np.lexsort((table.ell[idx], table.m[idx], table.n[idx], -margins))
    return idx[keys]


def _classify_cell(fam, p, table, sel, tol, tie_break):
    A_L, A_R, B = evaluate(fam, p)
    margins = scan_margins(A_L, A_R, B * p.mu, table, sel, tol)
    ok = np.where(np.isfinite(margins) & (margins >= -tol))[0]
    if len(ok) == 0:
        return None
    margin_of = {int(sel[pos]): float(margins[pos]) for pos in ok}
    for ci in _tie_order(table, sel[ok], margins[ok], tie_break):
        # stability is checked only on the admissible survivors
        word = table.symbols[table.offs[ci]:table.offs[ci] + table.lens[ci]]
        M = np.eye(fam.dim)
        for sym in word:
            M = (A_R if sym else A_L) @ M
        if np.all(np.abs(linalg.eigs(M)) < 1.0 - STABLE_GAP):
            return int(ci), margin_of[int(ci)]
    return None


def _window_sel(table, rot, lf, widen):
    delta = _WINDOW * (2.0 ** widen)
    near_rot = np.abs(table.msets - rot) <= delta
    any_label = np.logical_or.reduceat(near_rot, table.moffs)
    mask = any_label & (np.abs(table.lfrac - lf) <= delta)
    return np.where(mask)[0].astype(np.int64)


def _scan_row(cfg, table, xs, y):
    fam = cfg.fam
    full = np.arange(len(table), dtype=np.int64)
    row = []
    prev = None  # (rotnum, ell/n) of the previous cell when found
    for x in xs:
        p = cfg.base.with_values(**{cfg.x_param: float(x),
                                    cfg.y_param: float(y)})
        hit = None
        if prev is not None:
            for widen in range(_WIDENINGS + 1):
                sel = _window_sel(table, prev[0], prev[1], widen)
                if len(sel):
                    hit = _classify_cell(fam, p, table, sel, cfg.tol,
                                         cfg.tie_break)
                if hit is not None:
                    break
        if hit is None:
            hit = _classify_cell(fam, p, table, full, cfg.tol, cfg.tie_break)
        if hit is None:
            row.append(CellResult(x=float(x), y=float(y), found=False))
            prev = None
        else:
            ci, margin = hit
            row.append(CellResult(
                x=float(x), y=float(y), found=True,
                ell=int(table.ell[ci]), m=int(table.m[ci]),
                n=int(table.n[ci]), margin=margin,
            ))
            prev = (float(table.rotnum[ci]), float(table.lfrac[ci]))
    return row


def scan(cfg: ScanConfig):
    """Classify every cell; returns rows bottom to top, cells left to right."""
    table = build_candidates(cfg.n_max)
    xs, ys = cfg.cell_centers()
    if cfg.threads > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            rows = list(pool.map(lambda y: _scan_row(cfg, table, xs, y), ys))
    else:
        rows = [_scan_row(cfg, table, xs, y) for y in ys]
    return rows
