"""Word combinatorics for rotational symbol sequences.

Everything here is exact integer/string arithmetic: rotational sequences
F[ell, m, n], cyclic shifts, single-symbol flips, the six partition
words, Farey roots of a rotation number, and the nearby sequences
G+[k, chi] / G-[k, chi] built either by direct construction or by
concatenation of partition words.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

__all__ = [
    "Word",
    "RotSpec",
    "NearbySpec",
    "Partitions",
    "build_rotational",
    "rotational_word",
    "shift",
    "flip",
    "partitions",
    "farey_roots",
    "ell_pm",
    "build_nearby",
    "nearby_by_concatenation",
]


@dataclass(frozen=True)
class Word:
    """A finite word over the alphabet {L, R}."""

    symbols: str

    def __post_init__(self):
        if len(self.symbols) < 1 or set(self.symbols) - {"L", "R"}:
            raise ValueError(f"not an L/R word: {self.symbols!r}")

    def __len__(self):
        return len(self.symbols)

    def __getitem__(self, i):
        # cyclic indexing: any integer index is reduced mod n
        return self.symbols[i % len(self.symbols)]

    def __str__(self):
        return self.symbols

    def __add__(self, other):
        return Word(self.symbols + other.symbols)

    def __mul__(self, count):
        if count < 0:
            raise ValueError("negative repetition count")
        if count == 0:
            raise ValueError("empty word is not representable")
        return Word(self.symbols * count)

    def count(self, symbol):
        return self.symbols.count(symbol)

    def is_primitive(self):
        """True unless the word is a proper power of a shorter word."""
        n = len(self.symbols)
        for p in range(1, n):
            if n % p == 0 and self.symbols == self.symbols[:p] * (n // p):
                return False
        return True


def shift(w: Word, j: int) -> Word:
    """The j-th left cyclic permutation: result_i = w_{(i+j) mod n}."""
    n = len(w)
    j %= n
    return Word(w.symbols[j:] + w.symbols[:j])


def flip(w: Word, j: int) -> Word:
    """Toggle the symbol at (cyclic) index j."""
    n = len(w)
    j %= n
    s = w.symbols
    other = "R" if s[j] == "L" else "L"
    return Word(s[:j] + other + s[j + 1 :])


@dataclass(frozen=True)
class RotSpec:
    """A rotational triple (ell, m, n) with d the inverse of m mod n."""

    ell: int
    m: int
    n: int
    d: int = field(default=0)

    def __post_init__(self):
        n, m, ell = self.n, self.m, self.ell
        if n < 2 or not (1 <= m <= n - 1) or math.gcd(m, n) != 1:
            raise ValueError(f"invalid rotation number {m}/{n}")
        if not (1 <= ell <= n - 1):
            raise ValueError(f"ell={ell} out of range for n={n}")
        d = pow(m, -1, n)
        if self.d == 0:
            object.__setattr__(self, "d", d)
        elif self.d != d:
            raise ValueError(f"d={self.d} is not the inverse of {m} mod {n}")

    @property
    def rotnum(self):
        return self.m / self.n


def rotational_word(ell, m, n):
    """The raw threshold construction, also valid for ell in {0, n}."""
    return Word("".join("L" if (i * m) % n < ell else "R" for i in range(n)))


def build_rotational(spec: RotSpec) -> Word:
    """F[ell, m, n]: symbol i is L iff i*m mod n < ell."""
    return rotational_word(spec.ell, spec.m, spec.n)


@dataclass(frozen=True)
class Partitions:
    X: Word
    Y: Word
    Xhat: Word
    Yhat: Word
    Xcheck: Word
    Ycheck: Word


def _cyclic_slice(w: Word, start, length):
    return Word("".join(w[start + i] for i in range(length)))


def partitions(spec: RotSpec) -> Partitions:
    """The six partition words of F[ell, m, n].

    X is the first ell*d mod n symbols and Y the rest; Xhat is the first
    -d mod n symbols and Yhat the rest; Xcheck and Ycheck wrap around
    cyclically from index ell*d mod n and (ell-1)*d mod n respectively.
    """
    S = build_rotational(spec)
    n, d, ell = spec.n, spec.d, spec.ell
    ld = (ell * d) % n
    md = (-d) % n
    lm1d = ((ell - 1) * d) % n
    return Partitions(
        X=_cyclic_slice(S, 0, ld),
        Y=_cyclic_slice(S, ld, n - ld),
        Xhat=_cyclic_slice(S, 0, md),
        Yhat=_cyclic_slice(S, md, n - md),
        Xcheck=_cyclic_slice(S, ld, (lm1d - ld) % n),
        Ycheck=_cyclic_slice(S, lm1d, (ld - lm1d) % n),
    )


def farey_roots(m, n):
    """Left and right Farey parents ((m-, n-), (m+, n+)) of m/n.

    They satisfy m+*n- - m-*n+ = 1, m- + m+ = m, n- + n+ = n, and
    n- equals d, the inverse of m mod n.
    """
    if n < 2 or not (0 < m < n) or math.gcd(m, n) != 1:
        raise ValueError(f"invalid fraction {m}/{n}")
    d = pow(m, -1, n)
    n_minus = d
    m_minus = (m * d - 1) // n
    n_plus = n - n_minus
    m_plus = m - m_minus
    return (m_minus, n_minus), (m_plus, n_plus)


def ell_pm(spec: RotSpec):
    """(ell-, ell+) = (floor(ell n-/n), ceil(ell n+/n)); ell- + ell+ = ell."""
    (_, n_minus), (_, n_plus) = farey_roots(spec.m, spec.n)
    ell_minus = (spec.ell * n_minus) // spec.n
    ell_plus = -((-spec.ell * n_plus) // spec.n)
    return ell_minus, ell_plus


@dataclass(frozen=True)
class NearbySpec:
    """Selector for a nearby sequence G+[k, chi] or G-[k, chi]."""

    side: str  # "plus" or "minus"
    k: int
    chi: int

    def __post_init__(self):
        if self.side not in ("plus", "minus"):
            raise ValueError(f"side must be 'plus' or 'minus', got {self.side!r}")
        if self.k < 1:
            raise ValueError("k must be a positive integer")
        if abs(self.chi) >= self.k:
            raise ValueError(f"|chi| = {abs(self.chi)} must be < k = {self.k}")

    def resolve(self, spec: RotSpec) -> RotSpec:
        """The rotational triple of G+-[k, chi] relative to *spec*."""
        (m_minus, n_minus), (m_plus, n_plus) = farey_roots(spec.m, spec.n)
        ell_minus, ell_plus = ell_pm(spec)
        if self.side == "plus":
            mr, nr, lr = m_plus, n_plus, ell_plus
        else:
            mr, nr, lr = m_minus, n_minus, ell_minus
        ell_k = self.k * spec.ell + lr
        m_k = self.k * spec.m + mr
        n_k = self.k * spec.n + nr
        return RotSpec(ell_k + self.chi, m_k, n_k)


def build_nearby(spec: RotSpec, nb: NearbySpec) -> Word:
    """G+-[k, chi] as a word, by direct rotational construction."""
    return build_rotational(nb.resolve(spec))


def nearby_by_concatenation(spec: RotSpec, nb: NearbySpec) -> Word:
    """G+-[k, chi] assembled from S, S^{0-flip}, S^{ld-flip}, Xhat, Yhat."""
    S = build_rotational(spec)
    P = partitions(spec)
    k, chi = nb.k, nb.chi
    S0 = flip(S, 0)
    Sld = flip(S, spec.ell * spec.d)
    if nb.side == "plus":
        if chi <= -1:
            return S * (k + chi) + P.Xhat + S0 * (-chi)
        parts = [Sld * chi] if chi >= 1 else []
        return _concat(parts + [S * (k - chi), P.Xhat])
    if chi <= 0:
        parts = [S]
        if chi <= -1:
            parts.append(S0 * (-chi))
        parts.append(P.Yhat)
        if k + chi - 1 >= 1:
            parts.append(S * (k + chi - 1))
        return _concat(parts)
    parts = [Sld, P.Yhat, S * (k - chi)]
    if chi - 1 >= 1:
        parts.append(Sld * (chi - 1))
    return _concat(parts)


def _concat(words):
    return Word("".join(w.symbols for w in words))
