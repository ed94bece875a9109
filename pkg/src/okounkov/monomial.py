"""Monomial ideals in k[x_1..x_d] and pair ideals (A, yB) in k[x_1..x_d, y]/(y^2).

An ideal is stored as its minimal generators (an antichain of exponent
vectors).  All counting is exact.
"""

from __future__ import annotations

import bisect
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .exactmath import Lattice, convex_hull, volume

INFINITE = math.inf

Exponent = tuple[int, ...]


def _minimalize(points: Iterable[Sequence[int]], d: int) -> tuple[Exponent, ...]:
    pts = {tuple(int(x) for x in p) for p in points}
    if not pts:
        return ()
    if d <= 1:
        return (min(pts),)
    if d == 2:
        kept = []
        for p in sorted(pts):
            if not kept or p[1] < kept[-1][1]:
                kept.append(p)
        return tuple(kept)
    if d == 3:
        return _minimalize3(pts)
    if len(pts) < 48:
        ordered = sorted(pts, key=lambda p: (sum(p), p))
        kept: list[Exponent] = []
        for p in ordered:
            if not any(all(g[i] <= p[i] for i in range(d)) for g in kept):
                kept.append(p)
        return tuple(sorted(kept))
    # equal-degree points never divide each other, so sweep degree by degree
    arr = np.array(sorted(pts, key=lambda p: (sum(p), p)), dtype=np.int64).reshape(len(pts), d)
    degs = arr.sum(axis=1)
    kept_arr = np.empty((0, d), dtype=np.int64)
    for deg in np.unique(degs):
        block = arr[degs == deg]
        if len(kept_arr):
            covered = np.zeros(len(block), dtype=bool)
            for start in range(0, len(kept_arr), 512):
                chunk = kept_arr[start:start + 512]
                covered |= (chunk[None, :, :] <= block[:, None, :]).all(axis=2).any(axis=1)
            block = block[~covered]
        if len(block):
            kept_arr = np.vstack([kept_arr, block])
    return tuple(sorted(tuple(int(x) for x in row) for row in kept_arr))


def _minimalize3(pts: set[Exponent]) -> tuple[Exponent, ...]:
    # sweep in (z, x, y) order; a divisor always precedes its multiples, and the
    # (x, y) shadow of everything kept so far is a 2-D staircase
    xs: list[int] = []
    ys: list[int] = []
    kept = []
    for p in sorted(pts, key=lambda p: (p[2], p[0], p[1])):
        x, y = p[0], p[1]
        i = bisect.bisect_right(xs, x)
        if i and ys[i - 1] <= y:
            continue
        kept.append(p)
        j = i
        while j < len(xs) and ys[j] >= y:
            j += 1
        xs[i:j] = [x]
        ys[i:j] = [y]
    return tuple(sorted(kept))


@dataclass(frozen=True)
class MonomialIdeal:
    d: int
    gens: tuple[Exponent, ...]

    def __post_init__(self):
        if self.d < 0:
            raise ValueError("number of variables must be nonnegative")
        for g in self.gens:
            if len(g) != self.d or any(int(x) < 0 for x in g):
                raise ValueError(f"bad exponent vector {g!r} for d={self.d}")
        object.__setattr__(self, "gens", _minimalize(self.gens, self.d))

    @classmethod
    def unit(cls, d: int) -> MonomialIdeal:
        return cls(d, ((0,) * d,))

    @classmethod
    def zero(cls, d: int) -> MonomialIdeal:
        return cls(d, ())

    @classmethod
    def maximal(cls, d: int) -> MonomialIdeal:
        return cls(d, tuple(tuple(1 if i == j else 0 for j in range(d)) for i in range(d)))

    @classmethod
    def degree_power(cls, d: int, n: int) -> MonomialIdeal:
        """m^n, generated by all monomials of degree n."""
        return cls(d, tuple(_compositions(n, d)))

    def is_unit(self) -> bool:
        return (0,) * self.d in self.gens

    def is_zero(self) -> bool:
        return not self.gens

    def contains(self, a: Sequence[int]) -> bool:
        return any(all(g[i] <= a[i] for i in range(self.d)) for g in self.gens)

    def contains_all(self, points) -> np.ndarray:
        """Vectorised membership for an (N, d) array of exponents."""
        pts = np.asarray(points, dtype=np.int64).reshape(-1, self.d)
        if not self.gens:
            return np.zeros(len(pts), dtype=bool)
        G = np.array(self.gens, dtype=np.int64).reshape(-1, self.d)
        out = np.zeros(len(pts), dtype=bool)
        step = max(1, 200_000 // max(1, len(G) * max(self.d, 1)))
        for s in range(0, len(pts), step):
            blk = pts[s:s + step]
            out[s:s + step] = (G[None, :, :] <= blk[:, None, :]).all(axis=2).any(axis=1)
        return out

    def issubset(self, other: MonomialIdeal) -> bool:
        _same_d(self, other)
        if not self.gens:
            return True
        return bool(other.contains_all(self.gens).all())

    def __add__(self, other: MonomialIdeal) -> MonomialIdeal:
        _same_d(self, other)
        return MonomialIdeal(self.d, self.gens + other.gens)

    def __mul__(self, other: MonomialIdeal) -> MonomialIdeal:
        return product(self, other)

    def __str__(self) -> str:
        if self.is_zero():
            return "(0)"
        if self.is_unit():
            return "(1)"
        names = [f"x{i + 1}" for i in range(self.d)] if self.d > 3 else ["x", "y", "z"][: self.d]
        terms = []
        for g in self.gens:
            terms.append("*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, g) if e))
        return "(" + ", ".join(terms) + ")"

    def to_json(self) -> dict:
        return {"d": self.d, "gens": [list(g) for g in self.gens]}

    @classmethod
    def from_json(cls, data: dict) -> MonomialIdeal:
        return cls(int(data["d"]), tuple(tuple(int(x) for x in g) for g in data["gens"]))


def _same_d(I: MonomialIdeal, J: MonomialIdeal) -> None:
    if I.d != J.d:
        raise ValueError(f"ideals live in different rings (d={I.d} vs d={J.d})")


def _compositions(n: int, d: int):
    if d == 0:
        if n == 0:
            yield ()
        return
    if d == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in _compositions(n - first, d - 1):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# lengths


def _staircase_count(gens: list[Exponent], d: int) -> int | float:
    # number of exponents avoided by every generator; recursion on the last variable
    if d == 0:
        return 0 if gens else 1
    if not gens:
        return INFINITE
    if d == 1:
        return min(g[0] for g in gens)
    heights = sorted({g[-1] for g in gens})
    if heights[0] > 0:
        return INFINITE
    total = 0
    layer: list[Exponent] = []
    by_height: dict[int, list[Exponent]] = {}
    for g in gens:
        by_height.setdefault(g[-1], []).append(g[:-1])
    for t, h in enumerate(heights):
        layer = list(_minimalize(layer + by_height[h], d - 1))
        if t + 1 < len(heights):
            count = _staircase_count(layer, d - 1)
            if count == INFINITE:
                return INFINITE
            total += count * (heights[t + 1] - h)
        elif layer != [(0,) * (d - 1)]:
            return INFINITE
    return total


def length(I: MonomialIdeal) -> int | float:
    """Number of standard monomials; ``math.inf`` unless I is m-primary."""
    return _staircase_count(list(I.gens), I.d)


def length_by_enumeration(I: MonomialIdeal) -> int | float:
    """Brute-force staircase count over the bounding box (slow oracle)."""
    if not is_m_primary(I):
        return INFINITE
    box = [pure_power(I, i) for i in range(I.d)]
    if I.d == 0:
        return 0 if I.is_unit() else 1
    grid = np.stack(np.meshgrid(*[np.arange(b) for b in box], indexing="ij"), axis=-1).reshape(-1, I.d)
    return int((~I.contains_all(grid)).sum())


def pure_power(I: MonomialIdeal, i: int) -> int | float:
    """Smallest e with x_i^e in I."""
    best = INFINITE
    for g in I.gens:
        if all(g[j] == 0 for j in range(I.d) if j != i):
            best = min(best, g[i])
    return best


def is_m_primary(I: MonomialIdeal) -> bool:
    return all(pure_power(I, i) != INFINITE for i in range(I.d))


def _staircase_max_degree(gens: list[Exponent], d: int) -> int | float:
    # largest total degree of a standard monomial, -1 if there is none
    if d == 0:
        return -1 if gens else 0
    if not gens:
        return INFINITE
    if d == 1:
        return min(g[0] for g in gens) - 1
    heights = sorted({g[-1] for g in gens})
    if heights[0] > 0:
        return INFINITE
    by_height: dict[int, list[Exponent]] = {}
    for g in gens:
        by_height.setdefault(g[-1], []).append(g[:-1])
    best = -1
    layer: list[Exponent] = []
    for t, h in enumerate(heights):
        layer = list(_minimalize(layer + by_height[h], d - 1))
        if t + 1 < len(heights):
            sub = _staircase_max_degree(layer, d - 1)
            if sub == INFINITE:
                return INFINITE
            if sub >= 0:
                best = max(best, sub + heights[t + 1] - 1)
        elif layer != [(0,) * (d - 1)]:
            return INFINITE
    return best


def min_power_inside(I: MonomialIdeal) -> int | float:
    """Least c with m^c contained in I (0 for the unit ideal, inf if not m-primary)."""
    return _staircase_max_degree(list(I.gens), I.d) + 1


# ---------------------------------------------------------------------------
# arithmetic


def product(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _same_d(I, J)
    if not I.gens or not J.gens:
        return MonomialIdeal.zero(I.d)
    A = np.array(I.gens, dtype=np.int64).reshape(-1, I.d)
    B = np.array(J.gens, dtype=np.int64).reshape(-1, J.d)
    sums = (A[:, None, :] + B[None, :, :]).reshape(-1, I.d)
    return MonomialIdeal(I.d, tuple(map(tuple, sums.tolist())))


def power(I: MonomialIdeal, n: int) -> MonomialIdeal:
    """I^n by repeated squaring."""
    if n < 0:
        raise ValueError("negative power")
    result = MonomialIdeal.unit(I.d)
    base = I
    while n:
        if n & 1:
            result = product(result, base)
        n >>= 1
        if n:
            base = product(base, base)
    return result


def intersection(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _same_d(I, J)
    return MonomialIdeal(I.d, tuple(tuple(max(a, b) for a, b in zip(g, h)) for g in I.gens for h in J.gens))


def colon_monomial(I: MonomialIdeal, m: Sequence[int]) -> MonomialIdeal:
    return MonomialIdeal(I.d, tuple(tuple(max(a - b, 0) for a, b in zip(g, m)) for g in I.gens))


def colon(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _same_d(I, J)
    if J.is_zero():
        return MonomialIdeal.unit(I.d)
    out = None
    for m in J.gens:
        part = colon_monomial(I, m)
        out = part if out is None else intersection(out, part)
    return out


def colon_power(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    """I : J^infinity, iterating I : J to its fixpoint."""
    current = I
    while True:
        nxt = colon(current, J)
        if nxt == current:
            return current
        current = nxt


def saturation(I: MonomialIdeal) -> MonomialIdeal:
    """I : m^infinity, as the intersection over variables of I : x_i^infinity."""
    if I.is_zero():
        return I
    out = MonomialIdeal.unit(I.d)
    for i in range(I.d):
        part = MonomialIdeal(I.d, tuple(g[:i] + (0,) + g[i + 1:] for g in I.gens))
        out = intersection(out, part)
    return out


# ---------------------------------------------------------------------------
# multiplicity


def newton_complement_volume(I: MonomialIdeal) -> Fraction:
    """Euclidean volume of the orthant minus the Newton region conv(gens) + orthant."""
    if not is_m_primary(I):
        raise ValueError("infinite covolume")
    if I.is_unit():
        return Fraction(0)
    d = I.d
    M = max(pure_power(I, i) for i in range(d))
    # conv(gens) + orthant, clipped to [0, M]^d, is the hull of the generators
    # pushed onto every combination of upper box faces
    pts = set()
    for g in I.gens:
        for mask in itertools.product((False, True), repeat=d):
            pts.add(tuple(M if up else x for x, up in zip(g, mask)))
    clipped = convex_hull(pts)
    return Fraction(M) ** d - volume(clipped, Lattice.standard(d))


def multiplicity_covolume(I: MonomialIdeal) -> Fraction:
    """Hilbert-Samuel multiplicity e(I) = d! * covolume of the Newton region."""
    if I.is_unit():
        raise ValueError("the unit ideal has no multiplicity")
    return math.factorial(I.d) * newton_complement_volume(I)


def multiplicity_empirical(I: MonomialIdeal, max_k: int) -> list[tuple[int, Fraction]]:
    """(k, d! * l(R/I^k) / k^d) for k = 1..max_k."""
    if I.is_unit():
        raise ValueError("the unit ideal has no multiplicity")
    if not is_m_primary(I):
        raise ValueError("multiplicity needs an m-primary ideal")
    out = []
    Ik = MonomialIdeal.unit(I.d)
    scale = math.factorial(I.d)
    for k in range(1, max_k + 1):
        Ik = product(Ik, I)
        out.append((k, Fraction(scale * length(Ik), k ** I.d)))
    return out


# ---------------------------------------------------------------------------
# pair ideals on k[x_1..x_d, y]/(y^2)


@dataclass(frozen=True)
class PairIdeal:
    """The ideal A + yB of k[x_1..x_d, y]/(y^2); requires A contained in B."""

    A: MonomialIdeal
    B: MonomialIdeal

    def __post_init__(self):
        _same_d(self.A, self.B)
        if not self.A.issubset(self.B):
            raise ValueError("pair ideal needs A contained in B")

    @property
    def d(self) -> int:
        return self.A.d

    @classmethod
    def unit(cls, d: int) -> PairIdeal:
        return cls(MonomialIdeal.unit(d), MonomialIdeal.unit(d))

    @classmethod
    def maximal(cls, d: int) -> PairIdeal:
        """(x_1, ..., x_d, y)."""
        return cls(MonomialIdeal.maximal(d), MonomialIdeal.unit(d))

    def issubset(self, other: PairIdeal) -> bool:
        return self.A.issubset(other.A) and self.B.issubset(other.B)

    def __str__(self) -> str:
        return f"{self.A} + y{self.B}"

    def to_json(self) -> dict:
        return {"A": self.A.to_json(), "B": self.B.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> PairIdeal:
        return cls(MonomialIdeal.from_json(data["A"]), MonomialIdeal.from_json(data["B"]))


def pair_length(P: PairIdeal) -> int | float:
    return length(P.A) + length(P.B)


def pair_product(P: PairIdeal, Q: PairIdeal) -> PairIdeal:
    return PairIdeal(product(P.A, Q.A), product(P.A, Q.B) + product(Q.A, P.B))


def pair_sum(P: PairIdeal, Q: PairIdeal) -> PairIdeal:
    return PairIdeal(P.A + Q.A, P.B + Q.B)


def pair_power(P: PairIdeal, n: int) -> PairIdeal:
    out = PairIdeal.unit(P.d)
    for _ in range(n):
        out = pair_product(out, P)
    return out


def times_y(P: PairIdeal) -> PairIdeal:
    """y * (A + yB) = yA, since y^2 = 0."""
    return PairIdeal(MonomialIdeal.zero(P.d), P.A)
