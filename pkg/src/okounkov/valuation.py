"""Monomial valuations with a lexicographic tie-break, and the Gamma semigroups
that turn colengths of a graded family into lattice-point counts.

A valuation is an integer weight vector ``w``.  The value of ``x^a`` is the
pair ``(<w, a>, a)``, ordered by the weighted degree and then lexicographically
on ``a``, so distinct monomials never share a value.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .exactmath import Lattice, convex_hull, volume
from .monomial import MonomialIdeal, is_m_primary, min_power_inside, newton_complement_volume
from .semigroup import TabulatedSemigroup


@dataclass(frozen=True)
class MonomialValuation:
    d: int
    weights: tuple[int, ...]

    def __post_init__(self):
        w = tuple(int(x) for x in self.weights)
        if len(w) != self.d:
            raise ValueError(f"expected {self.d} weights, got {len(w)}")
        if any(x < 1 for x in w):
            raise ValueError("weights must be positive integers")
        object.__setattr__(self, "weights", w)

    def degree(self, a: Sequence[int]) -> int:
        return sum(x * y for x, y in zip(self.weights, a))

    def to_json(self) -> dict:
        return {"d": self.d, "weights": list(self.weights)}

    @classmethod
    def from_json(cls, data: dict) -> MonomialValuation:
        return cls(int(data["d"]), tuple(data["weights"]))


@dataclass(frozen=True, order=True)
class ValueVector:
    primary: int
    tiebreak: tuple[int, ...]

    def __add__(self, other: ValueVector) -> ValueVector:
        return ValueVector(self.primary + other.primary,
                           tuple(a + b for a, b in zip(self.tiebreak, other.tiebreak)))


def value(v: MonomialValuation, a: Sequence[int]) -> ValueVector:
    a = tuple(int(x) for x in a)
    if len(a) != v.d or any(x < 0 for x in a):
        raise ValueError(f"{a} is not an exponent vector in N^{v.d}")
    return ValueVector(v.degree(a), a)


def value_of_support(v: MonomialValuation, support: Iterable[Sequence[int]]) -> ValueVector:
    vals = [value(v, a) for a in support]
    if not vals:
        raise ValueError("empty support: the value of 0 is infinite")
    return min(vals)


def alpha_constant(v: MonomialValuation) -> int:
    """alpha = max weight, so <w,a> >= alpha*n forces |a| >= n."""
    return max(v.weights)


def c_constant(first: MonomialIdeal) -> int:
    """Least c with m^c inside the first member of the family."""
    if first.is_unit():
        warnings.warn("I_1 is the unit ideal; using c = 1", stacklevel=2)
        return 1
    c = min_power_inside(first)
    if c == math.inf:
        raise ValueError("I_1 is not m-primary")
    return int(c)


def threshold_ideal(v: MonomialValuation, t: int) -> MonomialIdeal:
    """The monomial ideal spanned by {x^a : <w,a> >= t}."""
    d, w = v.d, v.weights
    if t <= 0:
        return MonomialIdeal.unit(d)
    if d == 1:
        return MonomialIdeal(1, ((-(-t // w[0]),),))
    head, last = w[:-1], w[-1]
    gens = []
    # a head a' only matters if dropping any unit from it falls below t
    bound = t + max(head)
    ranges = [range(bound // wi + 1) for wi in head]
    for a in itertools.product(*ranges):
        s = sum(x * y for x, y in zip(a, head))
        if s >= bound:
            continue
        need = max(0, -(-(t - s) // last))
        gens.append(a + (need,))
    return MonomialIdeal(d, tuple(gens))


def _slice_points(d: int, weights: Sequence[int], bound: int) -> np.ndarray:
    """All a in N^d with <w,a> < bound, as an integer array."""
    if bound <= 0:
        return np.zeros((0, d), dtype=np.int64)
    grids = np.meshgrid(*[np.arange(-(-bound // wi)) for wi in weights], indexing="ij")
    pts = np.stack([g.ravel() for g in grids], axis=1).astype(np.int64)
    return pts[pts @ np.array(weights, dtype=np.int64) < bound]


@dataclass(frozen=True)
class GammaSemigroups:
    gamma: TabulatedSemigroup
    gamma_hat: TabulatedSemigroup
    beta: int
    c: int
    alpha: int
    max_n: int
    truncation: str = "value"
    family: object = None

    def to_json(self) -> dict:
        return {"beta": self.beta, "c": self.c, "alpha": self.alpha, "max_n": self.max_n,
                "truncation": self.truncation}


def gamma_semigroups(v: MonomialValuation, family, max_n: int, truncation: str = "value",
                     check_level: int | None = None) -> GammaSemigroups:
    """Build Gamma-hat (a truncated orthant) and Gamma (its part inside I_i).

    ``truncation="value"`` keeps {a : <w,a> < beta*i}; ``"degree"`` keeps
    {a : |a| <= beta*i}.  Both give the same colength differences.  The
    semigroup law is checked up to ``check_level`` (default min(max_n, 6)).
    """
    if truncation not in ("value", "degree"):
        raise ValueError("truncation must be 'value' or 'degree'")
    if family.d != v.d:
        raise ValueError("family and valuation live in different dimensions")
    alpha = alpha_constant(v)
    c = c_constant(family.evaluate(1))
    beta = alpha * c
    weights = v.weights if truncation == "value" else (1,) * v.d

    def hat(i: int) -> np.ndarray:
        if i == 0:
            return np.zeros((1, v.d), dtype=np.int64)
        bound = beta * i if truncation == "value" else beta * i + 1
        return _slice_points(v.d, weights, bound)

    def hat_rule(i: int):
        return map(tuple, hat(i).tolist())

    def gamma_rule(i: int):
        if i == 0:
            return [(0,) * v.d]
        I = family.evaluate(i)
        if not is_m_primary(I):
            raise ValueError(f"I_{i} is not m-primary")
        pts = hat(i)
        return map(tuple, pts[I.contains_all(pts)].tolist())

    level = min(max_n, 6) if check_level is None else check_level
    g_hat = TabulatedSemigroup(v.d, hat_rule, max_n, asserted_strongly_nonnegative=True, check_level=level)
    g = TabulatedSemigroup(v.d, gamma_rule, max_n, asserted_strongly_nonnegative=True, check_level=level)
    return GammaSemigroups(g, g_hat, beta, c, alpha, max_n, truncation, family)


def length_via_semigroups(g: GammaSemigroups, i: int) -> int:
    """#Gamma-hat_i - #Gamma_i, which equals l(R/I_i)."""
    if not 0 <= i <= g.max_n:
        raise ValueError(f"level {i} outside 0..{g.max_n}")
    return g.gamma_hat.count(i) - g.gamma.count(i)


def body_volume_prediction(v: MonomialValuation, g: GammaSemigroups, level: int) -> Fraction:
    """d! * (vol Delta(Gamma-hat) - vol Delta(Gamma)), read off at ``level``.

    Delta(Gamma-hat) is the simplex {x >= 0, <w,x> <= beta}.  Delta(Gamma) is
    approximated by that simplex minus the Newton complement of I_level
    scaled by 1/level (the complement lies inside the simplex because
    m^{c*level} is inside I_level).  Exact for powers and valuation families.
    """
    d = v.d
    corners = [(0,) * d] + [tuple(Fraction(g.beta, w) if k == i else 0 for k in range(d))
                            for i, w in enumerate(v.weights)]
    hat = volume(convex_hull(corners), Lattice.standard(d))
    I = g.family.evaluate(level)
    inner = hat - newton_complement_volume(I) / Fraction(level) ** d
    return math.factorial(d) * (hat - inner)


def valuation_family(v: MonomialValuation, slope):
    """The graded family I_n = (x^a : <w,a> >= ceil(slope*n))."""
    from .families import GradedFamily

    return GradedFamily.valuation(v, slope)
