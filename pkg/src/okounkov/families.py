"""Graded families of monomial (or pair) ideals and their colength sequences.

A family is a rule n -> I_n with I_0 = R and I_i I_j inside I_{i+j}.  The
sequence d! l(R/I_n) / n^d either converges or, for the jump-driven
counterexamples, oscillates; :func:`length_sequence` reports which.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .monomial import (
    MonomialIdeal,
    PairIdeal,
    colon_power,
    is_m_primary,
    length,
    min_power_inside,
    multiplicity_covolume,
    pair_length,
    pair_product,
    pair_sum,
    product,
    saturation,
    times_y,
    colon_monomial,
)
from .valuation import MonomialValuation, threshold_ideal

KINDS = ("powers", "saturated_powers", "symbolic", "valuation", "sigma_counterexample",
         "dao_smirnov", "custom")

DEFAULT_THRESHOLD = Fraction(115, 100)


# ---------------------------------------------------------------------------
# jumps


def canonical_jumps(up_to: int) -> list[int]:
    """2, 6, 26, 210, ...: each jump is the least even integer above 2^j times the last.

    The list is extended until its last entry exceeds ``up_to``.
    """
    jumps = [2]
    while jumps[-1] <= up_to:
        j = len(jumps)
        nxt = 2 ** j * jumps[-1] + 1
        jumps.append(nxt + (nxt % 2))
    return jumps


def _check_jumps(jumps: Sequence[int]) -> None:
    if not jumps or jumps[0] != 2:
        raise ValueError("jump sequence must start at 2")
    for j, (a, b) in enumerate(zip(jumps, jumps[1:]), start=1):
        if b % 2 or b <= 2 ** j * a:
            raise ValueError(f"jump {b} after {a} must be even and exceed {2 ** j * a}")


def _interval(n: int, jumps: Sequence[int] | None) -> tuple[int, int]:
    """(j, i_j) with i_j <= n < i_{j+1}; j counts from 1."""
    if jumps is None:
        jumps = canonical_jumps(n)
    else:
        _check_jumps(jumps)
        if jumps[-1] <= n:
            raise ValueError(f"jump sequence does not reach past {n}")
    j = max(k for k, i in enumerate(jumps) if i <= n)
    return j + 1, jumps[j]


def sigma(n: int, jumps: Sequence[int] | None = None) -> int:
    if n < 1:
        raise ValueError("sigma is defined for n >= 1")
    if n == 1:
        return 1
    _, start = _interval(n, jumps)
    return start // 2


def tau(n: int, jumps: Sequence[int] | None = None) -> int:
    if n < 2:
        raise ValueError("tau is defined for n >= 2")
    j, _ = _interval(n, jumps)
    return j % 2


# ---------------------------------------------------------------------------
# families


@dataclass(frozen=True, eq=False)
class GradedFamily:
    d: int
    kind: str
    base: MonomialIdeal | None = None
    other: MonomialIdeal | None = None
    nu: MonomialValuation | None = None
    slope: Fraction | None = None
    table: tuple = ()
    _memo: dict = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown family kind {self.kind!r}")
        if self.d < 1:
            raise ValueError("d >= 1 required")

    @property
    def value_type(self) -> str:
        return "pair" if self.kind in ("sigma_counterexample", "dao_smirnov") else "monomial"

    # constructors

    @classmethod
    def powers(cls, I: MonomialIdeal) -> GradedFamily:
        return cls(I.d, "powers", base=I)

    @classmethod
    def saturated_powers(cls, I: MonomialIdeal) -> GradedFamily:
        return cls(I.d, "saturated_powers", base=I)

    @classmethod
    def symbolic(cls, I: MonomialIdeal, J: MonomialIdeal) -> GradedFamily:
        if I.d != J.d:
            raise ValueError("ideals live in different dimensions")
        return cls(I.d, "symbolic", base=I, other=J)

    @classmethod
    def valuation(cls, v: MonomialValuation, slope) -> GradedFamily:
        slope = Fraction(slope)
        if slope <= 0:
            raise ValueError("slope must be positive")
        return cls(v.d, "valuation", nu=v, slope=slope)

    @classmethod
    def sigma_counterexample(cls, d: int) -> GradedFamily:
        return cls(d, "sigma_counterexample")

    @classmethod
    def dao_smirnov(cls, d: int) -> GradedFamily:
        return cls(d, "dao_smirnov")

    @classmethod
    def custom(cls, d: int, table: dict) -> GradedFamily:
        """Explicit ideals by level; level 0 defaults to the unit ideal."""
        rows = dict(table)
        unit = MonomialIdeal.unit(d)
        if 0 in rows and rows[0] != unit:
            raise ValueError("I_0 must be the unit ideal")
        rows[0] = unit
        for n, I in rows.items():
            if I.d != d:
                raise ValueError(f"I_{n} has dimension {I.d}, expected {d}")
        return cls(d, "custom", table=tuple(sorted(rows.items())))

    # evaluation

    def evaluate(self, n: int):
        if n < 0:
            raise ValueError("level must be nonnegative")
        if n not in self._memo:
            self._memo[n] = self._compute(n)
        return self._memo[n]

    def _compute(self, n: int):
        d = self.d
        if n == 0:
            return PairIdeal.unit(d) if self.value_type == "pair" else MonomialIdeal.unit(d)
        k = self.kind
        if k == "powers":
            return self._power(n)
        if k == "saturated_powers":
            return saturation(self._power(n))
        if k == "symbolic":
            return colon_power(self._power(n), self.other)
        if k == "valuation":
            return threshold_ideal(self.nu, math.ceil(self.slope * n))
        if k == "sigma_counterexample":
            return PairIdeal(MonomialIdeal.degree_power(d, n),
                             MonomialIdeal.degree_power(d, n - sigma(n)))
        if k == "dao_smirnov":
            # m_R^n + y m_R^{n - sigma(n)} in k[x, y]/(y^2), with m_R = (x, y)
            return pair_sum(self._pair_power(n), times_y(self._pair_power(n - sigma(n))))
        rows = dict(self.table)
        if n not in rows:
            raise ValueError(f"custom family has no entry for level {n}")
        return rows[n]

    def _chain(self, tag: str, n: int, one, step):
        """Memoised iterate x_n = step(x_{n-1}) with x_0 = one, built bottom-up."""
        k = n
        while k > 0 and (tag, k) not in self._memo:
            k -= 1
        cur = self._memo.get((tag, k), one)
        for i in range(k + 1, n + 1):
            cur = step(cur)
            self._memo[(tag, i)] = cur
        return cur

    def _power(self, n: int) -> MonomialIdeal:
        return self._chain("power", n, MonomialIdeal.unit(self.d), lambda I: product(I, self.base))

    def _pair_power(self, n: int) -> PairIdeal:
        M = PairIdeal.maximal(self.d)
        return self._chain("pair_power", n, PairIdeal.unit(self.d), lambda P: pair_product(P, M))

    def max_level(self) -> int | None:
        return max(n for n, _ in self.table) if self.kind == "custom" else None

    def to_json(self) -> dict:
        out = {"kind": self.kind, "d": self.d}
        if self.kind in ("powers", "saturated_powers", "symbolic"):
            out["ideal"] = self.base.to_json()
        if self.kind == "symbolic":
            out["by"] = self.other.to_json()
        if self.kind == "valuation":
            out["valuation"] = self.nu.to_json()
            out["slope"] = [self.slope.numerator, self.slope.denominator]
        if self.kind == "custom":
            out["table"] = {str(n): I.to_json() for n, I in self.table}
        return out

    @classmethod
    def from_json(cls, data: dict) -> GradedFamily:
        kind = data.get("kind")
        if kind in ("powers", "saturated_powers"):
            return getattr(cls, kind)(MonomialIdeal.from_json(data["ideal"]))
        if kind == "symbolic":
            return cls.symbolic(MonomialIdeal.from_json(data["ideal"]), MonomialIdeal.from_json(data["by"]))
        if kind == "valuation":
            s = data["slope"]
            slope = Fraction(s[0], s[1]) if isinstance(s, list) else Fraction(str(s))
            return cls.valuation(MonomialValuation.from_json(data["valuation"]), slope)
        if kind in ("sigma_counterexample", "dao_smirnov"):
            return getattr(cls, kind)(int(data["d"]))
        if kind == "custom":
            d = int(data["d"])
            return cls.custom(d, {int(n): MonomialIdeal.from_json(I) for n, I in data["table"].items()})
        raise ValueError(f"unknown family kind {kind!r}")


def evaluate(f: GradedFamily, n: int):
    return f.evaluate(n)


# ---------------------------------------------------------------------------
# multiplicativity


@dataclass(frozen=True)
class Witness:
    i: int
    j: int
    generator: tuple[int, ...]
    component: str = "A"


def _missing(prod: MonomialIdeal, target: MonomialIdeal):
    if not prod.gens:
        return None
    mask = target.contains_all(prod.gens)
    for g, ok in zip(prod.gens, mask):
        if not ok:
            return g
    return None


def verify_multiplicative(f: GradedFamily, max_n: int) -> Witness | None:
    """None when I_i I_j is inside I_{i+j} for all i + j <= max_n, else a witness."""
    for total in range(max_n + 1):
        target = f.evaluate(total)
        for i in range(total // 2 + 1):
            j = total - i
            if f.value_type == "pair":
                p = pair_product(f.evaluate(i), f.evaluate(j))
                for comp, have, want in (("A", p.A, target.A), ("yB", p.B, target.B)):
                    g = _missing(have, want)
                    if g is not None:
                        return Witness(i, j, g, comp)
            else:
                g = _missing(product(f.evaluate(i), f.evaluate(j)), target)
                if g is not None:
                    return Witness(i, j, g)
    return None


# ---------------------------------------------------------------------------
# sequences


@dataclass(frozen=True)
class LimitReport:
    d: int
    levels: tuple[int, ...]
    lengths: tuple[int, ...]
    normalized: tuple[Fraction, ...]
    window: tuple[int, int]
    window_min: Fraction
    window_max: Fraction
    oscillating: bool
    estimate: Fraction | None
    threshold: Fraction

    def rows(self):
        return zip(self.levels, self.lengths, self.normalized)

    def to_json(self) -> dict:
        def q(x):
            return None if x is None else [x.numerator, x.denominator]

        return {
            "d": self.d,
            "window": list(self.window),
            "window_min": q(self.window_min),
            "window_max": q(self.window_max),
            "oscillating": self.oscillating,
            "estimate": q(self.estimate),
            "threshold": q(self.threshold),
            "sequence": [{"n": n, "length": l, "normalized": q(r)} for n, l, r in self.rows()],
        }


def default_window(max_n: int) -> tuple[int, int]:
    """Levels ceil(max_n/4) .. max_n."""
    return max(1, -(-max_n // 4)), max_n


def affine_tail_fit(points: Sequence[tuple[int, Fraction]]) -> Fraction:
    """Intercept a of the exact least-squares fit r(n) = a + b/n."""
    if not points:
        raise ValueError("nothing to fit")
    if len(points) == 1:
        return Fraction(points[0][1])
    xs = [Fraction(1, n) for n, _ in points]
    ys = [Fraction(r) for _, r in points]
    k = len(xs)
    sx, sy = sum(xs), sum(ys)
    sxx = sum(x * x for x in xs)
    sxy = sum(x * y for x, y in zip(xs, ys))
    den = k * sxx - sx * sx
    b = (k * sxy - sx * sy) / den
    return (sy - b * sx) / k


def report_from_lengths(d: int, levels: Sequence[int], lengths: Sequence[int],
                        window: tuple[int, int] | None = None,
                        threshold=DEFAULT_THRESHOLD) -> LimitReport:
    if not levels:
        raise ValueError("empty sequence")
    scale = math.factorial(d)
    normalized = tuple(Fraction(scale * l, n ** d) for n, l in zip(levels, lengths))
    lo, hi = window or default_window(max(levels))
    tail = [(n, r) for n, r in zip(levels, normalized) if lo <= n <= hi]
    if not tail:
        raise ValueError(f"window [{lo}, {hi}] contains no levels")
    wmin = min(r for _, r in tail)
    wmax = max(r for _, r in tail)
    threshold = Fraction(threshold)
    if wmin == 0:
        oscillating = wmax != 0
    else:
        oscillating = wmax / wmin > threshold
    estimate = None if oscillating else affine_tail_fit(tail)
    return LimitReport(d, tuple(levels), tuple(lengths), normalized, (lo, hi), wmin, wmax,
                       oscillating, estimate, threshold)


def _colength(I) -> int | float:
    return pair_length(I) if isinstance(I, PairIdeal) else length(I)


def length_sequence(f: GradedFamily, max_n: int, window=None, threshold=DEFAULT_THRESHOLD) -> LimitReport:
    """Exact l(R/I_n) for n = 1..max_n, normalized by d!/n^d."""
    if max_n < 1:
        raise ValueError("max_n must be positive")
    lengths = []
    for n in range(1, max_n + 1):
        l = _colength(f.evaluate(n))
        if l == math.inf:
            raise ValueError(f"I_{n} has infinite colength")
        lengths.append(int(l))
    return report_from_lengths(f.d, range(1, max_n + 1), lengths, window, threshold)


class AgreementError(ValueError):
    pass


def agreement_constant(J: MonomialIdeal, I: MonomialIdeal, n: int) -> int | None:
    """Least c with m^{cn} meeting I and J in the same ideal, or None if there is none."""
    worst = 0
    for g in J.gens:
        need = min_power_inside(colon_monomial(I, g))
        if need == 0:
            continue
        if need == math.inf:
            return None
        worst = max(worst, sum(g) + need)
    return -(-worst // n) if n else 0


def quotient_length_sequence(fJ: GradedFamily, fI: GradedFamily, max_n: int, cap: int = 64,
                             window=None, threshold=DEFAULT_THRESHOLD) -> tuple[LimitReport, int]:
    """l(J_n/I_n) for n = 1..max_n, computed as
    l(R/(I_n + m^{cn})) - l(R/(J_n + m^{cn})) for one c valid at every level.

    Returns the report and the c used.
    """
    if fJ.d != fI.d:
        raise ValueError("families live in different dimensions")
    d = fJ.d
    pairs = []
    c = 1
    for n in range(1, max_n + 1):
        J, I = fJ.evaluate(n), fI.evaluate(n)
        g = next((g for g, ok in zip(I.gens, J.contains_all(I.gens) if I.gens else []) if not ok), None)
        if g is not None:
            raise AgreementError(f"I_{n} is not contained in J_{n}: generator {g}")
        cn = agreement_constant(J, I, n)
        if cn is None or cn > cap:
            raise AgreementError(f"no c <= {cap} makes I_{n} and J_{n} agree inside m^(cn)")
        c = max(c, cn)
        pairs.append((J, I))
    lengths = []
    for n, (J, I) in enumerate(pairs, start=1):
        box = MonomialIdeal.degree_power(d, c * n)
        lengths.append(int(length(I + box) - length(J + box)))
    return report_from_lengths(d, range(1, max_n + 1), lengths, window, threshold), c


def _count_difference(J: MonomialIdeal, I: MonomialIdeal) -> int:
    """#(monomials in J outside I), enumerated degree by degree."""
    from .monomial import _compositions

    import numpy as np

    top = max((sum(g) for g in J.gens), default=0)
    total = 0
    t = 0
    while True:
        pts = np.array(list(_compositions(t, J.d)), dtype=np.int64).reshape(-1, J.d)
        inJ = J.contains_all(pts)
        outside = int(np.count_nonzero(inJ & ~I.contains_all(pts)))
        total += outside
        if outside == 0 and t >= top:
            return total
        t += 1


def epsilon_sequence(I: MonomialIdeal, max_n: int, window=None, threshold=DEFAULT_THRESHOLD) -> LimitReport:
    """d! l((I^n)^sat / I^n) / n^d for n = 1..max_n."""
    if is_m_primary(I) and not I.is_unit():
        warnings.warn("I is m-primary: (I^n)^sat is the unit ideal and the sequence is l(R/I^n)",
                      stacklevel=2)
    lengths = []
    In = MonomialIdeal.unit(I.d)
    for _ in range(max_n):
        In = product(In, I)
        lengths.append(_count_difference(saturation(In), In))
    return report_from_lengths(I.d, range(1, max_n + 1), lengths, window, threshold)


@dataclass(frozen=True)
class VolMultReport:
    lhs: LimitReport
    rhs: tuple[tuple[int, Fraction], ...]
    gap: Fraction | None

    def to_json(self) -> dict:
        return {
            "lhs": self.lhs.to_json(),
            "rhs": [[p, [r.numerator, r.denominator]] for p, r in self.rhs],
            "gap": None if self.gap is None else [self.gap.numerator, self.gap.denominator],
        }


def vol_mult_check(f: GradedFamily, max_n: int, max_p: int) -> VolMultReport:
    """Compare lim d! l(R/I_n)/n^d with the sequence e(I_p)/p^d."""
    if f.value_type != "monomial":
        raise ValueError("volume = multiplicity check needs monomial ideals")
    lhs = length_sequence(f, max_n)
    rhs = []
    for p in range(1, max_p + 1):
        Ip = f.evaluate(p)
        if not is_m_primary(Ip):
            raise ValueError(f"I_{p} is not m-primary")
        e = multiplicity_covolume(Ip) if not Ip.is_unit() else Fraction(0)
        rhs.append((p, e / p ** f.d))
    gap = None if lhs.estimate is None else abs(lhs.estimate - rhs[-1][1])
    return VolMultReport(lhs, tuple(rhs), gap)
