"""Subsemigroups of Z^d x N: level slices, cone invariants and limit predictions.

A point is a tuple ``(v_1, ..., v_d, level)``.  ``slice(S, n)`` returns the
points of level ``n`` with the level coordinate dropped.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .exactmath import (
    Lattice,
    Polytope,
    convex_hull,
    hermite_normal_form,
    lattice_index,
    saturation,
    volume,
)

Point = tuple[int, ...]


class SemigroupLawError(ValueError):
    """S_i + S_j is not contained in S_{i+j}."""


@dataclass(frozen=True)
class GeneratedSemigroup:
    ambient_d: int
    generators: tuple[Point, ...]
    _memo: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        gens = sorted({tuple(int(x) for x in g) for g in self.generators})
        if not gens:
            raise ValueError("a generated semigroup needs at least one generator")
        for g in gens:
            if len(g) != self.ambient_d + 1:
                raise ValueError(f"generator {g} does not have length {self.ambient_d + 1}")
            if g[-1] < 1:
                raise ValueError(f"generator {g} has level < 1")
        object.__setattr__(self, "generators", tuple(gens))
        self._memo[0] = frozenset({(0,) * self.ambient_d})

    def _level(self, n: int) -> frozenset:
        memo = self._memo
        if n in memo:
            return memo[n]
        for k in range(max(memo) + 1, n + 1):
            pts = set()
            for g in self.generators:
                lvl = g[-1]
                if lvl > k:
                    continue
                v = g[:-1]
                for s in memo[k - lvl]:
                    pts.add(tuple(a + b for a, b in zip(s, v)))
            memo[k] = frozenset(pts)
        return memo[n]

    def slice(self, n: int) -> list[Point]:
        if n < 0:
            raise ValueError("level must be nonnegative")
        return sorted(self._level(n))

    def count(self, n: int) -> int:
        return len(self._level(n))

    def to_json(self) -> dict:
        return {"kind": "generated", "d": self.ambient_d, "generators": [list(g) for g in self.generators]}


@dataclass(frozen=True)
class TabulatedSemigroup:
    """A semigroup known only through a rule giving each level slice.

    The semigroup law is checked on construction for all ``i + j <= check_level``
    (default: ``max_level_hint``).
    """

    ambient_d: int
    slice_rule: Callable[[int], Iterable[Sequence[int]]]
    max_level_hint: int
    asserted_strongly_nonnegative: bool = False
    check_level: int | None = None
    _memo: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.max_level_hint < 0:
            raise ValueError("max_level_hint must be nonnegative")
        bound = self.max_level_hint if self.check_level is None else self.check_level
        for total in range(bound + 1):
            target = self._level(total)
            for i in range(total + 1):
                j = total - i
                if j < i:
                    break
                for a in self._level(i):
                    for b in self._level(j):
                        s = tuple(x + y for x, y in zip(a, b))
                        if s not in target:
                            raise SemigroupLawError(
                                f"semigroup law fails: {a}@{i} + {b}@{j} = {s} not in level {total}")

    def _level(self, n: int) -> frozenset:
        if n not in self._memo:
            pts = frozenset(tuple(int(x) for x in p) for p in self.slice_rule(n))
            for p in pts:
                if len(p) != self.ambient_d:
                    raise ValueError(f"slice point {p} at level {n} has wrong dimension")
            self._memo[n] = pts
        return self._memo[n]

    def slice(self, n: int) -> list[Point]:
        if n < 0:
            raise ValueError("level must be nonnegative")
        return sorted(self._level(n))

    def count(self, n: int) -> int:
        return len(self._level(n))

    def to_json(self) -> dict:
        return {
            "kind": "tabulated",
            "d": self.ambient_d,
            "slices": {str(n): [list(p) for p in self.slice(n)] for n in range(self.max_level_hint + 1)},
            "strongly_nonnegative": self.asserted_strongly_nonnegative,
        }

    @classmethod
    def from_table(cls, d: int, table: dict[int, Iterable[Sequence[int]]], **kw) -> TabulatedSemigroup:
        frozen = {int(k): [tuple(p) for p in v] for k, v in table.items()}
        top = max(frozen) if frozen else 0

        def rule(n: int):
            if n > top:
                raise ValueError(f"level {n} is beyond the tabulated range 0..{top}")
            return frozen.get(n, [])

        return cls(d, rule, top, **kw)


Semigroup = GeneratedSemigroup | TabulatedSemigroup


def empty_semigroup(d: int, max_level: int = 0) -> TabulatedSemigroup:
    """The trivial semigroup {0}, used as an empty stack layer."""
    zero = (0,) * d
    return TabulatedSemigroup(d, lambda n: [zero] if n == 0 else [], max_level,
                              asserted_strongly_nonnegative=True)


def slice(S: Semigroup, n: int) -> list[Point]:
    return S.slice(n)


# ---------------------------------------------------------------------------
# invariants


@dataclass(frozen=True)
class OkounkovReport:
    m: int
    q: int
    ind: int
    body: Polytope
    vol: Fraction
    limit: Fraction
    inner_approximation: bool = False

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "q": self.q,
            "ind": self.ind,
            "body": self.body.to_json(),
            "body_level": self.m,
            "vol": [self.vol.numerator, self.vol.denominator],
            "limit": [self.limit.numerator, self.limit.denominator],
            "inner_approximation": self.inner_approximation,
        }


def _structure_points(S: Semigroup, probe_level: int | None) -> list[Point]:
    if isinstance(S, GeneratedSemigroup):
        return list(S.generators)
    if not S.asserted_strongly_nonnegative:
        raise ValueError("tabulated semigroup must be asserted strongly nonnegative")
    top = S.max_level_hint if probe_level is None else probe_level
    pts = []
    for n in range(top + 1):
        pts.extend(p + (n,) for p in S.slice(n))
    return pts


def structure(S: Semigroup, probe_level: int | None = None) -> OkounkovReport:
    """m(S), q(S), ind(S), the body at level m(S) and the predicted limit vol/ind."""
    pts = _structure_points(S, probe_level)
    d = S.ambient_d
    leveled = [p for p in pts if p[-1] > 0]
    if not leveled:
        raise ValueError("semigroup is contained in level 0")
    # level coordinate first, so the HNF splits off the level-0 sublattice
    H = hermite_normal_form([(p[-1],) + p[:-1] for p in pts])
    m = H[0][0]
    level0 = Lattice(tuple(row[1:] for row in H[1:]), d)
    q = len(H) - 1
    sat = saturation(level0)
    ind = lattice_index(level0, sat)
    body = convex_hull(tuple(Fraction(m * x, p[-1]) for x in p[:-1]) for p in leveled)
    if body.affine_dim != q:
        raise AssertionError(f"body has dimension {body.affine_dim}, expected q={q}")
    vol = volume(body, sat)
    return OkounkovReport(m, q, int(ind), body, vol, vol / ind,
                          inner_approximation=isinstance(S, TabulatedSemigroup))


def kk_limit(S: Semigroup) -> Fraction:
    """Predicted value of lim #S_{mk} / k^q."""
    return structure(S).limit


def empirical_ratio(S: Semigroup, max_k: int, report: OkounkovReport | None = None) -> list[tuple[int, Fraction]]:
    rep = report or structure(S)
    return [(k, Fraction(S.count(rep.m * k), k ** rep.q)) for k in range(1, max_k + 1)]


@dataclass(frozen=True)
class FujitaReport:
    p: int
    level: int
    sub_report: OkounkovReport
    subsemigroup_limit: Fraction
    sequence: tuple[tuple[int, Fraction], ...]

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "level": self.level,
            "subsemigroup": self.sub_report.to_json(),
            "subsemigroup_limit": [self.subsemigroup_limit.numerator, self.subsemigroup_limit.denominator],
            "sequence": [[k, [r.numerator, r.denominator]] for k, r in self.sequence],
        }


def fujita(S: Semigroup, p: int, max_k: int, report: OkounkovReport | None = None) -> FujitaReport:
    """Approximate S by the subsemigroup generated by its slice at level p*m(S)."""
    if p < 1:
        raise ValueError("p must be positive")
    rep = report or structure(S)
    level = p * rep.m
    base = S.slice(level)
    if not base:
        raise ValueError(f"slice at level {level} is empty")
    sub = GeneratedSemigroup(S.ambient_d, tuple(v + (level,) for v in base))
    sub_rep = structure(sub)
    q = rep.q
    # a sub-body of lower dimension grows more slowly and contributes 0 in the limit
    sub_limit = sub_rep.limit / p ** q if sub_rep.q == q else Fraction(0)
    seq = tuple((k, Fraction(sub.count(k * level), k ** q * p ** q)) for k in range(1, max_k + 1))
    return FujitaReport(p, level, sub_rep, sub_limit, seq)


# ---------------------------------------------------------------------------
# stacks S^(1) ⊇ S^(2) ⊇ ...


class NestingError(ValueError):
    pass


@dataclass(frozen=True)
class SemigroupStack:
    layers: tuple
    check_level: int = 0

    def __post_init__(self):
        layers = tuple(self.layers)
        if not layers:
            raise ValueError("a stack needs at least one layer")
        if len({S.ambient_d for S in layers}) != 1:
            raise ValueError("stack layers must share ambient_d")
        object.__setattr__(self, "layers", layers)
        for n in range(self.check_level + 1):
            self.check_nesting(n)

    def check_nesting(self, n: int) -> None:
        for t in range(len(self.layers) - 1):
            upper = set(self.layers[t].slice(n))
            for pt in self.layers[t + 1].slice(n):
                if pt not in upper:
                    raise NestingError(
                        f"layer {t + 2} is not contained in layer {t + 1}: point {pt} at level {n}")


def stack_dimension(stack: SemigroupStack, n: int) -> int:
    """Sum over layers of #S^(t)_n."""
    stack.check_nesting(n)
    return sum(S.count(n) for S in stack.layers)


def _is_trivial(S: Semigroup) -> bool:
    if isinstance(S, GeneratedSemigroup):
        return False
    return all(p == (0,) * S.ambient_d and n == 0
               for n in range(S.max_level_hint + 1) for p in S.slice(n))


def stack_limit(stack: SemigroupStack) -> Fraction:
    reports = [structure(S) for S in stack.layers if not _is_trivial(S)]
    if not reports:
        return Fraction(0)
    if len({r.m for r in reports}) > 1 or len({r.q for r in reports}) > 1:
        raise ValueError("stack layers have different m or q")
    return sum((r.limit for r in reports), Fraction(0))


def semigroup_from_json(data: dict) -> Semigroup:
    kind = data.get("kind")
    d = int(data["d"])
    if kind == "generated":
        return GeneratedSemigroup(d, tuple(tuple(g) for g in data["generators"]))
    if kind == "tabulated":
        table = {int(k): v for k, v in data["slices"].items()}
        return TabulatedSemigroup.from_table(
            d, table, asserted_strongly_nonnegative=bool(data.get("strongly_nonnegative", False)))
    raise ValueError(f"unknown semigroup kind {kind!r}")
