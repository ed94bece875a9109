"""Exact rational linear algebra and small-dimensional convex geometry.

Everything here works over :class:`fractions.Fraction` and Python integers.
No geometric predicate ever touches a float.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence

DEFAULT_DIM_CAP = 4


def dim_cap() -> int:
    """Largest ambient dimension accepted by :func:`convex_hull`."""
    raw = os.environ.get("OKOUNKOV_DIM_CAP")
    if raw is None:
        return DEFAULT_DIM_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"OKOUNKOV_DIM_CAP must be an integer, got {raw!r}") from None
    if cap < 1:
        raise ValueError("OKOUNKOV_DIM_CAP must be >= 1")
    return cap


def as_point(coords: Iterable) -> tuple[Fraction, ...]:
    return tuple(Fraction(c) for c in coords)


# ---------------------------------------------------------------------------
# rational linear algebra


def _rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    A = [[Fraction(x) for x in r] for r in rows]
    if not A:
        return [], []
    ncols = len(A[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(_rref(rows)[1])


def det(matrix: Sequence[Sequence]) -> Fraction:
    """Determinant of a square matrix by exact Gaussian elimination."""
    A = [[Fraction(x) for x in r] for r in matrix]
    n = len(A)
    if n == 0:
        return Fraction(1)
    if any(len(r) != n for r in A):
        raise ValueError("determinant needs a square matrix")
    sign = 1
    result = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            sign = -sign
        p = A[c][c]
        result *= p
        for i in range(c + 1, n):
            if A[i][c] != 0:
                f = A[i][c] / p
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return sign * result


def solve_in_span(basis: Sequence[Sequence], v: Sequence) -> list[Fraction] | None:
    """Coordinates of ``v`` in the row basis ``basis``, or None if v is outside the span."""
    k = len(basis)
    if k == 0:
        return [] if all(x == 0 for x in v) else None
    _, pivots = _rref(basis)
    if len(pivots) < k:
        raise ValueError("basis vectors are linearly dependent")
    # square subsystem on pivot columns, then verify on all columns
    M = [[Fraction(basis[i][c]) for i in range(k)] + [Fraction(v[c])] for c in pivots]
    R, piv2 = _rref(M)
    coeffs = [Fraction(0)] * k
    for row, pc in zip(R, piv2):
        if pc == k:
            return None
        coeffs[pc] = row[k]
    for c in range(len(v)):
        if sum(coeffs[i] * basis[i][c] for i in range(k)) != v[c]:
            return None
    return coeffs


# ---------------------------------------------------------------------------
# integer normal forms


def hermite_normal_form(rows: Iterable[Sequence[int]]) -> list[tuple[int, ...]]:
    """Row-style Hermite normal form of the integer row span.

    Returns the nonzero rows: echelon form, positive pivots, and entries above
    each pivot reduced into ``[0, pivot)``.
    """
    A = [[int(x) for x in r] for r in rows]
    A = [r for r in A if any(r)]
    if not A:
        return []
    ncols = len(A[0])
    top = 0
    for c in range(ncols):
        if top == len(A):
            break
        while True:
            nz = [i for i in range(top, len(A)) if A[i][c] != 0]
            if not nz:
                break
            best = min(nz, key=lambda i: abs(A[i][c]))
            A[top], A[best] = A[best], A[top]
            clean = True
            for i in range(top + 1, len(A)):
                if A[i][c] != 0:
                    q = A[i][c] // A[top][c]
                    A[i] = [x - q * y for x, y in zip(A[i], A[top])]
                    if A[i][c] != 0:
                        clean = False
            if clean:
                break
        if A[top][c] == 0:
            continue
        if A[top][c] < 0:
            A[top] = [-x for x in A[top]]
        p = A[top][c]
        for i in range(top):
            q = A[i][c] // p
            if q:
                A[i] = [x - q * y for x, y in zip(A[i], A[top])]
        top += 1
    return [tuple(r) for r in A[:top]]


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> list[tuple[int, ...]]:
    """Basis of ``{x in Z^ncols : r . x = 0 for every row r}``."""
    r = len(rows)
    aug = []
    for j in range(ncols):
        aug.append([int(rows[i][j]) for i in range(r)] + [1 if t == j else 0 for t in range(ncols)])
    H = hermite_normal_form(aug)
    return [row[r:] for row in H if not any(row[:r])]


def smith_diagonal(matrix: Sequence[Sequence[int]]) -> list[int]:
    """Invariant factors d_1 | d_2 | ... of an integer matrix (zeros dropped)."""
    A = [[int(x) for x in r] for r in matrix]
    if not A or not A[0]:
        return []
    m, n = len(A), len(A[0])
    diag: list[int] = []
    t = 0
    while t < min(m, n):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j] != 0]
        if not nz:
            break
        _, i0, j0 = min(nz)
        A[t], A[i0] = A[i0], A[t]
        for row in A:
            row[t], row[j0] = row[j0], row[t]
        while True:
            p = A[t][t]
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    A[i] = [x - q * y for x, y in zip(A[i], A[t])]
                    if A[i][t]:
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // p
                    for row in A:
                        row[j] -= q * row[t]
                    if A[t][j]:
                        done = False
            if not done:
                nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n)
                      if A[i][j] != 0 and (i == t or j == t)]
                _, i0, j0 = min(nz)
                A[t], A[i0] = A[i0], A[t]
                for row in A:
                    row[t], row[j0] = row[j0], row[t]
                continue
            # pivot must divide the remaining block
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % p), None)
            if bad is None:
                break
            A[t] = [x + y for x, y in zip(A[t], A[bad[0]])]
        diag.append(abs(A[t][t]))
        t += 1
    return diag


@dataclass(frozen=True)
class Lattice:
    """A lattice given by integer row vectors, stored in Hermite normal form."""

    basis: tuple[tuple[int, ...], ...]
    ambient_dim: int

    def __post_init__(self):
        basis = tuple(tuple(int(x) for x in b) for b in self.basis)
        if any(len(b) != self.ambient_dim for b in basis):
            raise ValueError("basis vector length does not match ambient_dim")
        if rank(basis) != len(basis):
            raise ValueError("lattice basis vectors must be linearly independent")
        object.__setattr__(self, "basis", tuple(hermite_normal_form(basis)))

    @classmethod
    def standard(cls, n: int) -> Lattice:
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)), n)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence[int]) -> bool:
        coords = solve_in_span(self.basis, v)
        return coords is not None and all(c.denominator == 1 for c in coords)

    def to_json(self) -> dict:
        return {"basis": [list(b) for b in self.basis], "ambient_dim": self.ambient_dim}


def subgroup_basis(vectors: Iterable[Sequence[int]], ambient_dim: int | None = None) -> Lattice:
    vecs = [tuple(int(x) for x in v) for v in vectors]
    if not vecs and ambient_dim is None:
        raise ValueError("subgroup_basis needs at least one vector")
    n = ambient_dim if ambient_dim is not None else len(vecs[0])
    return Lattice(tuple(hermite_normal_form(vecs)), n)


def saturation(lat: Lattice) -> Lattice:
    """span_Q(lat) intersected with Z^n."""
    n = lat.ambient_dim
    perp = integer_kernel(lat.basis, n)
    sat = integer_kernel(perp, n)
    return Lattice(tuple(sat), n)


def lattice_index(sub: Lattice, ambient: Lattice) -> int | float:
    """Index [ambient : sub]; ``math.inf`` when sub has smaller rank."""
    if sub.ambient_dim != ambient.ambient_dim:
        raise ValueError("lattices live in different ambient spaces")
    coords = []
    for b in sub.basis:
        c = solve_in_span(ambient.basis, b)
        if c is None:
            raise ValueError("sub is not contained in the rational span of ambient")
        coords.append(c)
    if sub.rank < ambient.rank:
        return float("inf")
    if any(x.denominator != 1 for row in coords for x in row):
        raise ValueError("sub is not a sublattice of ambient")
    if sub.rank == 0:
        return 1
    factors = smith_diagonal([[int(x) for x in row] for row in coords])
    out = 1
    for f in factors:
        out *= f
    return out


# ---------------------------------------------------------------------------
# convex hulls


@dataclass(frozen=True)
class Polytope:
    vertices: tuple[tuple[Fraction, ...], ...]
    ambient_dim: int
    affine_dim: int

    def to_json(self) -> dict:
        return {
            "vertices": [[[c.numerator, c.denominator] for c in v] for v in self.vertices],
            "ambient_dim": self.ambient_dim,
            "affine_dim": self.affine_dim,
        }

    @classmethod
    def from_json(cls, data: dict) -> Polytope:
        pts = [tuple(Fraction(n, d) for n, d in v) for v in data["vertices"]]
        return convex_hull(pts)


def _affine_frame(points: Sequence[tuple]) -> tuple[tuple, list[int], int]:
    origin = points[0]
    diffs = [tuple(a - b for a, b in zip(p, origin)) for p in points[1:]]
    _, pivots = _rref(diffs) if diffs else ([], [])
    return origin, pivots, len(pivots)


def _local(points, origin, pivots):
    return [tuple(p[c] - origin[c] for c in pivots) for p in points]


def _normal(vectors: Sequence[Sequence[Fraction]], k: int) -> list[Fraction]:
    # generalized cross product of k-1 vectors in R^k
    out = []
    for i in range(k):
        minor = [[v[j] for j in range(k) if j != i] for v in vectors]
        out.append((-1) ** i * det(minor))
    return out


def _dot(a, b) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def _line_extremes(points: list[tuple]) -> list[tuple]:
    # a vertex of the hull is extreme on every line through it
    groups: dict[tuple, list] = {}
    for p in points:
        key = p[1:]
        g = groups.get(key)
        if g is None:
            groups[key] = [p, p]
        else:
            if p[0] < g[0][0]:
                g[0] = p
            if p[0] > g[1][0]:
                g[1] = p
    out = set()
    for lo, hi in groups.values():
        out.add(lo)
        out.add(hi)
    return sorted(out)


def _hull_facets(local: list[tuple], k: int) -> list[tuple[tuple[int, ...], list[Fraction], Fraction]]:
    """Triangulated boundary of a full-dimensional point set in R^k (k >= 2).

    Beneath-beyond insertion.  Coplanar points count as not visible, so the
    boundary may carry non-extreme points; callers filter those.
    """
    n = len(local)
    simplex = [0]
    for i in range(1, n):
        trial = simplex + [i]
        diffs = [tuple(a - b for a, b in zip(local[j], local[trial[0]])) for j in trial[1:]]
        if rank(diffs) == len(trial) - 1:
            simplex = trial
            if len(simplex) == k + 1:
                break
    if len(simplex) != k + 1:
        raise AssertionError("point set is not full-dimensional in its frame")
    centre = tuple(sum(local[i][c] for i in simplex) / (k + 1) for c in range(k))

    def make_facet(idx: tuple[int, ...]):
        base = local[idx[0]]
        vecs = [tuple(a - b for a, b in zip(local[j], base)) for j in idx[1:]]
        nrm = _normal(vecs, k)
        off = _dot(nrm, base)
        if _dot(nrm, centre) > off:
            nrm = [-x for x in nrm]
            off = -off
        return (tuple(sorted(idx)), nrm, off)

    facets = [make_facet(tuple(f)) for f in itertools.combinations(simplex, k)]
    in_simplex = set(simplex)
    for p in range(n):
        if p in in_simplex:
            continue
        pt = local[p]
        visible = [f for f in facets if _dot(f[1], pt) > f[2]]
        if not visible:
            continue
        ridge_count: dict[tuple[int, ...], int] = {}
        for idx, _, _ in visible:
            for ridge in itertools.combinations(idx, k - 1):
                ridge_count[ridge] = ridge_count.get(ridge, 0) + 1
        vis_ids = {id(f) for f in visible}
        facets = [f for f in facets if id(f) not in vis_ids]
        for ridge, cnt in ridge_count.items():
            if cnt == 1:
                facets.append(make_facet(ridge + (p,)))
    return facets


def _extreme_indices(facets, k: int) -> list[int]:
    incident: dict[int, list] = {}
    for idx, nrm, _ in facets:
        for i in idx:
            incident.setdefault(i, []).append(nrm)
    return sorted(i for i, normals in incident.items() if rank(normals) == k)


def convex_hull(points: Iterable[Sequence]) -> Polytope:
    """Irredundant vertex set of the convex hull of finitely many rational points."""
    pts = sorted({as_point(p) for p in points})
    if not pts:
        raise ValueError("empty point set")
    n_amb = len(pts[0])
    if any(len(p) != n_amb for p in pts):
        raise ValueError("points have mixed dimensions")
    cap = dim_cap()
    if n_amb > cap:
        raise ValueError(f"ambient dimension {n_amb} exceeds the hull dimension cap {cap}")
    origin, pivots, k = _affine_frame(pts)
    if k == 0:
        return Polytope((pts[0],), n_amb, 0)
    local = _line_extremes(_local(pts, origin, pivots))
    back = {}
    for p in pts:
        back.setdefault(tuple(p[c] - origin[c] for c in pivots), p)
    if k == 1:
        verts = [back[local[0]], back[local[-1]]]
    else:
        facets = _hull_facets(local, k)
        verts = [back[local[i]] for i in _extreme_indices(facets, k)]
    return Polytope(tuple(sorted(verts)), n_amb, k)


def _edge_coords(reference: Lattice, vec) -> list[Fraction]:
    c = solve_in_span(reference.basis, vec)
    if c is None:
        raise ValueError("lattice/hull mismatch")
    return c


def volume(p: Polytope, reference: Lattice, apex: int = 0) -> Fraction:
    """affine_dim-dimensional volume of ``p``, normalised so ``reference`` has unit covolume.

    The polytope is triangulated as a fan from vertex ``apex`` over the
    boundary simplices not containing it.
    """
    k = p.affine_dim
    if reference.ambient_dim != p.ambient_dim:
        raise ValueError("lattice/hull mismatch")
    if reference.rank != k:
        raise ValueError("lattice/hull mismatch")
    verts = list(p.vertices)
    # the reference lattice must span the direction space of the hull
    for v in verts[1:]:
        _edge_coords(reference, tuple(a - b for a, b in zip(v, verts[0])))
    if k == 0:
        return Fraction(1)
    if k == 1:
        c = _edge_coords(reference, tuple(a - b for a, b in zip(verts[1], verts[0])))
        return abs(c[0])
    origin, pivots, _ = _affine_frame(verts)
    local = _local(verts, origin, pivots)
    facets = _hull_facets(local, k)
    if not 0 <= apex < len(verts):
        raise ValueError("apex index out of range")
    top = verts[apex]
    total = Fraction(0)
    for idx, _, _ in facets:
        if apex in idx:
            continue
        rows = [_edge_coords(reference, tuple(a - b for a, b in zip(verts[i], top))) for i in idx]
        total += abs(det(rows))
    return total / factorial(k)


def shoelace_area(polygon: Sequence[Sequence]) -> Fraction:
    """Area of a simple polygon given in cyclic order."""
    pts = [as_point(p) for p in polygon]
    s = Fraction(0)
    for (x1, y1), (x2, y2) in zip(pts, pts[1:] + pts[:1]):
        s += x1 * y2 - x2 * y1
    return abs(s) / 2

