"""Multidegrees of monomial maps through exact polytope volumes.

d_i(f) is the mixed volume of (n - i) copies of the standard simplex and
i copies of the Newton simplex of f. We get all of them at once from the
polynomial V(t) = vol(simplex + t * Newton simplex): d_i = (n-i)! i! [t^i] V.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import FrozenSet, List, Sequence, Tuple

from . import intlin
from .monomap import MonomialMap, ValidationError, map_degree, normalize

Point = Tuple[int, ...]


@dataclass(frozen=True)
class LatticePolytope:
    dim: int
    points: Tuple[Point, ...]

    def __post_init__(self):
        pts = tuple(sorted({tuple(int(x) for x in p) for p in self.points}))
        for p in pts:
            if len(p) != self.dim:
                raise ValueError(f"point {p} does not have {self.dim} coordinates")
        object.__setattr__(self, "points", pts)


def standard_simplex(n: int) -> LatticePolytope:
    pts = [tuple(0 for _ in range(n))]
    pts += [tuple(int(i == j) for j in range(n)) for i in range(n)]
    return LatticePolytope(n, tuple(pts))


def newton_simplex(f: MonomialMap) -> LatticePolytope:
    return LatticePolytope(f.n, tuple(row[1:] for row in f.matrix))


def minkowski_sum(p: LatticePolytope, q: LatticePolytope, s: int = 1, t: int = 1) -> LatticePolytope:
    if p.dim != q.dim:
        raise ValueError(f"dimension mismatch: {p.dim} vs {q.dim}")
    pts = {tuple(s * x + t * y for x, y in zip(a, b)) for a in p.points for b in q.points}
    return LatticePolytope(p.dim, tuple(pts))


# -- exact volume -----------------------------------------------------------


def _affine_rank(points: Sequence[Point]) -> int:
    if len(points) <= 1:
        return 0
    base = points[0]
    rows = [[x - y for x, y in zip(p, base)] for p in points[1:]]
    return _rank(rows)


def _rank(rows: List[List[int]]) -> int:
    rows = [r[:] for r in rows if any(r)]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        p = rows[rank]
        for i in range(rank + 1, len(rows)):
            if rows[i][col]:
                q = rows[i][col]
                rows[i] = [p[col] * x - q * y for x, y in zip(rows[i], p)]
        rank += 1
    return rank


def _normal(points: Sequence[Point]) -> Tuple[int, ...]:
    """Integer normal of the hyperplane through n points in R^n (zero if degenerate)."""
    base = points[0]
    vecs = [[x - y for x, y in zip(p, base)] for p in points[1:]]
    n = len(base)
    if n == 1:
        return (1,)
    if n == 2:
        (u0, u1), = vecs
        return (-u1, u0)
    if n == 3:
        (u0, u1, u2), (v0, v1, v2) = vecs
        return (u1 * v2 - u2 * v1, u2 * v0 - u0 * v2, u0 * v1 - u1 * v0)
    out = []
    for k in range(n):
        minor = tuple(tuple(v[j] for j in range(n) if j != k) for v in vecs)
        out.append((-1) ** k * intlin.det_exact(minor))
    return tuple(out)


def _facets(points: Sequence[Point]) -> List[FrozenSet[int]]:
    """Index sets of the facets of conv(points), which must be full-dimensional.

    Brute force: every n-subset spanning a hyperplane with all points
    weakly on one side. Subsets inside an already found facet are skipped.
    """
    n = len(points[0])
    found: List[int] = []
    facets: List[FrozenSet[int]] = []
    idx = range(len(points))
    for sub in combinations(idx, n):
        mask = 0
        for i in sub:
            mask |= 1 << i
        if any(mask & f == mask for f in found):
            continue
        a = _normal([points[i] for i in sub])
        if not any(a):
            continue
        b = sum(x * y for x, y in zip(a, points[sub[0]]))
        pos = neg = False
        on = 0
        for i, p in enumerate(points):
            s = sum(x * y for x, y in zip(a, p)) - b
            if s > 0:
                pos = True
            elif s < 0:
                neg = True
            else:
                on |= 1 << i
            if pos and neg:
                break
        if pos and neg:
            continue
        found.append(on)
        facets.append(frozenset(i for i in idx if on >> i & 1))
    return facets


def _triangulate(face, k, facets, points, memo) -> List[Tuple[int, ...]]:
    """Cone a k-dimensional face from one of its points over its (k-1)-faces."""
    if k == 0:
        return [(min(face),)]
    key = face
    if key in memo:
        return memo[key]
    subfaces = set()
    for g in facets:
        inter = face & g
        if inter != face and len(inter) >= k and _affine_rank([points[i] for i in sorted(inter)]) == k - 1:
            subfaces.add(inter)
    apex = min(face)
    simplices = []
    for sub in sorted(subfaces, key=sorted):
        if apex in sub:
            continue
        for s in _triangulate(sub, k - 1, facets, points, memo):
            simplices.append(s + (apex,))
    memo[key] = simplices
    return simplices


def volume_exact(poly: LatticePolytope) -> Fraction:
    """Euclidean volume of the convex hull; 0 when it is not full-dimensional."""
    pts = poly.points
    n = poly.dim
    if n == 0:
        return Fraction(1)
    if len(pts) <= n or _affine_rank(pts) < n:
        return Fraction(0)
    if n == 1:
        return Fraction(pts[-1][0] - pts[0][0])
    facets = _facets(pts)
    whole = frozenset(range(len(pts)))
    total = 0
    for simplex in _triangulate(whole, n, facets, pts, {}):
        base = pts[simplex[-1]]
        rows = tuple(tuple(x - y for x, y in zip(pts[i], base)) for i in simplex[:-1])
        total += abs(intlin.det_exact(rows))
    return Fraction(total, factorial(n))


# -- multidegree ------------------------------------------------------------


@dataclass(frozen=True)
class VolumePolynomial:
    coefficients: Tuple[Fraction, ...]

    def __call__(self, t) -> Fraction:
        return sum(c * Fraction(t) ** i for i, c in enumerate(self.coefficients))


def _interpolate(values: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    """Coefficients of the polynomial through (k, values[k]), k = 0..len-1."""
    m = len(values)
    coeffs = [Fraction(0)] * m
    for k, yk in enumerate(values):
        # Lagrange basis polynomial for node k, expanded in the monomial basis
        basis = [Fraction(1)]
        denom = 1
        for j in range(m):
            if j == k:
                continue
            denom *= k - j
            nxt = [Fraction(0)] * (len(basis) + 1)
            for i, c in enumerate(basis):
                nxt[i] -= j * c
                nxt[i + 1] += c
            basis = nxt
        for i, c in enumerate(basis):
            coeffs[i] += yk * c / denom
    return tuple(coeffs)


def volume_polynomial(f: MonomialMap) -> VolumePolynomial:
    if map_degree(f) == 0:
        raise ValidationError("map is not dominant: its Newton simplex is degenerate")
    simplex = standard_simplex(f.n)
    newton = newton_simplex(f)
    values = [volume_exact(minkowski_sum(simplex, newton, 1, t)) for t in range(f.n + 1)]
    poly = VolumePolynomial(_interpolate(values))
    assert all(c >= 0 for c in poly.coefficients)
    return poly


def multidegree(f: MonomialMap) -> Tuple[int, ...]:
    """Projective degrees (d_0, ..., d_n)."""
    f = normalize(f)
    n = f.n
    coeffs = volume_polynomial(f).coefficients
    out = []
    for i, c in enumerate(coeffs):
        scaled = c * factorial(n - i) * factorial(i)
        if scaled.denominator != 1:
            raise ArithmeticError(f"non-integral multidegree entry d_{i} = {scaled}")
        out.append(int(scaled))
    assert out[0] == 1 and out[1] == f.d and out[n] == map_degree(f), out
    return tuple(out)
