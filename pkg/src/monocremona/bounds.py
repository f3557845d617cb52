"""Inequalities satisfied by multidegrees of monomial maps.

Everything is integer arithmetic. Fractional exponents are cleared by
raising both (positive) sides to the power c - 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from .indet import IndeterminacyLocus, indeterminacy
from .mixedvol import multidegree
from .monomap import MonomialMap, map_degree, normalize


@dataclass(frozen=True)
class Claim:
    """One inequality instance with the exact integers compared (lhs <= rhs or lhs == rhs)."""

    name: str
    index: Optional[int]
    lhs: int
    relation: str
    rhs: int

    @property
    def holds(self) -> bool:
        if self.relation == "<=":
            return self.lhs <= self.rhs
        if self.relation == ">=":
            return self.lhs >= self.rhs
        return self.lhs == self.rhs


def prop3_c(n: int) -> int:
    return n // 2 + 1


def log_concavity_claims(dvec: Sequence[int]) -> List[Claim]:
    return [
        Claim("log_concave", i, dvec[i] ** 2, ">=", dvec[i + 1] * dvec[i - 1])
        for i in range(1, len(dvec) - 1)
    ]


def check_log_concavity(dvec: Sequence[int]) -> bool:
    return all(c.holds for c in log_concavity_claims(dvec))


def power_bound_claims(dvec: Sequence[int], d: int) -> List[Claim]:
    """d_i <= d^i."""
    return [Claim("power_bound", i, x, "<=", d ** i) for i, x in enumerate(dvec)]


def _prop3_claim(name, i, di, d, c):
    lhs = di ** (c - 1) * d ** (c * (i - 1))
    rhs = (d ** c - 1) ** (i - 1) * d ** (i * (c - 1))
    return Claim(name, i, lhs, "<=", rhs)


@dataclass(frozen=True)
class Prop3Result:
    applicable: bool
    holds: bool
    claims: List[Claim] = field(default_factory=list)


def check_prop3(dvec: Sequence[int], d: int, deg: int) -> Prop3Result:
    """d_i <= (1 - d^-c)^((i-1)/(c-1)) d^i for c <= i <= n, when d does not divide deg."""
    n = len(dvec) - 1
    c = prop3_c(n)
    if d < 2 or deg % d == 0 or c < 2:
        return Prop3Result(False, True)
    claims = [_prop3_claim("prop3", i, dvec[i], d, c) for i in range(c, n + 1)]
    return Prop3Result(True, all(cl.holds for cl in claims), claims)


@dataclass(frozen=True)
class SegreResult:
    segre_exact: bool
    segre_top_bound: bool
    claims: List[Claim] = field(default_factory=list)


def check_segre_relations(dvec: Sequence[int], locus: IndeterminacyLocus, d: int) -> SegreResult:
    """d_i = d^i below the codimension of the base locus, and a drop of at
    least the number of top components at the codimension itself.
    """
    n = len(dvec) - 1
    if locus.empty:
        claims = [Claim("segre_exact", i, dvec[i], "==", d ** i) for i in range(n + 1)]
        return SegreResult(all(c.holds for c in claims), True, claims)
    cc = locus.codim
    exact = [Claim("segre_exact", i, dvec[i], "==", d ** i) for i in range(cc)]
    top = Claim("segre_top", cc, dvec[cc], "<=", d ** cc - locus.top_count)
    return SegreResult(all(c.holds for c in exact), top.holds, exact + [top])


@dataclass(frozen=True)
class BirationalBounds:
    within_general_bound: bool
    bound4_applicable: bool
    within_bound4: bool
    claims: List[Claim] = field(default_factory=list)


def check_birational_bounds(f: MonomialMap, dvec: Sequence[int]) -> BirationalBounds:
    f = normalize(f)
    n, d = f.n, f.d
    if dvec[n] != 1:
        raise ValueError(f"map is not birational (d_n = {dvec[n]})")
    general = Claim("inverse_general", n - 1, dvec[n - 1], "<=", d ** (n - 1))
    claims = [general]
    c = prop3_c(n)
    applicable = d >= 2 and c >= 2
    within4 = True
    if applicable:
        b4 = _prop3_claim("inverse_bound4", n - 1, dvec[n - 1], d, c)
        claims.append(b4)
        within4 = b4.holds
    return BirationalBounds(general.holds, applicable, within4, claims)


@dataclass(frozen=True)
class BoundsReport:
    n: int
    d: int
    degree: int
    c: int
    codim: Optional[int]
    multidegree: tuple
    log_concave: bool
    power_bound: bool
    segre_exact: bool
    segre_top_bound: bool
    prop3_applicable: bool
    prop3_holds: bool
    birational: bool
    within_general_bound: Optional[bool]
    bound4_applicable: Optional[bool]
    within_bound4: Optional[bool]
    claims: List[Claim]

    @property
    def all_hold(self) -> bool:
        return all(c.holds for c in self.claims)


def bounds_report(f: MonomialMap, dvec: Optional[Sequence[int]] = None) -> BoundsReport:
    f = normalize(f)
    deg = map_degree(f)
    if dvec is None:
        dvec = multidegree(f)
    locus = indeterminacy(f)
    lc = log_concavity_claims(dvec)
    pb = power_bound_claims(dvec, f.d)
    seg = check_segre_relations(dvec, locus, f.d)
    p3 = check_prop3(dvec, f.d, deg)
    claims = lc + pb + seg.claims + p3.claims
    birational = deg == 1
    bb = check_birational_bounds(f, dvec) if birational else None
    if bb:
        claims += bb.claims
    return BoundsReport(
        n=f.n,
        d=f.d,
        degree=deg,
        c=prop3_c(f.n),
        codim=locus.codim,
        multidegree=tuple(dvec),
        log_concave=all(c.holds for c in lc),
        power_bound=all(c.holds for c in pb),
        segre_exact=seg.segre_exact,
        segre_top_bound=seg.segre_top_bound,
        prop3_applicable=p3.applicable,
        prop3_holds=p3.holds,
        birational=birational,
        within_general_bound=bb.within_general_bound if bb else None,
        bound4_applicable=bb.bound4_applicable if bb else None,
        within_bound4=bb.within_bound4 if bb else None,
        claims=claims,
    )
