"""Acceptance criteria 1-10.

Each test records a PASS/FAIL line through the ``criterion`` fixture; the
lines are printed in the "acceptance criteria" section of the pytest
summary. Criterion 8 is also re-checked at session end over every
multidegree vector computed anywhere in the run (line "8*").
"""

import random
from itertools import product
from math import prod

import pytest

from monocremona import cli, intlin, mixedvol
from monocremona.bounds import bounds_report
from monocremona.indet import dimension_bound, indeterminacy
from monocremona.monomap import (
    canonical_form,
    diagonal_power,
    gen_family_one,
    gen_family_two,
    gen_fnd,
    identity_map,
    inverse,
    inverse_degree,
    is_birational,
    map_degree,
    normalize,
    plane_cremona,
    torus_map,
    validate,
)
from monocremona.search import (
    CONFIRMED,
    enumerate_dominant,
    enumerate_maps,
    extremal_search,
    verify_theorem_exhaustive,
)
from oracles import compositions, fiber_sizes, prime_one_mod, random_map_rows

_MULTIDEGREES = {}


def _dv(f):
    g = normalize(f)
    if g.matrix not in _MULTIDEGREES:
        _MULTIDEGREES[g.matrix] = mixedvol.multidegree(g)
    return _MULTIDEGREES[g.matrix]


# -- 1 ----------------------------------------------------------------------


def test_criterion_1_three_routes(criterion):
    checked = 0
    bad = []
    for n, d in [(2, 2), (2, 3), (3, 2), (3, 3)]:
        for f in enumerate_dominant(n, d):
            via_a = abs(intlin.det_exact(f.matrix))
            assert via_a % d == 0
            via_m = abs(intlin.det_exact(torus_map(f)))
            via_vol = _dv(f)[n]
            checked += 1
            if not (via_a // d == via_m == via_vol):
                bad.append((f.matrix, via_a // d, via_m, via_vol))
    criterion(1, not bad, f"{checked} dominant maps, {len(bad)} disagreements")
    assert not bad, bad[:5]


# -- 2 ----------------------------------------------------------------------


def test_criterion_2_finite_field_fibers(criterion):
    rng = random.Random(2026)
    checked = 0
    bad = []
    primes = set()
    while checked < 220:
        n = rng.randint(1, 3)
        f = validate(random_map_rows(rng, n, max_entry=3))
        deg = map_degree(normalize(f))
        if deg == 0:
            continue
        m = torus_map(f)
        s = intlin.smith_normal_form(m).invariant_factors[-1]
        p = prime_one_mod(s)
        if (p - 1) ** n > 4 * 10**6:
            continue
        sizes = fiber_sizes(m, p)
        primes.add(p)
        checked += 1
        if set(sizes) != {deg}:
            bad.append((f.matrix, p, deg, dict(sizes)))
    criterion(2, not bad, f"{checked} random maps, primes {sorted(primes)}, {len(bad)} mismatches")
    assert not bad, bad[:3]


# -- 3 ----------------------------------------------------------------------


def test_criterion_3_dimension_theorem(criterion):
    parts = []
    ok = True
    for n, d in [(2, 3), (3, 2), (3, 3), (4, 2)]:
        scan = verify_theorem_exhaustive(n, d)
        cap = (n + 2) // 2
        good = not scan.violations and scan.max_witness_size <= cap
        good = good and n - scan.max_witness_size >= dimension_bound(n)
        ok = ok and good and scan.checked > 0
        parts.append(f"({n},{d}) {scan.checked} checked, max |S| {scan.max_witness_size} <= {cap}, {len(scan.violations)} violations")
    criterion(3, ok, "; ".join(parts))
    assert ok


# -- 4 ----------------------------------------------------------------------


def _free_rows(i, total, required):
    """All (a_0, ..., a_{i-1}) summing to ``total`` with the given positions nonzero."""
    return [c for c in compositions(total, i) if all(c[k] for k in required)]


def _choices(family, n, d):
    if family == "one":
        slots = [_free_rows(i, d - 1, [0]) for i in range(3, n + 1, 2)]
    else:
        head = [(a, b, c) for a, b, c in product(range(d + 1), repeat=3) if a + b + c == d and b and c]
        slots = [head] + [_free_rows(i, d - 1, [0, 2]) for i in range(4, n + 1, 2)]
    return slots


def _sample(slots, rng, k=20):
    total = prod(len(s) for s in slots)
    if total <= k:
        return [list(c) for c in product(*slots)], total
    seen = set()
    while len(seen) < k:
        seen.add(tuple(tuple(rng.choice(s)) for s in slots))
    return [list(c) for c in sorted(seen)], total


def test_criterion_4_example_families(criterion):
    rng = random.Random(4)
    lines = []
    bad = []
    for family, gen in (("one", gen_family_one), ("two", gen_family_two)):
        for n in (4, 5, 6, 7):
            for d in (3, 4):
                picks, total = _sample(_choices(family, n, d), rng)
                want = -(-(n - 2) // 2)
                assert want == n - 1 - n // 2
                for coeffs in picks:
                    f = gen(n, d, coeffs)
                    dim = indeterminacy(f).dim
                    if not is_birational(f) or dim != want:
                        bad.append((family, n, d, coeffs, dim))
                lines.append(f"{family}({n},{d}) {len(picks)}/{total}")
    off = sorted({f"{fam}({n},{d}) dim {dim} != {-(-(n - 2) // 2)}" for fam, n, d, _, dim in bad})
    detail = f"choices tested/available: {', '.join(lines)}; {len(bad)} failures" + (f": {'; '.join(off)}" if off else "")
    criterion(4, not bad, detail)
    assert not bad, bad[:3]


# -- 5 ----------------------------------------------------------------------


def test_criterion_5_quadratic_classification(criterion):
    parts = []
    ok = True
    for n in (3, 4):
        rep = extremal_search(n, 2)
        good = rep.attained == list(range(2, n + 1)) and rep.maximizers == [canonical_form(gen_fnd(n, 2))]
        ok = ok and good
        parts.append(f"({n},2) attained {rep.attained}, {len(rep.maximizers)} maximizer(s)")
    criterion(5, ok, "; ".join(parts))
    assert ok


# -- 6 ----------------------------------------------------------------------

FORMULA_CASES = [(2, 3), (3, 3), (3, 4), (4, 3)]


def test_criterion_6_inverse_degree_formula(criterion):
    got = [inverse_degree(gen_fnd(n, d)) for n, d in FORMULA_CASES]
    formula = [((d - 1) ** n - 1) // (d - 2) for n, d in FORMULA_CASES]
    quad = [inverse_degree(gen_fnd(n, 2)) for n in (2, 3, 4, 5)]
    # for n = 2 the inverse degree is also d_1 of the inverse, i.e. d_1(f) = d
    assert inverse(gen_fnd(2, 3)).d == _dv(gen_fnd(2, 3))[1]
    ok = got == formula and quad == [2, 3, 4, 5]
    criterion(6, ok, f"formula values {formula}, computed {got}; d=2 gives {quad}")
    assert ok


def test_criterion_6_listed_literals(criterion):
    """The listed literal for (2,3) is 4, which contradicts the formula ((2^2-1)/1 = 3).

    Left failing on purpose; see the decisions ledger.
    """
    listed = [4, 7, 13, 15]
    got = [inverse_degree(gen_fnd(n, d)) for n, d in FORMULA_CASES]
    criterion("6-listed", got == listed, f"listed {listed} vs computed {got}; (2,3) literal is inconsistent with its own formula")
    assert got == listed


# -- 7 ----------------------------------------------------------------------


def test_criterion_7_multidegree_goldens(criterion):
    cases = [
        (plane_cremona(), (1, 2, 1)),
        (gen_fnd(3, 2), (1, 2, 3, 1)),
        (diagonal_power(2, 2), (1, 2, 4)),
        (diagonal_power(2, 3), (1, 3, 9)),
    ] + [(identity_map(n), (1,) * (n + 1)) for n in (1, 2, 3, 4)]
    bad = [(f.matrix, _dv(f), want) for f, want in cases if tuple(_dv(f)) != want]
    criterion(7, not bad, f"{len(cases)} goldens, {len(bad)} mismatches")
    assert not bad


# -- 8 ----------------------------------------------------------------------


def _corpus():
    for n, d in [(1, 2), (1, 5), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3)]:
        yield from enumerate_dominant(n, d)
    for f in enumerate_maps(3, 4, birational_only=True):
        yield f
    yield from (gen_fnd(4, 2), gen_fnd(4, 3), diagonal_power(4, 2), identity_map(4))
    yield gen_family_one(4, 3, [[1, 1, 0]])
    yield gen_family_two(4, 3, [[1, 1, 1], [1, 0, 1, 0]])
    rng = random.Random(8)
    count = 0
    while count < 150:
        f = normalize(validate(random_map_rows(rng, rng.randint(1, 3), max_entry=4)))
        if f.d and map_degree(f):
            count += 1
            yield f


def test_criterion_8_inequality_suite(criterion):
    seen = 0
    birational = 0
    bad = []
    for f in _corpus():
        g = normalize(f)
        dv = _dv(g)
        rep = bounds_report(g, dv)
        failing = [c for c in rep.claims if not c.holds]
        if failing:
            bad.append((g.matrix, failing))
        if rep.birational:
            birational += 1
            if tuple(_dv(inverse(g))) != tuple(reversed(dv)):
                bad.append((g.matrix, "reversal"))
        seen += 1
    criterion(8, not bad, f"{seen} maps ({birational} birational, reversal checked), {len(bad)} failures")
    assert not bad, bad[:3]


# -- 9 ----------------------------------------------------------------------


def test_criterion_9_extremal_3_3(criterion):
    rep = extremal_search(3, 3)
    ok = (
        rep.max_inverse_degree == 7
        and rep.maximizers == [canonical_form(gen_fnd(3, 3))]
        and rep.conjecture_status == CONFIRMED
    )
    criterion(9, ok, f"max {rep.max_inverse_degree}, {len(rep.maximizers)} maximizer(s), {rep.conjecture_status}, {rep.runtime_seconds:.1f}s")
    assert ok


@pytest.mark.slow
def test_criterion_9_stretch_4_3(criterion):
    rep = extremal_search(4, 3)
    ok = rep.max_inverse_degree == 15 and rep.second_best is not None and rep.second_best <= 13
    criterion("9-stretch", ok, f"(4,3) max {rep.max_inverse_degree}, second best {rep.second_best}, {rep.conjecture_status} (non-gating)")
    assert ok


# -- 10 ---------------------------------------------------------------------


def test_criterion_10_parallel_determinism(criterion):
    one = cli.dumps(extremal_search(3, 2, threads=1).to_dict(include_runtime=False))
    eight = cli.dumps(extremal_search(3, 2, threads=8).to_dict(include_runtime=False))
    ok = one == eight
    criterion(10, ok, f"threads 1 vs 8: {len(one)} bytes, {'identical' if ok else 'DIFFER'}")
    assert ok
