import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from monocremona import intlin
from oracles import cofactor_det, leibniz_terms


def square(max_n=4, lo=-3, hi=3, min_n=1):
    return st.integers(min_n, max_n).flatmap(
        lambda n: st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=n, max_size=n)
    )


def test_det_examples():
    assert intlin.det_exact(((0, 1, 1), (1, 0, 1), (1, 1, 0))) == 2
    assert intlin.det_exact(intlin.identity(4)) == 1
    f32 = ((2, 0, 0, 0), (1, 1, 0, 0), (0, 1, 1, 0), (0, 0, 1, 1))
    assert intlin.det_exact(f32) == 2


def test_det_rejects_non_square():
    with pytest.raises(intlin.ShapeError):
        intlin.det_exact(((1, 2, 3), (4, 5, 6)))


def test_det_matches_cofactor_expansion_1000_cases():
    rng = random.Random(20261016)
    for _ in range(1200):
        n = rng.randint(1, 4)
        m = tuple(tuple(rng.randint(-3, 3) for _ in range(n)) for _ in range(n))
        assert intlin.det_exact(m) == cofactor_det([list(r) for r in m])


def test_det_big_integers():
    d = 10**30
    m = ((d, 1), (1, d))
    assert intlin.det_exact(m) == d * d - 1


def test_inverse_examples():
    assert intlin.inverse_unimodular(((-1, 0), (0, -1))) == ((-1, 0), (0, -1))
    assert intlin.inverse_unimodular(((1, 0), (1, 1))) == ((1, 0), (-1, 1))
    with pytest.raises(intlin.NotUnimodularError):
        intlin.inverse_unimodular(((2, 0), (0, 1)))


@settings(max_examples=300)
@given(square(max_n=5, lo=-4, hi=4))
def test_inverse_composes_to_identity(rows):
    m = intlin.as_matrix(rows)
    if abs(intlin.det_exact(m)) != 1:
        return
    inv = intlin.inverse_unimodular(m)
    assert intlin.matmul(m, inv) == intlin.identity(len(m))
    assert intlin.matmul(inv, m) == intlin.identity(len(m))


def test_inverse_of_random_unimodular_products():
    rng = random.Random(7)
    for _ in range(200):
        n = rng.randint(1, 5)
        m = intlin.identity(n)
        for _ in range(8):
            i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
            e = [list(r) for r in intlin.identity(n)]
            if i != j:
                e[i][j] = rng.randint(-3, 3)
            else:
                e[i][i] = -1
            m = intlin.matmul(m, intlin.as_matrix(e))
        inv = intlin.inverse_unimodular(m)
        assert intlin.matmul(m, inv) == intlin.identity(n)


def _check_snf(m, res):
    n = len(m)
    f = res.invariant_factors
    assert all(x > 0 for x in f)
    assert all(f[i + 1] % f[i] == 0 for i in range(n - 1))
    prod = 1
    for x in f:
        prod *= x
    assert prod == abs(intlin.det_exact(m))
    assert abs(intlin.det_exact(res.left)) == 1
    assert abs(intlin.det_exact(res.right)) == 1
    diag = tuple(tuple(f[i] if i == j else 0 for j in range(n)) for i in range(n))
    assert intlin.matmul(intlin.matmul(res.left, m), res.right) == diag


def test_snf_examples():
    assert intlin.smith_normal_form(intlin.identity(3)).invariant_factors == (1, 1, 1)
    assert intlin.smith_normal_form(((2, 0), (0, 2))).invariant_factors == (2, 2)
    m = ((1, 0), (1, 2))
    res = intlin.smith_normal_form(m)
    assert res.invariant_factors == (1, 2)
    _check_snf(m, res)
    # a case needing the divisibility repair step: diag(2, 3) -> (1, 6)
    m = ((2, 0), (0, 3))
    res = intlin.smith_normal_form(m)
    assert res.invariant_factors == (1, 6)
    _check_snf(m, res)


def test_snf_singular():
    with pytest.raises(intlin.SingularMatrixError):
        intlin.smith_normal_form(((1, 2), (2, 4)))


@settings(max_examples=300)
@given(square(max_n=4, lo=-5, hi=5))
def test_snf_invariants(rows):
    m = intlin.as_matrix(rows)
    if intlin.det_exact(m) == 0:
        return
    _check_snf(m, intlin.smith_normal_form(m))


def test_matching_examples():
    assert intlin.nonzero_diagonal_permutation(intlin.identity(3)) == (0, 1, 2)
    assert intlin.nonzero_diagonal_permutation(((0, 1), (1, 0))) == (1, 0)
    cremona = ((0, 1, 1), (1, 0, 1), (1, 1, 0))
    sigma = intlin.nonzero_diagonal_permutation(cremona)
    # the only valid assignments are the two derangements
    assert sigma in {(1, 2, 0), (2, 0, 1)}
    assert set(leibniz_terms(cremona)) == {(1, 2, 0), (2, 0, 1)}


@settings(max_examples=300)
@given(square(max_n=6, lo=0, hi=2))
def test_matching_postcondition(rows):
    m = intlin.as_matrix(rows)
    if intlin.det_exact(m) == 0:
        return
    sigma = intlin.nonzero_diagonal_permutation(m)
    assert sorted(sigma) == list(range(len(m)))
    assert all(m[i][sigma[i]] != 0 for i in range(len(m)))


def test_matching_fails_without_support():
    with pytest.raises(AssertionError):
        intlin.nonzero_diagonal_permutation(((1, 1), (0, 0)))
