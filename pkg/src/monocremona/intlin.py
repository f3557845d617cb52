"""Exact integer linear algebra on small dense matrices.

Matrices are tuples of row tuples of Python ints, so every value is
hashable and arbitrary precision comes for free.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Tuple

IntMatrix = Tuple[Tuple[int, ...], ...]


class ShapeError(ValueError):
    pass


class NotUnimodularError(ValueError):
    def __init__(self, det: int):
        super().__init__(f"matrix is not unimodular: |det| = {abs(det)}")
        self.det = det


class SingularMatrixError(ValueError):
    pass


def as_matrix(rows: Sequence[Sequence[int]]) -> IntMatrix:
    """Freeze nested sequences into an IntMatrix, checking rectangularity."""
    m = tuple(tuple(int(x) for x in row) for row in rows)
    if m:
        width = len(m[0])
        for i, row in enumerate(m):
            if len(row) != width:
                raise ShapeError(f"row {i} has {len(row)} entries, expected {width}")
    return m


def shape(m: IntMatrix) -> Tuple[int, int]:
    return len(m), (len(m[0]) if m else 0)


def _require_square(m: IntMatrix) -> int:
    r, c = shape(m)
    if r != c:
        raise ShapeError(f"expected a square matrix, got {r}x{c}")
    return r


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def matmul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if shape(a)[1] != shape(b)[0]:
        raise ShapeError(f"cannot multiply {shape(a)} by {shape(b)}")
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def transpose(m: IntMatrix) -> IntMatrix:
    return tuple(zip(*m))


def det_exact(m: IntMatrix) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    n = _require_square(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        row_k = a[k]
        for i in range(k + 1, n):
            row_i = a[i]
            aik = row_i[k]
            for j in range(k + 1, n):
                # exact division is guaranteed by Sylvester's identity
                row_i[j] = (pivot * row_i[j] - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def inverse_unimodular(m: IntMatrix) -> IntMatrix:
    """Integer inverse of a matrix with determinant +1 or -1.

    Gauss-Jordan over the integers; every pivot is forced to be a unit
    after gcd-style row reduction, so no fractions appear.
    """
    n = _require_square(m)
    det = det_exact(m)
    if abs(det) != 1:
        raise NotUnimodularError(det)
    a = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(m)]
    for k in range(n):
        # Euclid on column k below the diagonal until one nonzero entry remains
        while True:
            nz = [r for r in range(k, n) if a[r][k] != 0]
            best = min(nz, key=lambda r: abs(a[r][k]))
            a[k], a[best] = a[best], a[k]
            done = True
            for r in range(k + 1, n):
                q = a[r][k] // a[k][k]
                if q:
                    a[r] = [x - q * y for x, y in zip(a[r], a[k])]
                if a[r][k] != 0:
                    done = False
            if done:
                break
        if a[k][k] < 0:
            a[k] = [-x for x in a[k]]
        # |det| = 1 forces a unit pivot
        assert a[k][k] == 1
        for r in range(n):
            if r != k and a[r][k] != 0:
                q = a[r][k]
                a[r] = [x - q * y for x, y in zip(a[r], a[k])]
    return tuple(tuple(row[n:]) for row in a)


@dataclass(frozen=True)
class SnfResult:
    invariant_factors: Tuple[int, ...]
    left: IntMatrix
    right: IntMatrix


def smith_normal_form(m: IntMatrix) -> SnfResult:
    """Smith normal form of a nonsingular square matrix.

    Returns factors s_1 | s_2 | ... | s_n together with unimodular
    ``left`` and ``right`` such that left @ m @ right is diagonal.
    """
    n = _require_square(m)
    if det_exact(m) == 0:
        raise SingularMatrixError("Smith normal form requires a nonsingular matrix")
    a = [list(row) for row in m]
    left = [list(row) for row in identity(n)]
    right = [list(row) for row in identity(n)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for mat in (a, right):
            for row in mat:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst -= q * row_src
        for mat in (a, left):
            mat[dst] = [x - q * y for x, y in zip(mat[dst], mat[src])]

    def add_col(dst, src, q):
        for mat in (a, right):
            for row in mat:
                row[dst] -= q * row[src]

    for k in range(n):
        while True:
            # smallest nonzero entry of the trailing block goes to (k, k)
            _, pi, pj = min(
                (abs(a[i][j]), i, j)
                for i in range(k, n)
                for j in range(k, n)
                if a[i][j] != 0
            )
            swap_rows(k, pi)
            swap_cols(k, pj)
            p = a[k][k]
            clean = True
            for i in range(k + 1, n):
                q = a[i][k] // p
                if q:
                    add_row(i, k, q)
                if a[i][k]:
                    clean = False
            for j in range(k + 1, n):
                q = a[k][j] // p
                if q:
                    add_col(j, k, q)
                if a[k][j]:
                    clean = False
            if not clean:
                continue
            # divisibility: fold an offending row into row k and retry
            bad = next(
                (i for i in range(k + 1, n) for j in range(k + 1, n) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(k, bad, -1)
        if a[k][k] < 0:
            for mat in (a, left):
                mat[k] = [-x for x in mat[k]]

    factors = tuple(a[i][i] for i in range(n))
    return SnfResult(factors, as_matrix(left), as_matrix(right))


def nonzero_diagonal_permutation(m: IntMatrix) -> Tuple[int, ...]:
    """Column permutation sigma with m[i][sigma[i]] != 0 for every row i.

    Augmenting-path bipartite matching on the nonzero pattern. Any
    matrix with nonzero determinant has a perfect matching.
    """
    n = _require_square(m)
    match_col = [-1] * n  # column -> row

    def augment(i, seen):
        for j in range(n):
            if m[i][j] != 0 and not seen[j]:
                seen[j] = True
                if match_col[j] < 0 or augment(match_col[j], seen):
                    match_col[j] = i
                    return True
        return False

    for i in range(n):
        if not augment(i, [False] * n):
            raise AssertionError("no perfect matching on the nonzero pattern; matrix is singular")
    sigma = [0] * n
    for j, i in enumerate(match_col):
        sigma[i] = j
    return tuple(sigma)
