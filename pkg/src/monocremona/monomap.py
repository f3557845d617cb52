"""Monomial self-maps of projective n-space and their exponent matrices.

Row i of the exponent matrix A lists the exponents of the component f_i.
Composition is matrix multiplication: f_A o f_B = f_{AB}.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Sequence

from . import intlin
from .intlin import IntMatrix


class ValidationError(ValueError):
    pass


class NotBirationalError(ValueError):
    def __init__(self, torus_det: int):
        super().__init__(f"not birational: |det(M)| = {abs(torus_det)}")
        self.torus_det = abs(torus_det)


@dataclass(frozen=True)
class MonomialMap:
    matrix: IntMatrix
    d: int

    @property
    def n(self) -> int:
        return len(self.matrix) - 1

    @property
    def normalized(self) -> bool:
        return all(min(col) == 0 for col in zip(*self.matrix))

    def __str__(self):
        return format_matrix(self.matrix)


def validate(rows: Sequence[Sequence[int]]) -> MonomialMap:
    """Check that ``rows`` is the exponent matrix of a monomial map."""
    try:
        m = intlin.as_matrix(rows)
    except intlin.ShapeError as exc:
        raise ValidationError(str(exc)) from None
    size = len(m)
    if size < 2:
        raise ValidationError("need at least a 2x2 matrix (n >= 1)")
    for i, row in enumerate(m):
        if len(row) != size:
            raise ValidationError(f"matrix is not square: row {i} has {len(row)} entries, expected {size}")
    for i, row in enumerate(m):
        for j, x in enumerate(row):
            if x < 0:
                raise ValidationError(f"negative entry {x} at row {i}, column {j}")
    d = sum(m[0])
    for i, row in enumerate(m):
        if sum(row) != d:
            raise ValidationError(f"row {i} sums to {sum(row)}, but row 0 sums to {d}")
    if d == 0:
        raise ValidationError("degree must be positive (row sums are 0)")
    return MonomialMap(m, d)


def normalize(f: MonomialMap) -> MonomialMap:
    """Strip the common monomial factor by subtracting column minima."""
    mins = [min(col) for col in zip(*f.matrix)]
    if not any(mins):
        return f
    m = tuple(tuple(x - c for x, c in zip(row, mins)) for row in f.matrix)
    return MonomialMap(m, f.d - sum(mins))


def torus_map(f: MonomialMap) -> IntMatrix:
    """The n x n matrix m_ij = a_ij - a_0j of the induced torus endomorphism."""
    a = f.matrix
    top = a[0]
    return tuple(tuple(a[i][j] - top[j] for j in range(1, f.n + 1)) for i in range(1, f.n + 1))


def map_degree(f: MonomialMap) -> int:
    """Topological degree |det(A)| / d; 0 for non-dominant maps."""
    det = intlin.det_exact(f.matrix)
    if det == 0:
        return 0
    q, r = divmod(abs(det), f.d)
    assert r == 0, "d must divide det(A)"
    return q


def is_birational(f: MonomialMap) -> bool:
    f = normalize(f)
    det = intlin.det_exact(f.matrix)
    return det != 0 and abs(det) == f.d


def compose(f: MonomialMap, g: MonomialMap) -> MonomialMap:
    """f o g, normalized."""
    if f.n != g.n:
        raise ValidationError(f"dimension mismatch: n={f.n} vs n={g.n}")
    return normalize(MonomialMap(intlin.matmul(f.matrix, g.matrix), f.d * g.d))


def projectivize(torus: Sequence[Sequence[int]]) -> MonomialMap:
    """Homogenize the torus map x -> x^M' into a normalized monomial map.

    Component 0 is taken to be 1 on the torus. Each column is shifted by
    the smallest amount making it nonnegative, and x_0 pads every row up
    to the largest row sum. The result has torus_map equal to ``torus``.
    """
    mt = intlin.as_matrix(torus)
    n = len(mt)
    if any(len(row) != n for row in mt):
        raise intlin.ShapeError("torus matrix must be square")
    shifts = [max(0, -min(0, *(row[j] for row in mt))) for j in range(n)]
    b = [tuple(shifts)] + [tuple(x + c for x, c in zip(row, shifts)) for row in mt]
    top = max(sum(row) for row in b)
    if top == 0:
        raise ValidationError("zero torus matrix gives a constant map")
    a = tuple((top - sum(row),) + row for row in b)
    return normalize(MonomialMap(a, top))


def inverse(f: MonomialMap) -> MonomialMap:
    f = normalize(f)
    m = torus_map(f)
    try:
        minv = intlin.inverse_unimodular(m)
    except intlin.NotUnimodularError as exc:
        raise NotBirationalError(exc.det) from None
    return projectivize(minv)


def inverse_degree(f: MonomialMap) -> int:
    return inverse(f).d


def canonical_form(f: MonomialMap) -> IntMatrix:
    """Lexicographically least matrix over all row and column permutations.

    For a fixed column permutation the best row order is simply the
    sorted one, so the scan is over the (n+1)! column orders.
    """
    a = f.matrix
    size = len(a)
    best = None
    for perm in permutations(range(size)):
        cand = tuple(sorted(tuple(row[j] for j in perm) for row in a))
        if best is None or cand < best:
            best = cand
    return best


def equivalent(f: MonomialMap, g: MonomialMap) -> bool:
    return canonical_form(normalize(f)) == canonical_form(normalize(g))


# -- generators -------------------------------------------------------------


def diagonal_power(n: int, d: int) -> MonomialMap:
    """The morphism (x_0^d, ..., x_n^d)."""
    return MonomialMap(tuple(tuple(d if i == j else 0 for j in range(n + 1)) for i in range(n + 1)), d)


def identity_map(n: int) -> MonomialMap:
    return MonomialMap(intlin.identity(n + 1), 1)


def plane_cremona() -> MonomialMap:
    return MonomialMap(((0, 1, 1), (1, 0, 1), (1, 1, 0)), 2)


def gen_fnd(n: int, d: int) -> MonomialMap:
    """(x_0^d, x_0^{d-1} x_1, x_1^{d-1} x_2, ..., x_{n-1}^{d-1} x_n)."""
    if n < 1 or d < 1:
        raise ValidationError("gen_fnd needs n >= 1 and d >= 1")
    rows = [[0] * (n + 1) for _ in range(n + 1)]
    rows[0][0] = d
    for i in range(1, n + 1):
        rows[i][i - 1] += d - 1
        rows[i][i] += 1
    return validate(rows)


def _check_free_row(label, values, length, d):
    if len(values) != length:
        raise ValidationError(f"{label}: expected {length} coefficients, got {len(values)}")
    if any(x < 0 for x in values):
        raise ValidationError(f"{label}: coefficients must be nonnegative")
    if sum(values) != d - 1:
        raise ValidationError(f"{label}: coefficients must sum to d-1 = {d - 1}, got {sum(values)}")


def gen_family_one(n: int, d: int, coefficients: Sequence[Sequence[int]]) -> MonomialMap:
    """Lower-triangular family with free rows at odd indices i >= 3.

    ``coefficients`` holds one list (a_i0, ..., a_{i,i-1}) per odd i >= 3,
    each with a_i0 != 0 and summing to d - 1. Even rows i >= 2 are
    x_{i-1}^{d-1} x_i.
    """
    if n < 2 or d < 2:
        raise ValidationError("family one needs n >= 2 and d >= 2")
    odd = list(range(3, n + 1, 2))
    coefficients = [list(c) for c in coefficients]
    if len(coefficients) != len(odd):
        raise ValidationError(f"family one with n={n} needs {len(odd)} coefficient rows (odd i >= 3), got {len(coefficients)}")
    rows = [[0] * (n + 1) for _ in range(n + 1)]
    rows[0][0] = d
    rows[1][0], rows[1][1] = d - 1, 1
    for i in range(2, n + 1, 2):
        rows[i][i - 1], rows[i][i] = d - 1, 1
    for i, coeffs in zip(odd, coefficients):
        _check_free_row(f"row {i}", coeffs, i, d)
        if coeffs[0] == 0:
            raise ValidationError(f"row {i}: a_{i}0 must be nonzero")
        rows[i][:i] = coeffs
        rows[i][i] = 1
    return validate(rows)


def gen_family_two(n: int, d: int, coefficients: Sequence[Sequence[int]]) -> MonomialMap:
    """Second family: a fixed 4x4 head block, then alternating rows.

    ``coefficients[0]`` is (a_30, a_31, a_33) with sum d and a_31 a_33 != 0;
    then one list (a_i0, ..., a_{i,i-1}) per even i >= 4 with
    a_i0 a_i2 != 0 and sum d - 1. Odd rows i >= 5 are x_{i-1}^{d-1} x_i.
    """
    if n < 3 or d < 3:
        raise ValidationError("family two needs n >= 3 and d >= 3")
    even = list(range(4, n + 1, 2))
    coefficients = [list(c) for c in coefficients]
    if len(coefficients) != 1 + len(even):
        raise ValidationError(
            f"family two with n={n} needs {1 + len(even)} coefficient rows "
            f"((a30, a31, a33) then one per even i >= 4), got {len(coefficients)}"
        )
    head = coefficients[0]
    if len(head) != 3 or any(x < 0 for x in head):
        raise ValidationError("row 3: expected three nonnegative coefficients (a30, a31, a33)")
    a30, a31, a33 = head
    if a30 + a31 + a33 != d:
        raise ValidationError(f"row 3: a30 + a31 + a33 must equal d = {d}")
    if a31 * a33 == 0:
        raise ValidationError("row 3: a31 and a33 must be nonzero")
    rows = [[0] * (n + 1) for _ in range(n + 1)]
    rows[0][:4] = [1, 1, 1, d - 3]
    rows[1][:4] = [0, 1, 1, d - 2]
    rows[2][:4] = [d - 1, 0, 1, 0]
    rows[3][:4] = [a30, a31, 0, a33]
    for i in range(5, n + 1, 2):
        rows[i][i - 1], rows[i][i] = d - 1, 1
    for i, coeffs in zip(even, coefficients[1:]):
        _check_free_row(f"row {i}", coeffs, i, d)
        if coeffs[0] * coeffs[2] == 0:
            raise ValidationError(f"row {i}: a_{i}0 and a_{i}2 must be nonzero")
        rows[i][:i] = coeffs
        rows[i][i] = 1
    return validate(rows)


# -- text format ------------------------------------------------------------


def parse_matrix(text: str) -> IntMatrix:
    """Parse the whitespace-separated matrix format; '#' lines are comments."""
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            rows.append(tuple(int(tok) for tok in stripped.split()))
        except ValueError:
            raise ValidationError(f"line {lineno}: non-integer token in {stripped!r}") from None
    if not rows:
        raise ValidationError("no matrix rows found")
    width = len(rows[0])
    for i, row in enumerate(rows):
        if len(row) != width:
            raise ValidationError(f"ragged matrix: row {i} has {len(row)} entries, expected {width}")
    if len(rows) != width:
        raise ValidationError(f"matrix is not square: {len(rows)} rows, {width} columns")
    return tuple(rows)


def format_matrix(m: Iterable[Sequence[int]]) -> str:
    return "".join(" ".join(str(x) for x in row) + "\n" for row in m)
