"""Indeterminacy locus of a monomial map and the covering-set witness.

The reduced indeterminacy locus is a union of coordinate linear spaces
{x_j = 0 : j in J}, one per column subset J whose columns leave no row
of the exponent matrix entirely zero.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from . import intlin
from .monomap import MonomialMap, ValidationError, map_degree, normalize

EMPTY_DIM = -1


class HypothesisError(ValueError):
    """The map does not satisfy d^2 not dividing det(A)."""


@dataclass(frozen=True)
class IndeterminacyLocus:
    n: int
    components: Tuple[Tuple[int, ...], ...]

    @property
    def empty(self) -> bool:
        return not self.components

    @property
    def codim(self) -> Optional[int]:
        return min(len(j) for j in self.components) if self.components else None

    @property
    def dim(self) -> int:
        return self.n - self.codim if self.components else EMPTY_DIM

    @property
    def top_count(self) -> int:
        c = self.codim
        return sum(1 for j in self.components if len(j) == c)


def covers_rows(a, cols) -> bool:
    """True if every row of ``a`` has a nonzero entry in one of ``cols``."""
    return all(any(row[j] for j in cols) for row in a)


def indeterminacy(f: MonomialMap) -> IndeterminacyLocus:
    f = normalize(f)
    a = f.matrix
    size = f.n + 1
    found: List[Tuple[int, ...]] = []
    masks: List[int] = []
    for k in range(1, size):
        for cols in combinations(range(size), k):
            mask = sum(1 << j for j in cols)
            if any(m & mask == m for m in masks):
                continue
            if covers_rows(a, cols):
                found.append(cols)
                masks.append(mask)
    return IndeterminacyLocus(f.n, tuple(sorted(found)))


def dimension_bound(n: int) -> int:
    """Smallest integer dimension >= (n - 2) / 2."""
    return -((2 - n) // 2)


@dataclass(frozen=True)
class DimensionCheck:
    applicable: bool
    holds: bool
    dim: int
    bound: int
    d: int
    degree: int


def check_dimension_theorem(f: MonomialMap) -> DimensionCheck:
    f = normalize(f)
    deg = map_degree(f)
    if deg == 0:
        raise ValidationError("map is not dominant (det(A) = 0)")
    locus = indeterminacy(f)
    bound = dimension_bound(f.n)
    applicable = deg % f.d != 0
    holds = locus.dim >= bound if applicable else True
    return DimensionCheck(applicable, holds, locus.dim, bound, f.d, deg)


@dataclass(frozen=True)
class WitnessCover:
    """Column set hitting every row, plus the intermediate objects that built it.

    ``phi``, ``classes``, ``coloring`` and ``minimal_class`` use the
    relabeled vertex names; ``vertex_to_column`` maps them back to the
    columns of the input matrix. ``selected`` is in input column labels.
    """

    selected: Tuple[int, ...]
    diagonal_permutation: Tuple[int, ...]
    relabel: Tuple[int, ...]
    vertex_to_column: Tuple[int, ...]
    classes: Tuple[Tuple[int, ...], ...]
    minimal_class: Tuple[int, ...]
    phi: Dict[int, int]
    coloring: Tuple[int, ...]
    size_bound: float

    @property
    def certified_dim(self) -> int:
        return len(self.vertex_to_column) - 1 - len(self.selected)


def _strong_classes(adj: List[List[int]]) -> List[Tuple[int, ...]]:
    n = len(adj)
    reach = []
    for s in range(n):
        seen = {s}
        stack = [s]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        reach.append(seen)
    classes = []
    assigned = set()
    for s in range(n):
        if s in assigned:
            continue
        cls = tuple(sorted(v for v in reach[s] if s in reach[v]))
        assigned.update(cls)
        classes.append(cls)
    return classes


def witness_cover(f: MonomialMap) -> WitnessCover:
    """Build a small column set covering every row, following the proof of the
    dimension theorem step by step.
    """
    f = normalize(f)
    a = f.matrix
    size = f.n + 1
    det = intlin.det_exact(a)
    if det == 0:
        raise ValidationError("map is not dominant (det(A) = 0)")
    if det % (f.d * f.d) == 0:
        raise HypothesisError(f"d^2 = {f.d * f.d} divides det(A) = {det}; d divides deg(f)")

    # 1. put nonzero entries on the diagonal by permuting columns
    sigma = intlin.nonzero_diagonal_permutation(a)
    b = [[row[sigma[k]] for k in range(size)] for row in a]

    # 2-3. graph i -> j when b_ij != 0, its strong classes and their order
    adj = [[j for j in range(size) if b[i][j]] for i in range(size)]
    classes = _strong_classes(adj)
    owner = {v: ci for ci, cls in enumerate(classes) for v in cls}
    minimal = [
        ci for ci, cls in enumerate(classes)
        if all(owner[v] == ci for u in cls for v in adj[u])
    ]
    # 4. two minimal classes would make d^2 divide det(A)
    assert len(minimal) == 1, f"expected a unique minimal class, found {len(minimal)}"
    root = classes[minimal[0]][0]
    tau = list(range(size))
    tau[0], tau[root] = root, 0
    c = [[b[tau[i]][tau[j]] for j in range(size)] for i in range(size)]
    cadj = [[j for j in range(size) if c[i][j]] for i in range(size)]
    rclasses = tuple(sorted(tuple(sorted(tau[v] for v in cls)) for cls in classes))
    rminimal = tuple(sorted(tau[v] for v in classes[minimal[0]]))

    # 5. shortest-path parents toward 0 give an acyclic phi
    dist = [None] * size
    dist[0] = 0
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for u in range(size):
            if dist[u] is None and c[u][v]:
                dist[u] = dist[v] + 1
                queue.append(u)
    assert all(x is not None for x in dist), "every vertex must reach the minimal class"
    phi = {x: min(y for y in cadj[x] if dist[y] == dist[x] - 1) for x in range(1, size)}

    # 6. two-coloring by depth parity
    coloring = tuple(x % 2 for x in dist)

    # 7. minority color, ties go to the color of 0, and 0 is always kept
    counts = [coloring.count(0), coloring.count(1)]
    if counts[0] == counts[1]:
        chosen = coloring[0]
    else:
        chosen = 0 if counts[0] < counts[1] else 1
    picked = {v for v in range(size) if coloring[v] == chosen}
    picked.add(0)

    vertex_to_column = tuple(sigma[tau[v]] for v in range(size))
    selected = tuple(sorted(vertex_to_column[v] for v in picked))
    assert covers_rows(a, selected)
    return WitnessCover(
        selected=selected,
        diagonal_permutation=tuple(sigma),
        relabel=tuple(tau),
        vertex_to_column=vertex_to_column,
        classes=rclasses,
        minimal_class=rminimal,
        phi=phi,
        coloring=coloring,
        size_bound=(f.n + 2) / 2,
    )
