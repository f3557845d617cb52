"""Exhaustive enumeration of normalized monomial maps for fixed (n, d).

Rows are compositions of d into n + 1 parts. Row permutations are
factored out during generation by emitting rows in lexicographic order;
column permutations are factored out afterwards through canonical forms.
The search tree is split by the first row so partitions can run in
separate processes and be merged in any order.
"""

from __future__ import annotations

import json
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement
from math import comb
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from . import intlin
from .indet import HypothesisError, check_dimension_theorem, witness_cover
from .monomap import MonomialMap, canonical_form, gen_fnd, inverse_degree, normalize

log = logging.getLogger(__name__)

DEFAULT_MAX_TUPLES = 10**8

CONFIRMED = "CONFIRMED-AT-THIS-SIZE"
REFUTED = "REFUTED-WITH-WITNESS"


class InfeasibleSearchError(RuntimeError):
    def __init__(self, n: int, d: int, estimate: int, limit: int):
        super().__init__(
            f"search (n={n}, d={d}) would enumerate about {estimate} row tuples, above the limit of {limit}"
        )
        self.estimate = estimate
        self.limit = limit


def compositions(total: int, parts: int) -> List[Tuple[int, ...]]:
    """All compositions of ``total`` into ``parts`` nonnegative parts, in lex order."""
    if parts == 1:
        return [(total,)]
    out = []
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            out.append((first,) + rest)
    return out


def search_space_size(n: int, d: int, distinct: bool = True) -> int:
    k = comb(d + n, n)
    return comb(k, n + 1) if distinct else comb(k + n, n + 1)


def check_feasible(n: int, d: int, distinct: bool = True, max_tuples: int = DEFAULT_MAX_TUPLES) -> int:
    est = search_space_size(n, d, distinct)
    if est > max_tuples:
        raise InfeasibleSearchError(n, d, est, max_tuples)
    return est


def _zero_masks(comps):
    return [sum(1 << j for j, x in enumerate(c) if x == 0) for c in comps]


def _partition(n: int, d: int, index: int, distinct: bool) -> Iterator[Tuple[Tuple[int, ...], ...]]:
    """Row-sorted normalized matrices whose first row is compositions[index]."""
    comps = compositions(d, n + 1)
    masks = _zero_masks(comps)
    full = (1 << (n + 1)) - 1
    first = comps[index]
    first_mask = masks[index]
    start = index + 1 if distinct else index
    pool = range(start, len(comps))
    chooser = combinations if distinct else combinations_with_replacement
    for rest in chooser(pool, n):
        m = first_mask
        for r in rest:
            m |= masks[r]
        if m == full:
            yield (first,) + tuple(comps[r] for r in rest)


def enumerate_maps(n: int, d: int, birational_only: bool = False) -> Iterator[MonomialMap]:
    """Every normalized map up to row permutations, exactly once.

    With ``birational_only`` rows are distinct (equal rows force det = 0)
    and maps with |det(A)| != d are dropped.
    """
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    ncomps = len(compositions(d, n + 1))
    for k in range(ncomps):
        for rows in _partition(n, d, k, birational_only):
            if birational_only and abs(intlin.det_exact(rows)) != d:
                continue
            yield MonomialMap(rows, d)


def enumerate_dominant(n: int, d: int) -> Iterator[MonomialMap]:
    """Normalized maps with det(A) != 0, up to row permutations."""
    ncomps = len(compositions(d, n + 1))
    for k in range(ncomps):
        for rows in _partition(n, d, k, True):
            if intlin.det_exact(rows) != 0:
                yield MonomialMap(rows, d)


# -- partial results and merging -------------------------------------------


@dataclass
class Partial:
    """Result of one or more partitions; merging is associative and commutative."""

    examined: int = 0
    row_classes: int = 0
    classes: Dict[Tuple[Tuple[int, ...], ...], int] = field(default_factory=dict)

    def merge(self, other: "Partial") -> "Partial":
        classes = dict(self.classes)
        for k, v in other.classes.items():
            if k in classes:
                assert classes[k] == v, "inverse degree must be a class invariant"
            classes[k] = v
        return Partial(self.examined + other.examined, self.row_classes + other.row_classes, classes)

    def to_json(self) -> dict:
        return {
            "examined": self.examined,
            "row_classes": self.row_classes,
            "classes": sorted([[list(map(list, k)), v] for k, v in self.classes.items()]),
        }

    @classmethod
    def from_json(cls, data: dict) -> "Partial":
        classes = {tuple(tuple(r) for r in k): v for k, v in data["classes"]}
        return cls(data["examined"], data["row_classes"], classes)


def search_partition(args: Tuple[int, int, int]) -> Partial:
    n, d, index = args
    part = Partial()
    for rows in _partition(n, d, index, True):
        part.examined += 1
        if abs(intlin.det_exact(rows)) != d:
            continue
        part.row_classes += 1
        f = MonomialMap(rows, d)
        canon = canonical_form(f)
        if canon not in part.classes:
            part.classes[canon] = inverse_degree(f)
    return part


# -- checkpoints ------------------------------------------------------------


def _partials_path(path: str) -> str:
    return path + ".partials.jsonl"


def _load_checkpoint(path: str, comps) -> Dict[int, Partial]:
    done: Dict[int, Partial] = {}
    if not os.path.exists(path):
        return done
    with open(path) as fh:
        completed = {tuple(int(x) for x in line.split()) for line in fh if line.strip()}
    partials = {}
    if os.path.exists(_partials_path(path)):
        with open(_partials_path(path)) as fh:
            for line in fh:
                if line.strip():
                    rec = json.loads(line)
                    partials[tuple(rec["first_row"])] = Partial.from_json(rec["partial"])
    for k, c in enumerate(comps):
        if c in completed and c in partials:
            done[k] = partials[c]
    return done


def _record_checkpoint(path: str, first_row, partial: Partial) -> None:
    # partial data first, so a listed row always has its data
    with open(_partials_path(path), "a") as fh:
        fh.write(json.dumps({"first_row": list(first_row), "partial": partial.to_json()}) + "\n")
    with open(path, "a") as fh:
        fh.write(" ".join(map(str, first_row)) + "\n")


def run_partitions(n: int, d: int, threads: int = 1, checkpoint: Optional[str] = None) -> Partial:
    comps = compositions(d, n + 1)
    done = _load_checkpoint(checkpoint, comps) if checkpoint else {}
    todo = [k for k in range(len(comps)) if k not in done]
    if done:
        log.info("resuming: %d of %d partitions already complete", len(done), len(comps))
    results: Dict[int, Partial] = dict(done)
    tasks = [(n, d, k) for k in todo]
    if threads <= 1:
        outputs = map(search_partition, tasks)
        for k, part in zip(todo, outputs):
            results[k] = part
            if checkpoint:
                _record_checkpoint(checkpoint, comps[k], part)
    else:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for k, part in zip(todo, pool.map(search_partition, tasks)):
                results[k] = part
                if checkpoint:
                    _record_checkpoint(checkpoint, comps[k], part)
    total = Partial()
    for k in sorted(results):
        total = total.merge(results[k])
    return total


# -- reports ----------------------------------------------------------------


def expected_max_inverse_degree(n: int, d: int) -> int:
    """Value of d(f_{n,d}^{-1}): n for d = 2, ((d-1)^n - 1) / (d - 2) for d >= 3."""
    if d == 1:
        return 1
    if d == 2:
        return n
    return ((d - 1) ** n - 1) // (d - 2)


@dataclass
class SearchReport:
    n: int
    d: int
    total_matrices: int
    birational_row_classes: int
    birational_classes: int
    histogram: Dict[int, int]
    max_inverse_degree: int
    maximizers: List[Tuple[Tuple[int, ...], ...]]
    fnd_canonical: Tuple[Tuple[int, ...], ...]
    fnd_inverse_degree: int
    conjecture_status: str
    refuting_witness: Optional[Tuple[Tuple[int, ...], ...]]
    second_best: Optional[int]
    second_best_bound: Optional[int]
    second_best_holds: Optional[bool]
    runtime_seconds: float = 0.0

    @property
    def attained(self) -> List[int]:
        return sorted(self.histogram)

    def to_dict(self, include_runtime: bool = True) -> dict:
        out = {
            "n": self.n,
            "d": self.d,
            "totalMatrices": self.total_matrices,
            "birationalRowClasses": self.birational_row_classes,
            "birationalClasses": self.birational_classes,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
            "attainedInverseDegrees": self.attained,
            "maxInverseDegree": self.max_inverse_degree,
            "maximizers": [[list(r) for r in m] for m in self.maximizers],
            "fndCanonical": [list(r) for r in self.fnd_canonical],
            "fndInverseDegree": self.fnd_inverse_degree,
            "conjectureStatus": self.conjecture_status,
            "refutingWitness": None if self.refuting_witness is None else [list(r) for r in self.refuting_witness],
            "secondBest": self.second_best,
            "secondBestBound": self.second_best_bound,
            "secondBestHolds": self.second_best_holds,
        }
        if include_runtime:
            out["runtimeSeconds"] = round(self.runtime_seconds, 3)
        return out


def build_report(n: int, d: int, total: Partial, runtime: float = 0.0) -> SearchReport:
    histogram: Dict[int, int] = {}
    for v in total.classes.values():
        histogram[v] = histogram.get(v, 0) + 1
    fnd = normalize(gen_fnd(n, d))
    fnd_canon = canonical_form(fnd)
    fnd_inv = inverse_degree(fnd)
    best = max(histogram) if histogram else 0
    maximizers = sorted(k for k, v in total.classes.items() if v == best)
    expected = expected_max_inverse_degree(n, d)
    witness = None
    if best == expected and maximizers == [fnd_canon]:
        status = CONFIRMED
    else:
        status = REFUTED
        witness = next((m for m in maximizers if m != fnd_canon), maximizers[0] if maximizers else None)
    others = [v for k, v in total.classes.items() if k != fnd_canon]
    second = max(others) if others else None
    bound = second_holds = None
    if d >= 3:
        bound = fnd_inv - d + 1
        second_holds = second is None or second <= bound
    return SearchReport(
        n=n,
        d=d,
        total_matrices=total.examined,
        birational_row_classes=total.row_classes,
        birational_classes=len(total.classes),
        histogram=dict(sorted(histogram.items())),
        max_inverse_degree=best,
        maximizers=maximizers,
        fnd_canonical=fnd_canon,
        fnd_inverse_degree=fnd_inv,
        conjecture_status=status,
        refuting_witness=witness,
        second_best=second,
        second_best_bound=bound,
        second_best_holds=second_holds,
        runtime_seconds=runtime,
    )


def extremal_search(
    n: int,
    d: int,
    threads: int = 1,
    checkpoint: Optional[str] = None,
    max_tuples: int = DEFAULT_MAX_TUPLES,
) -> SearchReport:
    """Birational classes for (n, d) with the distribution of inverse degrees."""
    check_feasible(n, d, True, max_tuples)
    start = time.perf_counter()
    total = run_partitions(n, d, threads, checkpoint)
    return build_report(n, d, total, time.perf_counter() - start)


def gap_scan(n: int, d: int, threads: int = 1, max_tuples: int = DEFAULT_MAX_TUPLES) -> List[int]:
    return extremal_search(n, d, threads=threads, max_tuples=max_tuples).attained


@dataclass
class TheoremScan:
    n: int
    d: int
    checked: int
    skipped: int
    violations: List[dict]
    max_witness_size: int


def verify_theorem_exhaustive(n: int, d: int, max_tuples: int = DEFAULT_MAX_TUPLES) -> TheoremScan:
    """Check the indeterminacy dimension bound and its witness on every
    dominant normalized map with d not dividing its degree.
    """
    check_feasible(n, d, True, max_tuples)
    checked = skipped = 0
    violations: List[dict] = []
    largest = 0
    size_cap = (n + 2) // 2
    for f in enumerate_dominant(n, d):
        res = check_dimension_theorem(f)
        if not res.applicable:
            skipped += 1
            continue
        checked += 1
        problems = []
        if not res.holds:
            problems.append(f"dim {res.dim} < {res.bound}")
        try:
            w = witness_cover(f)
        except (HypothesisError, AssertionError) as exc:
            problems.append(f"witness failed: {exc}")
        else:
            largest = max(largest, len(w.selected))
            if len(w.selected) > size_cap:
                problems.append(f"witness size {len(w.selected)} > {size_cap}")
            if w.certified_dim > res.dim:
                problems.append(f"witness certifies dim {w.certified_dim} > actual {res.dim}")
        if problems:
            violations.append({"matrix": [list(r) for r in f.matrix], "problems": problems})
    return TheoremScan(n, d, checked, skipped, violations, largest)

