"""Command-line front end.

Every subcommand reads matrices in the plain text format (one row per
line, '#' comments) and prints either line-oriented text or a key-sorted
JSON report. Exit codes: 0 success, 1 validation or domain error, 2 a
search refused as too large.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

from . import intlin
from .bounds import bounds_report
from .indet import HypothesisError, check_dimension_theorem, indeterminacy, witness_cover
from .mixedvol import multidegree, volume_polynomial
from .monomap import (
    MonomialMap,
    NotBirationalError,
    ValidationError,
    compose,
    format_matrix,
    gen_family_one,
    gen_family_two,
    gen_fnd,
    inverse,
    map_degree,
    normalize,
    parse_matrix,
    torus_map,
    validate,
)
from .search import (
    DEFAULT_MAX_TUPLES,
    InfeasibleSearchError,
    check_feasible,
    enumerate_maps,
    extremal_search,
    verify_theorem_exhaustive,
)

SCHEMA_VERSION = 1
EXACT_INT_LIMIT = 2**53

COMMANDS = ("validate", "degree", "inverse", "compose", "indet", "witness", "multidegree", "bounds", "search", "gen")


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _jsonable(x):
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return str(x) if abs(x) >= EXACT_INT_LIMIT else x
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, float):
        return x
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    raise TypeError(f"cannot serialize {type(x).__name__}")


def dumps(doc: dict) -> str:
    return json.dumps(_jsonable(doc), sort_keys=True, indent=2) + "\n"


def _rows(m) -> List[List[int]]:
    return [list(r) for r in m]


def _read_text(path: str, stdin) -> str:
    if path == "-":
        return stdin.read()
    with open(path) as fh:
        return fh.read()


def _load_map(path: str, stdin) -> MonomialMap:
    return validate(parse_matrix(_read_text(path, stdin)))


def _basics(f: MonomialMap) -> dict:
    g = normalize(f)
    det = intlin.det_exact(g.matrix)
    return {
        "n": f.n,
        "d": g.d,
        "det": det,
        "degree": map_degree(g),
        "birational": map_degree(g) == 1,
    }


def _parse_coeffs(text: Optional[str]) -> List[List[int]]:
    if not text:
        return []
    try:
        return [[int(x) for x in part.split(",") if x.strip()] for part in text.split(";") if part.strip()]
    except ValueError:
        raise UsageError(f"cannot parse --coeffs {text!r}; expected e.g. '1,1,0;2,0,1,0,0'") from None


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"{args.command} requires --{name}")


# -- per-command report builders --------------------------------------------


def cmd_validate(args, stdin):
    f = _load_map(args.input[0], stdin)
    g = normalize(f)
    return {
        "input": _rows(f.matrix),
        "inputDegree": f.d,
        "inputNormalized": f.normalized,
        "normalized": _rows(g.matrix),
        "n": f.n,
        "d": g.d,
    }, format_matrix(g.matrix) + f"# n = {f.n}\n# d = {g.d}\n"


def cmd_degree(args, stdin):
    f = _load_map(args.input[0], stdin)
    g = normalize(f)
    doc = {"input": _rows(f.matrix), **_basics(f), "torusDet": intlin.det_exact(torus_map(g))}
    text = "".join(f"{k}: {str(doc[k]).lower() if isinstance(doc[k], bool) else doc[k]}\n"
                   for k in ("n", "d", "det", "torusDet", "degree", "birational"))
    return doc, text


def cmd_inverse(args, stdin):
    f = _load_map(args.input[0], stdin)
    g = inverse(f)
    doc = {"input": _rows(f.matrix), **_basics(f), "inverse": _rows(g.matrix), "inverseDegree": g.d}
    return doc, format_matrix(g.matrix) + f"# inverse degree = {g.d}\n"


def cmd_compose(args, stdin):
    if len(args.input) != 2:
        raise UsageError("compose needs exactly two --input options (f then g; computes f o g)")
    f = _load_map(args.input[0], stdin)
    g = _load_map(args.input[1], stdin)
    h = compose(f, g)
    doc = {"inputs": [_rows(f.matrix), _rows(g.matrix)], "composite": _rows(h.matrix), **_basics(h)}
    return doc, format_matrix(h.matrix) + f"# d = {h.d}\n"


def _locus_doc(locus):
    return {
        "components": [list(j) for j in locus.components],
        "codim": locus.codim,
        "dim": locus.dim,
        "empty": locus.empty,
        "topCount": locus.top_count,
    }


def cmd_indet(args, stdin):
    f = _load_map(args.input[0], stdin)
    locus = indeterminacy(f)
    doc = {"input": _rows(f.matrix), **_basics(f), "indeterminacy": _locus_doc(locus)}
    lines = [f"components: {' '.join('{' + ','.join(map(str, j)) + '}' for j in locus.components) or 'none'}"]
    if locus.empty:
        lines += ["codim: none", "dim: empty"]
    else:
        lines += [f"codim: {locus.codim}", f"dim: {locus.dim}", f"topCount: {locus.top_count}"]
    if map_degree(normalize(f)):
        chk = check_dimension_theorem(f)
        doc["dimensionTheorem"] = {"applicable": chk.applicable, "holds": chk.holds, "dim": chk.dim, "bound": chk.bound}
        lines.append(f"dimension bound: {'not applicable' if not chk.applicable else ('holds' if chk.holds else 'VIOLATED')} (dim {chk.dim}, bound {chk.bound})")
    return doc, "\n".join(lines) + "\n"


def cmd_witness(args, stdin):
    f = _load_map(args.input[0], stdin)
    w = witness_cover(f)
    locus = indeterminacy(f)
    doc = {
        "input": _rows(f.matrix),
        **_basics(f),
        "witness": {
            "selected": list(w.selected),
            "size": len(w.selected),
            "sizeBound": Fraction(f.n + 2, 2),
            "certifiedDim": w.certified_dim,
            "actualDim": locus.dim,
            "diagonalPermutation": list(w.diagonal_permutation),
            "relabel": list(w.relabel),
            "vertexToColumn": list(w.vertex_to_column),
            "classes": [list(c) for c in w.classes],
            "minimalClass": list(w.minimal_class),
            "phi": {str(k): v for k, v in sorted(w.phi.items())},
            "coloring": list(w.coloring),
        },
    }
    text = (
        f"selected: {' '.join(map(str, w.selected))}\n"
        f"size: {len(w.selected)} <= {f.n + 2}/2\n"
        f"certifies dim >= {w.certified_dim} (actual {locus.dim})\n"
    )
    return doc, text


def cmd_multidegree(args, stdin):
    f = _load_map(args.input[0], stdin)
    dv = multidegree(f)
    vp = volume_polynomial(normalize(f))
    doc = {"input": _rows(f.matrix), **_basics(f), "multidegree": list(dv),
           "volumePolynomial": list(vp.coefficients)}
    return doc, " ".join(map(str, dv)) + "\n"


def _claim_doc(c):
    return {"name": c.name, "index": c.index, "lhs": c.lhs, "relation": c.relation, "rhs": c.rhs, "holds": c.holds}


def cmd_bounds(args, stdin):
    f = _load_map(args.input[0], stdin)
    rep = bounds_report(f)
    body = {
        "n": rep.n, "d": rep.d, "degree": rep.degree, "c": rep.c, "codim": rep.codim,
        "multidegree": list(rep.multidegree),
        "logConcave": rep.log_concave, "powerBound": rep.power_bound,
        "segreExact": rep.segre_exact, "segreTopBound": rep.segre_top_bound,
        "prop3Applicable": rep.prop3_applicable, "prop3Holds": rep.prop3_holds,
        "birational": rep.birational, "withinGeneralBound": rep.within_general_bound,
        "bound4Applicable": rep.bound4_applicable, "withinBound4": rep.within_bound4,
        "allHold": rep.all_hold,
        "claims": [_claim_doc(c) for c in rep.claims],
    }
    doc = {"input": _rows(f.matrix), **_basics(f), "bounds": body}
    lines = [f"multidegree: {' '.join(map(str, rep.multidegree))}"]
    for key in ("logConcave", "powerBound", "segreExact", "segreTopBound", "prop3Applicable", "prop3Holds",
                "withinGeneralBound", "withinBound4"):
        v = body[key]
        lines.append(f"{key}: {'n/a' if v is None else str(v).lower()}")
    for c in rep.claims:
        idx = "" if c.index is None else f"[{c.index}]"
        lines.append(f"  {c.name}{idx}: {c.lhs} {c.relation} {c.rhs} {'ok' if c.holds else 'FAILS'}")
    return doc, "\n".join(lines) + "\n"


def cmd_search(args, stdin):
    _need(args, "n", "d")
    n, d = args.n, args.d
    if args.enumerate:
        check_feasible(n, d, args.birational_only, args.max_tuples)
        maps = list(enumerate_maps(n, d, args.birational_only))
        doc = {"n": n, "d": d, "birationalOnly": args.birational_only, "count": len(maps),
               "maps": [_rows(f.matrix) for f in maps]}
        return doc, "\n".join(format_matrix(f.matrix) for f in maps) + f"# count = {len(maps)}\n"
    if args.theorem:
        scan = verify_theorem_exhaustive(n, d, args.max_tuples)
        doc = {"theorem": {"n": n, "d": d, "checked": scan.checked, "notApplicable": scan.skipped,
                           "violations": scan.violations, "maxWitnessSize": scan.max_witness_size,
                           "witnessSizeCap": (n + 2) // 2}}
        text = f"checked: {scan.checked}\nnot applicable: {scan.skipped}\nviolations: {len(scan.violations)}\n"
        return doc, text
    rep = extremal_search(n, d, threads=args.threads, checkpoint=args.checkpoint, max_tuples=args.max_tuples)
    sdoc = rep.to_dict(include_runtime=not args.no_runtime)
    doc = {"search": sdoc}
    lines = [
        f"n: {n}", f"d: {d}",
        f"total matrices: {rep.total_matrices}",
        f"birational row classes: {rep.birational_row_classes}",
        f"birational classes: {rep.birational_classes}",
        "histogram: " + " ".join(f"{k}:{v}" for k, v in rep.histogram.items()),
        f"max inverse degree: {rep.max_inverse_degree}",
        f"maximizers: {len(rep.maximizers)}",
        f"f_(n,d) inverse degree: {rep.fnd_inverse_degree}",
        f"conjecture: {rep.conjecture_status}",
    ]
    if rep.second_best_bound is not None:
        lines.append(f"second best: {rep.second_best} (bound {rep.second_best_bound}: {'holds' if rep.second_best_holds else 'fails'})")
    if not args.no_runtime:
        lines.append(f"runtime: {rep.runtime_seconds:.3f}s")
    return doc, "\n".join(lines) + "\n"


def cmd_gen(args, stdin):
    _need(args, "n", "d")
    coeffs = _parse_coeffs(args.coeffs)
    family = args.family or "fnd"
    if family == "fnd":
        f = gen_fnd(args.n, args.d)
    elif family == "one":
        f = gen_family_one(args.n, args.d, coeffs)
    else:
        f = gen_family_two(args.n, args.d, coeffs)
    doc = {"family": family, "matrix": _rows(f.matrix), **_basics(f)}
    return doc, format_matrix(f.matrix)


HANDLERS = {
    "validate": cmd_validate,
    "degree": cmd_degree,
    "inverse": cmd_inverse,
    "compose": cmd_compose,
    "indet": cmd_indet,
    "witness": cmd_witness,
    "multidegree": cmd_multidegree,
    "bounds": cmd_bounds,
    "search": cmd_search,
    "gen": cmd_gen,
}

MATRIX_COMMANDS = {"validate", "degree", "inverse", "compose", "indet", "witness", "multidegree", "bounds"}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="monocremona", description="Exact computations with monomial maps of projective space.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--json", action="store_true", help="emit a key-sorted JSON report")
    p.add_argument("--input", action="append", help="matrix file, or '-' for stdin (compose takes two)")
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--family", choices=("fnd", "one", "two"))
    p.add_argument("--coeffs", help="free coefficients: rows separated by ';', entries by ','")
    p.add_argument("--birational-only", action="store_true")
    p.add_argument("--enumerate", action="store_true", help="search: list the enumerated maps instead of a report")
    p.add_argument("--theorem", action="store_true", help="search: exhaustive check of the dimension bound")
    p.add_argument("--checkpoint", help="search: resumable log of completed first-row partitions")
    p.add_argument("--threads", type=int, default=1, help="search: worker processes")
    p.add_argument("--max-tuples", type=int, default=DEFAULT_MAX_TUPLES, help="search: refusal threshold")
    p.add_argument("--no-runtime", action="store_true", help="search: omit the runtime field")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def run(argv: Optional[Sequence[str]] = None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    if args.command in MATRIX_COMMANDS and not args.input:
        args.input = ["-"]
    try:
        doc, text = HANDLERS[args.command](args, stdin)
    except InfeasibleSearchError as exc:
        return _fail(args, stdout, stderr, exc, 2, {"estimate": exc.estimate, "limit": exc.limit})
    except (ValidationError, NotBirationalError, HypothesisError, UsageError, intlin.ShapeError, OSError) as exc:
        return _fail(args, stdout, stderr, exc, 1)
    if args.json:
        stdout.write(dumps({"schema": SCHEMA_VERSION, "command": args.command, **doc}))
    else:
        stdout.write(text)
    return 0


def _fail(args, stdout, stderr, exc, code, extra=None):
    msg = str(exc)
    stderr.write(f"error: {msg}\n")
    if args.json:
        stdout.write(dumps({"schema": SCHEMA_VERSION, "command": args.command, "error": msg, "exitCode": code, **(extra or {})}))
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
