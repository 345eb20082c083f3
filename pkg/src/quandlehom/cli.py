"""The ``quandle`` command: JSON in, JSON out.

Quandle arguments are either a JSON file or a built-in name: ``T3``,
``R4``, ``QS5``, ``S4`` or ``alex:<n>:<h>`` such as ``alex:3:T^2+2T+1``.
Exit codes: 0 success, 1 failed check, 2 usage or input error, 3 resource cap.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from .chains import Kind, boundary, degenerate_count, nondegenerate_count
from .cocycles import cocycle_space, load_cocycle
from .errors import QuandleError, ResourceCap
from .homology import (
    HomologyGroup,
    cohomology,
    cokernel_of_projection,
    homology,
    parse_coeffs,
    vanishing_index,
)
from .quandles import (
    FiniteQuandle,
    load_quandle,
    make_alexander,
    make_dihedral,
    make_s3_conjugation,
    make_trivial,
    orbits,
)
from .verify import run_checks
from .vknot import (
    coloring_from_top,
    enumerate_colorings,
    parse_diagram,
    shadow_from_coloring,
    state_sum,
)

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


def resolve_quandle(spec: str) -> FiniteQuandle:
    if Path(spec).exists():
        return load_quandle(spec)
    m = re.fullmatch(r"([TR])(\d+)", spec)
    if m:
        return (make_trivial if m.group(1) == "T" else make_dihedral)(int(m.group(2)))
    if spec == "QS5":
        return make_s3_conjugation()
    if spec == "S4":
        return make_alexander(2, [1, 1, 1])
    if spec.startswith("alex:"):
        _, n, h = spec.split(":", 2)
        return make_alexander(int(n), h)
    raise UsageError(f"unknown quandle {spec!r}: not a file or built-in name")


def _emit(data) -> None:
    print(json.dumps(data, sort_keys=False))


def _group_json(G, generators=None) -> dict:
    out = G.to_json()
    if generators is not None:
        out["generators"] = generators
    return out


def _names(X: FiniteQuandle, t) -> list[str]:
    return [X.element_name(x) for x in t]


def cmd_make(args) -> int:
    if args.kind == "trivial":
        X = make_trivial(args.m)
    elif args.kind == "dihedral":
        X = make_dihedral(args.m)
    elif args.kind == "qs5":
        X = make_s3_conjugation()
    else:
        if args.n is None or args.h is None:
            raise UsageError("alexander needs --n and --h")
        X = make_alexander(args.n, args.h)
    data = X.to_json()
    if args.out:
        Path(args.out).write_text(json.dumps(data))
    _emit(data)
    return EXIT_OK


def cmd_orbits(args) -> int:
    X = resolve_quandle(args.quandle)
    dec = orbits(X)
    _emit({"orbits": [_names(X, o) for o in dec.orbits], "sizes": list(dec.sizes())})
    return EXIT_OK


def cmd_boundary(args) -> int:
    X = resolve_quandle(args.quandle)
    B = boundary(X, args.n, args.kind, force=args.force)
    if args.format == "triplets":
        text = B.matrix.to_triplet_text()
    else:
        text = json.dumps(B.matrix.to_json())
    if args.out:
        Path(args.out).write_text(text)
        _emit({"rows": B.shape[0], "cols": B.shape[1], "nnz": B.matrix.nnz(), "out": args.out})
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    return EXIT_OK


def cmd_homology(args) -> int:
    X = resolve_quandle(args.quandle)
    q = parse_coeffs(args.coeffs)
    if args.cohomology:
        _emit(_group_json(cohomology(X, args.n, args.kind, q)))
        return EXIT_OK
    if q == 0 and args.generators:
        H = HomologyGroup(X, args.n, args.kind)
        gens = [{",".join(_names(X, t)): c for t, c in g.terms().items()} for g in H.generator_chains()]
        _emit(_group_json(H.descriptor, gens))
    else:
        _emit(_group_json(homology(X, args.n, args.kind, q)))
    return EXIT_OK


def cmd_betti(args) -> int:
    X = resolve_quandle(args.quandle)
    m = len(orbits(X).orbits)
    rows = []
    for n in range(1, args.n + 1):
        row = {"n": n}
        for k in ("D", "R", "Q"):
            row[k] = homology(X, n, k).free_rank
        row["bounds"] = {"D": degenerate_count(m, n), "R": m**n, "Q": nondegenerate_count(m, n)}
        rows.append(row)
    _emit({"quandle": X.label, "orbits": m, "betti": rows})
    return EXIT_OK


def cmd_sx(args) -> int:
    X = resolve_quandle(args.quandle)
    _emit(vanishing_index(X, args.max).to_json())
    return EXIT_OK


def cmd_coker(args) -> int:
    X = resolve_quandle(args.quandle)
    _emit(cokernel_of_projection(X, args.n, args.kind).to_json())
    return EXIT_OK


def cmd_cocycles(args) -> int:
    X = resolve_quandle(args.quandle)
    q = parse_coeffs(args.group)
    if q == 0:
        raise UsageError("cocycle spaces are computed over Z_q, q >= 2")
    S = cocycle_space(X, q)
    _emit({"group": [q], "cocycle_dim": S.cocycle_dim, "coboundary_dim": S.coboundary_dim,
           "cohomology_dim": S.cohomology_dim, "cocycles": [c.to_json()["values"] for c in S.cocycles]})
    return EXIT_OK


def _read_diagram(path: str, X: FiniteQuandle):
    text = Path(path).read_text() if Path(path).exists() else path
    return parse_diagram(text, X.element_index)


def cmd_invariant(args) -> int:
    X = resolve_quandle(args.quandle)
    D = _read_diagram(args.diagram, X)
    data = json.loads(Path(args.cocycle).read_text())
    if args.coeffs is not None:
        data["group"] = [parse_coeffs(args.coeffs)]
    phi = load_cocycle(data, X)
    if not phi.is_cocycle():
        raise UsageError("the cocycle file does not define a quandle 2-cocycle")
    colorings = enumerate_colorings(D, X)
    _emit({"colorings": len(colorings), "state_sum": state_sum(D, X, phi, colorings).to_json()})
    return EXIT_OK


def cmd_shadow(args) -> int:
    X = resolve_quandle(args.quandle)
    D = _read_diagram(args.diagram, X)
    top = tuple(X.element_index(c) for c in args.top.split(","))
    C = coloring_from_top(D, X, top)
    if C is None:
        raise UsageError("the top colors do not close up to a coloring")
    z = shadow_from_coloring(X, C, X.element_index(args.outer)).cycle(X)
    out = {"cycle": {",".join(_names(X, t)): c for t, c in z.terms().items()}, "is_cycle": z.is_cycle()}
    if args.coeffs:
        from .homology import is_boundary
        out["is_boundary"] = is_boundary(X, 3, "R", z, parse_coeffs(args.coeffs))
    _emit(out)
    return EXIT_OK


def cmd_verify(args) -> int:
    ids = {int(i) for i in args.only.split(",")} if args.only else None
    report = run_checks(args.scope, ids)
    data = report.to_json()
    if args.out:
        Path(args.out).write_text(json.dumps(data, indent=2))
    _emit(data)
    return EXIT_OK if report.passed else EXIT_CHECK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quandle", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("make", help="build a quandle table")
    s.add_argument("--kind", choices=["trivial", "dihedral", "alexander", "qs5"], required=True)
    s.add_argument("--m", type=int, default=3, help="size for trivial and dihedral")
    s.add_argument("--n", type=int, help="coefficient modulus for alexander")
    s.add_argument("--h", help="polynomial for alexander, e.g. T^2+T+1")
    s.add_argument("--out")
    s.set_defaults(func=cmd_make)

    s = sub.add_parser("orbits", help="orbit decomposition")
    s.add_argument("quandle")
    s.set_defaults(func=cmd_orbits)

    def degree_kind(s, default_kind="R"):
        s.add_argument("quandle")
        s.add_argument("--n", type=int, required=True)
        s.add_argument("--kind", default=default_kind, type=Kind.parse)

    s = sub.add_parser("boundary", help="export a boundary matrix")
    degree_kind(s)
    s.add_argument("--format", choices=["triplets", "json"], default="triplets")
    s.add_argument("--out")
    s.add_argument("--force", action="store_true", help="ignore the size cap")
    s.set_defaults(func=cmd_boundary)

    s = sub.add_parser("homology", help="homology or cohomology group")
    degree_kind(s)
    s.add_argument("--coeffs", default="Z")
    s.add_argument("--cohomology", action="store_true")
    s.add_argument("--generators", action="store_true")
    s.set_defaults(func=cmd_homology)

    s = sub.add_parser("betti", help="Betti numbers of D, R and Q up to degree n")
    s.add_argument("quandle")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_betti)

    for name in ("sx", "connecting-index"):
        s = sub.add_parser(name, help="first degree with a nonzero connecting map")
        s.add_argument("quandle")
        s.add_argument("--max", type=int, default=5)
        s.set_defaults(func=cmd_sx)

    s = sub.add_parser("coker", help="cokernel of the orbit projection")
    degree_kind(s)
    s.set_defaults(func=cmd_coker)

    s = sub.add_parser("cocycles", help="2-cocycle space over Z_q")
    s.add_argument("quandle")
    s.add_argument("--group", default="Z2")
    s.set_defaults(func=cmd_cocycles)

    s = sub.add_parser("invariant", help="cocycle state-sum of a diagram")
    s.add_argument("--diagram", required=True, help="diagram file or inline word")
    s.add_argument("--quandle", required=True)
    s.add_argument("--cocycle", required=True)
    s.add_argument("--coeffs")
    s.set_defaults(func=cmd_invariant)

    s = sub.add_parser("shadow", help="3-cycle of a shadow coloring")
    s.add_argument("--diagram", required=True)
    s.add_argument("--quandle", required=True)
    s.add_argument("--top", required=True, help="comma-separated top colors")
    s.add_argument("--outer", required=True, help="color of the leftmost region")
    s.add_argument("--coeffs", help="also test whether the cycle is a boundary mod q")
    s.set_defaults(func=cmd_shadow)

    s = sub.add_parser("verify", help="run the reproduction checks")
    s.add_argument("--scope", choices=["fast", "all"], default="fast")
    s.add_argument("--only", help="comma-separated check ids")
    s.add_argument("--out")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ResourceCap as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return EXIT_CAP
    except (UsageError, QuandleError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
