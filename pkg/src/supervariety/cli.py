"""Command-line front end.

Every command loads JSON inputs, runs one computation, and prints a single
JSON document (sorted keys, two-space indent, trailing newline) so identical
invocations are byte-identical.  Exit codes: 0 success, 1 failed
assertion-style verdict, 2 input error, 3 budget error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import varieties
from .algebra import LieSuperAlgebra, OddPoint, make_gl, validate_algebra
from .budget import get_budget
from .cohomology import (
    OddPolynomial,
    annihilator_probe,
    build_complex,
    cohomology_dims,
    e1_dominance_check,
)
from .errors import BudgetError, InputError, SupervarietyError
from .modules import (
    SuperModule,
    assoc_graded_module,
    free_test,
    natural_module,
    standard_filtration,
    trivial_module,
    validate_module,
)

SCHEMA_VERSION = "1"

EXIT_OK = 0
EXIT_VERDICT = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


def _emit(doc: dict) -> None:
    doc.setdefault("schema_version", SCHEMA_VERSION)
    sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def _positive(name: str):
    def convert(raw: str) -> int:
        try:
            value = int(raw)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{name} must be an integer, got {raw!r}")
        if value <= 0:
            raise argparse.ArgumentTypeError(f"{name} must be positive, got {value}")
        return value

    return convert


def _nonnegative(name: str):
    def convert(raw: str) -> int:
        try:
            value = int(raw)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{name} must be an integer, got {raw!r}")
        if value < 0:
            raise argparse.ArgumentTypeError(f"{name} must be nonnegative, got {value}")
        return value

    return convert


def _load_algebra(path: str) -> LieSuperAlgebra:
    return LieSuperAlgebra.from_json_file(path)


def _load_module(g: LieSuperAlgebra, path: str | None) -> SuperModule:
    if path is None:
        return trivial_module(g)
    return SuperModule.from_json_file(g, path)


def _parse_point(g: LieSuperAlgebra, raw: str) -> OddPoint:
    try:
        coords = [int(s) for s in raw.split(",")]
    except ValueError as exc:
        raise InputError(f"--point must be comma-separated residues, got {raw!r}") from exc
    return OddPoint.make(g, coords)


def _load_vectors(path: str, dim: int, p: int) -> list[list[int]]:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read vector file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"vector file {path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, list) or not all(isinstance(v, list) for v in doc):
        raise InputError(f"vector file {path} must hold a JSON list of vectors")
    out = []
    for v in doc:
        if len(v) != dim:
            raise InputError(f"vector of length {len(v)} in {path}; expected {dim}")
        out.append([int(c) % p for c in v])
    return out


def _parse_poly(g: LieSuperAlgebra, raw: str) -> OddPolynomial:
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InputError(
            f"--poly must be inline JSON mapping exponent lists to coefficients: {exc}"
        ) from exc
    if not isinstance(doc, dict):
        raise InputError("--poly must be a JSON object like {\"1,0\": 1}")
    return OddPolynomial.from_dict(g.dim_odd, doc, g.p)


# -- command handlers -----------------------------------------------------------


def _cmd_validate(args) -> int:
    g = _load_algebra(args.algebra)
    report = validate_algebra(g)
    doc = {"command": "validate", "algebra": report.to_dict()}
    ok = report.ok
    if args.module is not None:
        m = _load_module(g, args.module)
        mrep = validate_module(g, m)
        doc["module"] = mrep.to_dict()
        ok = ok and mrep.ok
    doc["valid"] = ok
    _emit(doc)
    return EXIT_OK if ok else EXIT_VERDICT


def _cmd_make_gl(args) -> int:
    g = make_gl(args.m, args.n, args.p)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(g.to_json())
    if args.natural_out:
        with open(args.natural_out, "w") as fh:
            fh.write(natural_module(g).to_json())
    _emit(g.to_dict())
    return EXIT_OK


def _cmd_nullcone(args) -> int:
    g = _load_algebra(args.algebra)
    doc = {"command": "nullcone", "p": g.p, "dim_odd": g.dim_odd}
    if not args.points and not args.ideal:
        raise InputError("nullcone: pass --points and/or --ideal")
    if args.ideal:
        doc["ideal"] = varieties.nullcone_ideal(g).to_records()
    if args.points:
        doc["points"] = varieties.nullcone_points(g).to_lists()
    _emit(doc)
    return EXIT_OK


def _cmd_rank_variety(args) -> int:
    g = _load_algebra(args.algebra)
    m = _load_module(g, args.module)
    points = None
    if args.points_file:
        points = varieties.load_point_file(args.points_file, g.dim_odd, g.p)
    out = varieties.rank_variety_points(g, m, points)
    _emit(
        {
            "command": "rank-variety",
            "points": out.to_lists(),
            "point_model": varieties.POINT_MODEL,
        }
    )
    return EXIT_OK


def _cmd_free_test(args) -> int:
    g = _load_algebra(args.algebra)
    m = _load_module(g, args.module)
    x = _parse_point(g, args.point)
    res = free_test(m, x)
    doc = {"command": "free-test", "point": list(x.coords)}
    doc.update(res.to_dict())
    _emit(doc)
    return EXIT_OK


def _cmd_cohomology(args) -> int:
    g = _load_algebra(args.algebra)
    m = _load_module(g, args.module)
    n = _load_module(g, args.module2) if args.module2 else m
    cx = build_complex(g, m, n, args.max_degree)
    _emit(
        {
            "command": "cohomology",
            "max_degree": args.max_degree,
            "cochain_dims": list(cx.dims),
            "dims": cohomology_dims(cx),
        }
    )
    return EXIT_OK


def _cmd_phi_probe(args) -> int:
    g = _load_algebra(args.algebra)
    m = _load_module(g, args.module)
    f = _parse_poly(g, args.poly)
    res = annihilator_probe(g, m, f, args.lmax, nmax=args.max_degree)
    doc = {"command": "phi-probe", "poly": f.to_dict()}
    doc.update(res.to_dict())
    _emit(doc)
    return EXIT_OK


def _cmd_e1_check(args) -> int:
    g = _load_algebra(args.algebra)
    m = _load_module(g, args.module)
    n = _load_module(g, args.module2)
    s_m = _load_vectors(args.gens, m.dim, g.p)
    s_n = _load_vectors(args.gens2, n.dim, g.p)
    report = e1_dominance_check(g, m, n, s_m, s_n, args.max_degree)
    doc = {"command": "e1-check"}
    doc.update(report.to_dict())
    _emit(doc)
    return EXIT_OK if report.ok else EXIT_VERDICT


def _cmd_support_probe(args) -> int:
    g = _load_algebra(args.algebra)
    m = _load_module(g, args.module)
    nmax = args.max_degree if args.max_degree else args.window_start + args.window_len
    report = varieties.support_zero_probe(g, m, args.window_start, args.window_len, nmax)
    doc = {"command": "support-probe"}
    doc.update(report.to_dict())
    _emit(doc)
    if report.verdict == varieties.VERDICT_INCONCLUSIVE:
        return EXIT_VERDICT
    return EXIT_OK


def _cmd_tensor_check(args) -> int:
    g = _load_algebra(args.algebra)
    m = _load_module(g, args.module)
    n = _load_module(g, args.module2)
    report = varieties.tensor_property_check(g, m, n)
    doc = {"command": "tensor-check"}
    doc.update(report.to_dict())
    _emit(doc)
    return EXIT_OK if report.ok else EXIT_VERDICT


def _cmd_global_dim_probe(args) -> int:
    g = _load_algebra(args.algebra)
    report = varieties.global_dim_probe(
        g, args.window_start, args.window_len, args.max_degree
    )
    doc = {"command": "global-dim-probe"}
    doc.update(report.to_dict())
    _emit(doc)
    if report.verdict == varieties.VERDICT_UNDETERMINED:
        return EXIT_VERDICT
    return EXIT_OK


def _cmd_orbit_rep(args) -> int:
    x = varieties.gl_orbit_rep(args.m, args.n, args.r, args.s, args.p)
    _emit(
        {
            "command": "orbit-rep",
            "m": args.m,
            "n": args.n,
            "r": args.r,
            "s": args.s,
            "point": list(x.coords),
        }
    )
    return EXIT_OK


def _cmd_assoc_graded(args) -> int:
    g = _load_algebra(args.algebra)
    m = _load_module(g, args.module)
    gens = _load_vectors(args.gens, m.dim, g.p)
    filt = standard_filtration(g, m, gens)
    graded = assoc_graded_module(g, m, filt)
    _emit(
        {
            "command": "assoc-graded",
            "algebra": graded.module.algebra.to_dict(),
            "module": graded.to_dict(),
            "layer_dims": filt.layer_dims(),
        }
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="supervariety",
        description=(
            "Exact GF(p) computations for Lie superalgebras: validation, odd "
            "nullcones, rank varieties, bounded-degree Ext dimensions, and "
            "theorem-level probes.  Odd point coordinates always follow the "
            "odd-basis order of the algebra file.  Output is one JSON document."
        ),
        epilog=(
            f"Environment: SUPERVARIETY_BUDGET caps enumeration and complex sizes "
            f"(current: {get_budget()}).  Exit codes: 0 ok, 1 failed verdict, "
            "2 input error, 3 budget exceeded."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def algebra_arg(sp):
        sp.add_argument("algebra", help="algebra JSON file")

    sp = sub.add_parser("validate", help="check algebra (and optional module) axioms")
    algebra_arg(sp)
    sp.add_argument("--module", help="module JSON file to validate against the algebra")
    sp.set_defaults(func=_cmd_validate)

    sp = sub.add_parser("make-gl", help="emit the algebra gl(m|n) as JSON")
    sp.add_argument("--m", type=_nonnegative("m"), required=True)
    sp.add_argument("--n", type=_nonnegative("n"), required=True)
    sp.add_argument("--p", type=_positive("p"), default=3)
    sp.add_argument("--out", help="also write the algebra JSON to this path")
    sp.add_argument("--natural-out", help="also write the natural module JSON to this path")
    sp.set_defaults(func=_cmd_make_gl)

    sp = sub.add_parser("nullcone", help="odd nullcone points and/or ideal")
    algebra_arg(sp)
    sp.add_argument("--points", action="store_true", help="enumerate GF(p) points")
    sp.add_argument("--ideal", action="store_true", help="emit quadratic generators")
    sp.set_defaults(func=_cmd_nullcone)

    sp = sub.add_parser("rank-variety", help="rank variety point set of a module")
    algebra_arg(sp)
    sp.add_argument("module", help="module JSON file")
    sp.add_argument("--points-file", help="nullcone points file (one per line) to skip enumeration")
    sp.set_defaults(func=_cmd_rank_variety)

    sp = sub.add_parser("free-test", help="freeness over the exterior line of a point")
    algebra_arg(sp)
    sp.add_argument("module", help="module JSON file")
    sp.add_argument("--point", required=True, help="comma-separated odd coordinates")
    sp.set_defaults(func=_cmd_free_test)

    sp = sub.add_parser("cohomology", help="Ext dimensions in bounded degree")
    algebra_arg(sp)
    sp.add_argument("--max-degree", type=_positive("max-degree"), required=True)
    sp.add_argument("--module", help="source module JSON (default: trivial)")
    sp.add_argument("--module2", help="target module JSON (default: same as --module)")
    sp.set_defaults(func=_cmd_cohomology)

    sp = sub.add_parser("phi-probe", help="annihilation probe for powers of an odd polynomial")
    algebra_arg(sp)
    sp.add_argument("--module", help="module JSON (default: trivial)")
    sp.add_argument("--poly", required=True, help='inline JSON, e.g. {"1,0": 1}')
    sp.add_argument("--lmax", type=_positive("lmax"), required=True)
    sp.add_argument("--max-degree", type=_positive("max-degree"), help="degree bound override")
    sp.set_defaults(func=_cmd_phi_probe)

    sp = sub.add_parser("e1-check", help="graded first-page dominance of Ext dimensions")
    algebra_arg(sp)
    sp.add_argument("module", help="source module JSON file")
    sp.add_argument("module2", help="target module JSON file")
    sp.add_argument("--gens", required=True, help="JSON list of generating vectors for the source")
    sp.add_argument("--gens2", required=True, help="JSON list of generating vectors for the target")
    sp.add_argument("--max-degree", type=_positive("max-degree"), required=True)
    sp.set_defaults(func=_cmd_e1_check)

    sp = sub.add_parser("support-probe", help="finite projective dimension probe")
    algebra_arg(sp)
    sp.add_argument("module", help="module JSON file")
    sp.add_argument("--window-start", type=_nonnegative("window-start"), default=8)
    sp.add_argument("--window-len", type=_positive("window-len"), default=4)
    sp.add_argument("--max-degree", type=_positive("max-degree"))
    sp.set_defaults(func=_cmd_support_probe)

    sp = sub.add_parser("tensor-check", help="rank variety tensor product property")
    algebra_arg(sp)
    sp.add_argument("module", help="first module JSON file")
    sp.add_argument("module2", help="second module JSON file")
    sp.set_defaults(func=_cmd_tensor_check)

    sp = sub.add_parser("global-dim-probe", help="finite global dimension probe")
    algebra_arg(sp)
    sp.add_argument("--window-start", type=_nonnegative("window-start"), default=8)
    sp.add_argument("--window-len", type=_positive("window-len"), default=4)
    sp.add_argument("--max-degree", type=_positive("max-degree"))
    sp.set_defaults(func=_cmd_global_dim_probe)

    sp = sub.add_parser("orbit-rep", help="block-diagonal odd orbit representative for gl(m|m)")
    sp.add_argument("--m", type=_positive("m"), required=True)
    sp.add_argument("--n", type=_positive("n"), required=True)
    sp.add_argument("--r", type=_nonnegative("r"), required=True)
    sp.add_argument("--s", type=_nonnegative("s"), required=True)
    sp.add_argument("--p", type=_positive("p"), default=3)
    sp.set_defaults(func=_cmd_orbit_rep)

    sp = sub.add_parser("assoc-graded", help="standard filtration and associated graded module")
    algebra_arg(sp)
    sp.add_argument("module", help="module JSON file")
    sp.add_argument("--gens", required=True, help="JSON list of generating vectors")
    sp.set_defaults(func=_cmd_assoc_graded)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetError as exc:
        _emit({"error": "budget", "message": str(exc)})
        return EXIT_BUDGET
    except InputError as exc:
        _emit({"error": "input", "message": str(exc)})
        return EXIT_INPUT
    except SupervarietyError as exc:
        _emit({"error": "internal", "message": str(exc)})
        raise


if __name__ == "__main__":
    sys.exit(main())
