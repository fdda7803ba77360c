"""Command-line interface.

Exit codes: 0 success, 2 gate refusal (degenerate input without the
override, or the commode-only χ convention on a non-commode input),
3 input rejected (syntax error, unknown variable, affine-mode violation),
4 constant input, 5 calibration fixture failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .cones import ChiConventionError, CHI_CONVENTIONS, chi
from .jsonio import (calibration_to_jsonable, render_calibration_text,
                     render_text, report_to_json, report_to_jsonable,
                     fraction_to_jsonable)
from .laurent import LaurentError, LaurentPoly, ParseError, parse_laurent
from .nondegeneracy import check_all
from .pipeline import (AffineModeError, AnalyzeOptions, ConstantInputError,
                       analyze_affine, analyze_laurent, calibration_suite)
from .polytope import (face_lattice, faces_gamma, is_commode,
                       newton_polytope_at_infinity, normalized_volume)

EXIT_OK = 0
EXIT_GATE = 2
EXIT_PARSE = 3
EXIT_CONSTANT = 4
EXIT_CALIBRATION = 5


def _default_seed() -> int:
    env = os.environ.get("MILNOR_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            pass
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="newton-spectrum",
        description="Exact Newton-polyhedron analysis: face/cone combinatorics, "
                    "motivic fiber classes and the spectrum at infinity of "
                    "nondegenerate Laurent polynomials.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_vars=True):
        if with_vars:
            p.add_argument("polynomial", help="polynomial text, e.g. 'x + y + x^-1*y^-1'")
            p.add_argument("--vars", required=True,
                           help="comma-separated ordered variable names "
                                "(order fixes the coordinate hyperplanes)")
        p.add_argument("--format", choices=["text", "json"], default="text")
        p.add_argument("--seed", type=int, default=None,
                       help="seed for randomized certificates "
                            "(default: MILNOR_SEED or 0)")

    p_analyze = sub.add_parser("analyze", help="full analysis with spectrum")
    add_common(p_analyze)
    p_analyze.add_argument("--mode", choices=["laurent", "affine"],
                           default="laurent")
    p_analyze.add_argument("--chi-convention", choices=list(CHI_CONVENTIONS),
                           default="cone-chi")
    p_analyze.add_argument("--assume-nondegenerate", action="store_true",
                           help="bypass the degeneracy gate (recorded in the report)")

    p_polytope = sub.add_parser("polytope", help="Newton polyhedron and face lattice")
    add_common(p_polytope)

    p_chi = sub.add_parser("chi", help="per-face χ reports")
    add_common(p_chi)
    p_chi.add_argument("--chi-convention", choices=list(CHI_CONVENTIONS),
                       default="cone-chi")

    p_check = sub.add_parser("check", help="nondegeneracy certificates")
    add_common(p_check)

    p_cal = sub.add_parser("calibrate", help="run the calibration fixtures")
    add_common(p_cal, with_vars=False)
    return parser


def _parse_input(args) -> LaurentPoly:
    variables = [v.strip() for v in args.vars.split(",") if v.strip()]
    return parse_laurent(args.polynomial, variables)


def _cmd_analyze(args) -> int:
    f = _parse_input(args)
    options = AnalyzeOptions(
        chi_convention=args.chi_convention,
        assume_nondegenerate=args.assume_nondegenerate,
        seed=args.seed if args.seed is not None else _default_seed())
    if args.mode == "affine":
        report = analyze_affine(f, options, input_text=args.polynomial)
    else:
        report = analyze_laurent(f, options, input_text=args.polynomial)
    if args.format == "json":
        print(report_to_json(report))
    else:
        print(render_text(report), end="")
    gated = (report.nondegeneracy_verdict == "exact-degenerate"
             and not options.assume_nondegenerate)
    return EXIT_GATE if gated else EXIT_OK


def _cmd_polytope(args) -> int:
    f = _parse_input(args)
    P = newton_polytope_at_infinity(f)
    lattice = face_lattice(P)
    if args.format == "json":
        payload = {
            "polytope": {
                "ambient_dim": P.ambient_dim,
                "dim": P.dim,
                "vertices": [list(v) for v in P.vertices],
                "facets": [{"normal": list(fc.normal), "offset": fc.offset}
                           for fc in P.facets],
                "equations": [{"normal": list(e.normal), "offset": e.offset}
                              for e in P.equations],
                "commode": is_commode(P),
                "normalized_volume": fraction_to_jsonable(normalized_volume(P)),
                "euler_poincare_sum": lattice.euler_poincare_sum(),
            },
            "faces": [{
                "id": fc.id, "dim": fc.dim,
                "vertices": [list(v) for v in fc.vertices],
                "points": [list(p) for p in fc.points],
                "contains_origin": fc.contains_origin,
                "in_coordinate_hyperplane": fc.in_coordinate_hyperplane,
                "direction_basis": [list(b) for b in fc.direction_basis],
                "base_point": list(fc.base_point) if fc.base_point else None,
            } for fc in lattice.faces],
            "containment": {str(fid): sorted(subs)
                            for fid, subs in lattice.subfaces.items()},
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        vol = normalized_volume(P)
        vol_text = str(vol.numerator) if vol.denominator == 1 else str(vol)
        print(f"polytope: dim {P.dim} in Z^{P.ambient_dim}, "
              f"commode={str(is_commode(P)).lower()}, normalized volume {vol_text}")
        print("vertices: " + " ".join(_vec(v) for v in P.vertices))
        for fc in P.facets:
            print(f"facet: {_vec(fc.normal)}.a <= {fc.offset}")
        for e in P.equations:
            print(f"equation: {_vec(e.normal)}.a == {e.offset}")
        print("face lattice (id: dim, vertices, flags):")
        for fc in lattice.faces:
            flags = []
            if fc.contains_origin:
                flags.append("contains-origin")
            if fc.in_coordinate_hyperplane:
                flags.append("in-coordinate-hyperplane")
            print(f"  face {fc.id}: dim {fc.dim}, vertices "
                  + (" ".join(_vec(v) for v in fc.vertices) or "-")
                  + (f" [{', '.join(flags)}]" if flags else ""))
    return EXIT_OK


def _vec(v) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


def _cmd_chi(args) -> int:
    f = _parse_input(args)
    P = newton_polytope_at_infinity(f)
    gammas = faces_gamma(face_lattice(P))
    reports = [chi(g, P, args.chi_convention) for g in gammas]
    if args.format == "json":
        payload = [{
            "face_id": r.face_id,
            "closed_form": ("not-applicable" if r.chi_closed_form is None
                            else r.chi_closed_form),
            "cone": r.chi_cone,
            "used": r.chi_used,
            "convention": r.convention,
        } for r in reports]
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for g, r in zip(gammas, reports):
            closed = "n/a" if r.chi_closed_form is None else str(r.chi_closed_form)
            print(f"face {g.id}: dim {g.dim}, vertices "
                  + " ".join(_vec(v) for v in g.vertices)
                  + f", chi used {r.chi_used} (closed {closed}, cone {r.chi_cone})")
    return EXIT_OK


def _cmd_check(args) -> int:
    f = _parse_input(args)
    lattice = face_lattice(newton_polytope_at_infinity(f))
    seed = args.seed if args.seed is not None else _default_seed()
    certs, verdict = check_all(f, lattice, seed=seed)
    if args.format == "json":
        payload = {
            "certificates": [{
                "face_id": c.face_id, "status": c.status, "detail": c.detail,
                "witness": c.witness, "seed": c.seed, "trials": c.trials,
            } for c in certs],
            "verdict": verdict,
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for c in certs:
            line = f"face {c.face_id}: {c.status} -- {c.detail}"
            if c.witness:
                line += f" [{c.witness}]"
            print(line)
        print(f"verdict: {verdict}")
    return EXIT_OK


def _cmd_calibrate(args) -> int:
    results = calibration_suite()
    if args.format == "json":
        print(json.dumps(calibration_to_jsonable(results), indent=2,
                         sort_keys=True))
    else:
        print(render_calibration_text(results), end="")
    return EXIT_OK if all(r.passed for r in results) else EXIT_CALIBRATION


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "analyze": _cmd_analyze,
        "polytope": _cmd_polytope,
        "chi": _cmd_chi,
        "check": _cmd_check,
        "calibrate": _cmd_calibrate,
    }
    try:
        return handlers[args.command](args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ConstantInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONSTANT
    except AffineModeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ChiConventionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GATE
    except LaurentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
