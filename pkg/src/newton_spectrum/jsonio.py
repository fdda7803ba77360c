"""Stable JSON serialization and text rendering of analysis reports.

Layout rules: schema_version is bumped on any layout change; every
rational is {"num": .., "den": ..}; every exponent/weight vector is an
integer array; no floating point anywhere.  Serialization is
deterministic (sorted keys, fixed separators) so byte-identical reports
certify reproducible runs, and report_from_json(report_to_json(r)) == r.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .cones import ChiReport
from .motivic import ClassExpr, GenKey, OpaqueKey, OpaqueMeta
from .nondegeneracy import Certificate
from .pipeline import (AffineReport, AnalysisReport, AnalyzeOptions,
                       CalibrationResult, CheckResult, FaceReport,
                       PolytopeSummary, StratumReport)
from .spectrum import SpectrumPoly, SpectrumResult


def fraction_to_jsonable(x: Fraction) -> dict[str, int]:
    return {"num": x.numerator, "den": x.denominator}


def fraction_from_jsonable(obj: dict[str, int]) -> Fraction:
    return Fraction(obj["num"], obj["den"])


def class_expr_to_jsonable(expr: ClassExpr) -> list[dict[str, Any]]:
    out = []
    for key, coeff in expr.terms.items():
        if isinstance(key, GenKey):
            gen: dict[str, Any] = {
                "orbit": key.orbit, "torus": key.torus, "lefschetz": key.lefschetz}
        else:
            meta = expr.opaque_meta.get(key)
            gen = {"opaque": {
                "face_id": key.face_id,
                "face_dim": key.face_dim,
                "ambient_dim": key.ambient_dim,
                "poly": key.poly,
                "weight": list(meta.weight) if meta else None,
                "degree": meta.degree if meta else None,
            }}
        out.append({"generator": gen, "coeff": coeff})
    return out


def class_expr_from_jsonable(items: list[dict[str, Any]]) -> ClassExpr:
    terms: dict[Any, int] = {}
    meta: dict[OpaqueKey, OpaqueMeta] = {}
    for item in items:
        gen = item["generator"]
        if "opaque" in gen:
            o = gen["opaque"]
            key: Any = OpaqueKey(o["face_id"], o["face_dim"],
                                 o["ambient_dim"], o["poly"])
            if o.get("weight") is not None:
                meta[key] = OpaqueMeta(tuple(o["weight"]), o["degree"])
        else:
            key = GenKey(gen["orbit"], gen["torus"], gen["lefschetz"])
        terms[key] = terms.get(key, 0) + item["coeff"]
    return ClassExpr(terms, meta)


def spectrum_to_jsonable(result: SpectrumResult) -> dict[str, Any]:
    return {
        "terms": [{"num": e.numerator, "den": e.denominator, "mult": m}
                  for e, m in result.poly.coeffs.items()],
        "partial": result.partial,
        "remainder": [{"coeff": c, "opaque": {
            "face_id": k.face_id, "face_dim": k.face_dim,
            "ambient_dim": k.ambient_dim, "poly": k.poly}}
            for k, c in result.remainder],
        "text": result.render(),
    }


def spectrum_from_jsonable(obj: dict[str, Any]) -> SpectrumResult:
    poly = SpectrumPoly({Fraction(t["num"], t["den"]): t["mult"]
                         for t in obj["terms"]})
    remainder = tuple(
        (OpaqueKey(r["opaque"]["face_id"], r["opaque"]["face_dim"],
                   r["opaque"]["ambient_dim"], r["opaque"]["poly"]), r["coeff"])
        for r in obj["remainder"])
    return SpectrumResult(poly, remainder, obj["partial"])


def _chi_to_jsonable(rep: ChiReport) -> dict[str, Any]:
    return {
        "face_id": rep.face_id,
        "closed_form": ("not-applicable" if rep.chi_closed_form is None
                        else rep.chi_closed_form),
        "cone": rep.chi_cone,
        "used": rep.chi_used,
        "convention": rep.convention,
    }


def _chi_from_jsonable(obj: dict[str, Any]) -> ChiReport:
    closed = obj["closed_form"]
    return ChiReport(obj["face_id"],
                     None if closed == "not-applicable" else closed,
                     obj["cone"], obj["used"], obj["convention"])


def _certificate_to_jsonable(cert: Certificate) -> dict[str, Any]:
    return {
        "face_id": cert.face_id, "status": cert.status, "detail": cert.detail,
        "witness": cert.witness, "seed": cert.seed, "trials": cert.trials,
    }


def _certificate_from_jsonable(obj: dict[str, Any]) -> Certificate:
    return Certificate(obj["face_id"], obj["status"], obj["detail"],
                       obj["witness"], obj["seed"], obj["trials"])


def _face_to_jsonable(fr: FaceReport) -> dict[str, Any]:
    return {
        "face_id": fr.face_id,
        "dim": fr.dim,
        "vertices": [list(v) for v in fr.vertices],
        "support_points": [list(p) for p in fr.support_points],
        "contains_origin": fr.contains_origin,
        "in_coordinate_hyperplane": fr.in_coordinate_hyperplane,
        "chi": _chi_to_jsonable(fr.chi),
        "certificate": _certificate_to_jsonable(fr.certificate),
        "weight": list(fr.weight),
        "second_weight": list(fr.second_weight),
        "degree": fr.degree,
        "fiber": class_expr_to_jsonable(fr.fiber) if fr.fiber is not None else None,
        "fiber_text": fr.fiber.describe() if fr.fiber is not None else None,
        "fiber_error": fr.fiber_error,
        "total_space_symbol": fr.total_space_symbol,
    }


def _face_from_jsonable(obj: dict[str, Any]) -> FaceReport:
    return FaceReport(
        face_id=obj["face_id"], dim=obj["dim"],
        vertices=tuple(tuple(v) for v in obj["vertices"]),
        support_points=tuple(tuple(p) for p in obj["support_points"]),
        contains_origin=obj["contains_origin"],
        in_coordinate_hyperplane=obj["in_coordinate_hyperplane"],
        chi=_chi_from_jsonable(obj["chi"]),
        certificate=_certificate_from_jsonable(obj["certificate"]),
        weight=tuple(obj["weight"]),
        second_weight=tuple(obj["second_weight"]),
        degree=obj["degree"],
        fiber=(class_expr_from_jsonable(obj["fiber"])
               if obj["fiber"] is not None else None),
        fiber_error=obj["fiber_error"],
        total_space_symbol=obj["total_space_symbol"])


def _polytope_to_jsonable(p: PolytopeSummary) -> dict[str, Any]:
    return {
        "ambient_dim": p.ambient_dim,
        "dim": p.dim,
        "vertices": [list(v) for v in p.vertices],
        "facets": [{"normal": list(n), "offset": c} for n, c in p.facets],
        "equations": [{"normal": list(n), "offset": c} for n, c in p.equations],
        "commode": p.commode,
        "normalized_volume": fraction_to_jsonable(p.normalized_volume),
        "euler_poincare_sum": p.euler_poincare_sum,
    }


def _polytope_from_jsonable(obj: dict[str, Any]) -> PolytopeSummary:
    return PolytopeSummary(
        ambient_dim=obj["ambient_dim"], dim=obj["dim"],
        vertices=tuple(tuple(v) for v in obj["vertices"]),
        facets=tuple((tuple(f["normal"]), f["offset"]) for f in obj["facets"]),
        equations=tuple((tuple(e["normal"]), e["offset"])
                        for e in obj["equations"]),
        commode=obj["commode"],
        normalized_volume=fraction_from_jsonable(obj["normalized_volume"]),
        euler_poincare_sum=obj["euler_poincare_sum"])


def _options_to_jsonable(o: AnalyzeOptions) -> dict[str, Any]:
    return {
        "chi_convention": o.chi_convention,
        "assume_nondegenerate": o.assume_nondegenerate,
        "seed": o.seed,
        "nondegeneracy_trials": o.nondegeneracy_trials,
    }


def _options_from_jsonable(obj: dict[str, Any]) -> AnalyzeOptions:
    return AnalyzeOptions(obj["chi_convention"], obj["assume_nondegenerate"],
                          obj["seed"], obj["nondegeneracy_trials"])


def _checks_to_jsonable(checks: list[CheckResult]) -> list[dict[str, Any]]:
    return [{"name": c.name, "status": c.status, "details": c.details}
            for c in checks]


def _checks_from_jsonable(items: list[dict[str, Any]]) -> list[CheckResult]:
    return [CheckResult(c["name"], c["status"], c["details"]) for c in items]


def report_to_jsonable(report: AnalysisReport | AffineReport) -> dict[str, Any]:
    common = {
        "schema_version": report.schema_version,
        "mode": report.mode,
        "input": {
            "text": report.input_text,
            "variables": list(report.variables),
            "polynomial": report.polynomial,
        },
        "options": _options_to_jsonable(report.options),
        "nondegeneracy_verdict": report.nondegeneracy_verdict,
        "spectrum_withheld": report.spectrum_withheld,
        "withheld_reason": report.withheld_reason,
        "s_infinity": (class_expr_to_jsonable(report.s_infinity)
                       if report.s_infinity is not None else None),
        "s_infinity_text": (report.s_infinity.describe()
                            if report.s_infinity is not None else None),
        "spectrum": (spectrum_to_jsonable(report.spectrum)
                     if report.spectrum is not None else None),
        "checks": _checks_to_jsonable(report.checks),
    }
    if isinstance(report, AnalysisReport):
        common["polytope"] = _polytope_to_jsonable(report.polytope)
        common["faces"] = [_face_to_jsonable(fr) for fr in report.faces]
        common["hypotheses_satisfied"] = report.hypotheses_satisfied
    else:
        common["strata"] = [{
            "kept_variables": list(s.kept_variables),
            "zeroed_variables": list(s.zeroed_variables),
            "skipped": s.skipped,
            "skip_reason": s.skip_reason,
            "analysis": (report_to_jsonable(s.analysis)
                         if s.analysis is not None else None),
        } for s in report.strata]
    return common


def report_from_jsonable(obj: dict[str, Any]) -> AnalysisReport | AffineReport:
    spectrum = (spectrum_from_jsonable(obj["spectrum"])
                if obj["spectrum"] is not None else None)
    s_inf = (class_expr_from_jsonable(obj["s_infinity"])
             if obj["s_infinity"] is not None else None)
    if obj["mode"] == "laurent":
        return AnalysisReport(
            schema_version=obj["schema_version"],
            mode=obj["mode"],
            input_text=obj["input"]["text"],
            variables=tuple(obj["input"]["variables"]),
            polynomial=obj["input"]["polynomial"],
            options=_options_from_jsonable(obj["options"]),
            polytope=_polytope_from_jsonable(obj["polytope"]),
            faces=[_face_from_jsonable(fo) for fo in obj["faces"]],
            nondegeneracy_verdict=obj["nondegeneracy_verdict"],
            hypotheses_satisfied=obj["hypotheses_satisfied"],
            spectrum_withheld=obj["spectrum_withheld"],
            withheld_reason=obj["withheld_reason"],
            s_infinity=s_inf,
            spectrum=spectrum,
            checks=_checks_from_jsonable(obj["checks"]))
    strata = [StratumReport(
        kept_variables=tuple(s["kept_variables"]),
        zeroed_variables=tuple(s["zeroed_variables"]),
        skipped=s["skipped"],
        skip_reason=s["skip_reason"],
        analysis=(report_from_jsonable(s["analysis"])
                  if s["analysis"] is not None else None))
        for s in obj["strata"]]
    return AffineReport(
        schema_version=obj["schema_version"],
        mode=obj["mode"],
        input_text=obj["input"]["text"],
        variables=tuple(obj["input"]["variables"]),
        polynomial=obj["input"]["polynomial"],
        options=_options_from_jsonable(obj["options"]),
        strata=strata,
        nondegeneracy_verdict=obj["nondegeneracy_verdict"],
        spectrum_withheld=obj["spectrum_withheld"],
        withheld_reason=obj["withheld_reason"],
        s_infinity=s_inf,
        spectrum=spectrum,
        checks=_checks_from_jsonable(obj["checks"]))


def report_to_json(report: AnalysisReport | AffineReport) -> str:
    return json.dumps(report_to_jsonable(report), indent=2, sort_keys=True,
                      ensure_ascii=False)


def report_from_json(text: str) -> AnalysisReport | AffineReport:
    return report_from_jsonable(json.loads(text))


# ---------------------------------------------------------------------------
# text rendering


def _render_vec(v) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


def render_text(report: AnalysisReport | AffineReport) -> str:
    lines: list[str] = []
    lines.append(f"newton-spectrum report (schema {report.schema_version}, "
                 f"mode {report.mode})")
    lines.append(f"input: {report.input_text}")
    lines.append(f"  variables: {', '.join(report.variables)}")
    lines.append(f"  canonical form: {report.polynomial}")
    o = report.options
    lines.append(f"options: chi-convention={o.chi_convention} "
                 f"assume-nondegenerate={str(o.assume_nondegenerate).lower()} "
                 f"seed={o.seed}")
    if isinstance(report, AnalysisReport):
        _render_laurent_body(report, lines, indent="")
    else:
        for s in report.strata:
            kept = ", ".join(s.kept_variables) if s.kept_variables else "none"
            lines.append(f"stratum [nonzero: {kept}]:")
            if s.skipped:
                lines.append(f"  skipped: {s.skip_reason}")
            else:
                lines.append(f"  polynomial: {s.analysis.polynomial}")
                _render_laurent_body(s.analysis, lines, indent="  ")
        lines.append(f"nondegeneracy verdict: {report.nondegeneracy_verdict}")
        _render_totals(report, lines)
    return "\n".join(lines) + "\n"


def _render_laurent_body(report: AnalysisReport, lines: list[str],
                         indent: str) -> None:
    p = report.polytope
    vol = p.normalized_volume
    vol_text = str(vol.numerator) if vol.denominator == 1 else str(vol)
    lines.append(f"{indent}polytope: dim {p.dim} in Z^{p.ambient_dim}, "
                 f"commode={str(p.commode).lower()}, "
                 f"normalized volume {vol_text}")
    lines.append(f"{indent}  vertices: "
                 + " ".join(_render_vec(v) for v in p.vertices))
    for n, c in p.facets:
        lines.append(f"{indent}  facet: {_render_vec(n)}.a <= {c}")
    for n, c in p.equations:
        lines.append(f"{indent}  equation: {_render_vec(n)}.a == {c}")
    lines.append(f"{indent}faces not containing the origin:")
    for fr in report.faces:
        closed = ("n/a" if fr.chi.chi_closed_form is None
                  else str(fr.chi.chi_closed_form))
        fiber = fr.fiber.describe() if fr.fiber is not None else \
            f"unreduced ({fr.fiber_error})"
        lines.append(
            f"{indent}  face {fr.face_id}: dim {fr.dim}, vertices "
            + " ".join(_render_vec(v) for v in fr.vertices)
            + f", chi used {fr.chi.chi_used} (closed {closed}, cone "
            f"{fr.chi.chi_cone}), certificate {fr.certificate.status}"
            + (f" [{fr.certificate.witness}]" if fr.certificate.witness else "")
            + f", omega {_render_vec(fr.weight)}, degree {fr.degree}, "
            f"fiber {fiber}")
        lines.append(f"{indent}    total space: {fr.total_space_symbol}")
    lines.append(f"{indent}nondegeneracy verdict: {report.nondegeneracy_verdict}"
                 + ("" if report.hypotheses_satisfied
                    else " (hypotheses not satisfied)"))
    _render_totals(report, lines, indent)


def _render_totals(report, lines: list[str], indent: str = "") -> None:
    if report.spectrum_withheld:
        lines.append(f"{indent}spectrum: withheld -- {report.withheld_reason}")
    else:
        lines.append(f"{indent}class at infinity: {report.s_infinity.describe()}")
        lines.append(f"{indent}spectrum: {report.spectrum.render()}")
        if not report.spectrum.partial:
            lines.append(f"{indent}mass: "
                         f"{report.spectrum.poly.total_multiplicity()}")
    lines.append(f"{indent}checks:")
    for c in report.checks:
        lines.append(f"{indent}  {c.name}: {c.status} -- {c.details}")


def calibration_to_jsonable(results: list[CalibrationResult]) -> list[dict]:
    return [{"fixture": r.fixture, "expected": r.expected,
             "computed": r.computed, "passed": r.passed, "note": r.note}
            for r in results]


def render_calibration_text(results: list[CalibrationResult]) -> str:
    lines = ["calibration fixtures:"]
    for r in results:
        status = "pass" if r.passed else "FAIL"
        lines.append(f"  {r.fixture}: expected {r.expected}, computed "
                     f"{r.computed} -> {status} ({r.note})")
    return "\n".join(lines) + "\n"
