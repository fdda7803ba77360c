"""Full analysis pipeline: polytope → faces → χ → certificates → classes → spectrum.

analyze_laurent drives the torus-domain analysis; analyze_affine stratifies
affine space into coordinate tori, restricts, reruns the torus analysis per
stratum and adds the results (constant restrictions contribute nothing and
are logged as skipped).  Every report embeds a consistency-check section
and the conventions and seed that produced it, and two runs with equal
inputs and options are byte-identical once serialized.

The nondegeneracy gate: an ExactDegenerate certificate withholds the class
assembly and spectrum unless the override flag is set, in which case the
outputs are computed anyway and the report is labeled as violating the
hypotheses.  Polytope, χ and certificate tables are always produced.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import motivic
from .cones import ChiReport, chi, face_degree, sample_weight
from .intlinalg import IntVec
from .laurent import (LaurentPoly, StratumConstant, face_restriction,
                      stratum_restriction)
from .motivic import ClassExpr, DegenerateEdgeError, assemble_S_infinity, fiber_class
from .nondegeneracy import (DEFAULT_TRIALS, STATUS_EXACT_DEGENERATE,
                            STATUS_EXACT_NONDEGENERATE, Certificate, check_all,
                            weakest_status)
from .polytope import (Face, FaceLattice, Polytope, face_lattice, faces_gamma,
                       is_commode, newton_polytope_at_infinity,
                       normalized_volume)
from .spectrum import SpectrumResult, euler_specialization, mass, sp_of_class

SCHEMA_VERSION = "1"


class PipelineError(ValueError):
    pass


class ConstantInputError(PipelineError):
    pass


class AffineModeError(PipelineError):
    pass


@dataclass(frozen=True)
class AnalyzeOptions:
    chi_convention: str = "cone-chi"
    assume_nondegenerate: bool = False
    seed: int = 0
    nondegeneracy_trials: int = DEFAULT_TRIALS


@dataclass
class CheckResult:
    name: str
    status: str          # "pass" | "fail" | "skipped"
    details: str


@dataclass
class FaceReport:
    face_id: int
    dim: int
    vertices: tuple[IntVec, ...]
    support_points: tuple[IntVec, ...]
    contains_origin: bool
    in_coordinate_hyperplane: bool
    chi: ChiReport
    certificate: Certificate
    weight: IntVec
    second_weight: IntVec
    degree: int
    fiber: ClassExpr | None
    fiber_error: str | None
    total_space_symbol: str


@dataclass
class PolytopeSummary:
    ambient_dim: int
    dim: int
    vertices: tuple[IntVec, ...]
    facets: tuple[tuple[IntVec, int], ...]
    equations: tuple[tuple[IntVec, int], ...]
    commode: bool
    normalized_volume: Fraction
    euler_poincare_sum: int


@dataclass
class AnalysisReport:
    schema_version: str
    mode: str
    input_text: str
    variables: tuple[str, ...]
    polynomial: str
    options: AnalyzeOptions
    polytope: PolytopeSummary
    faces: list[FaceReport]
    nondegeneracy_verdict: str
    hypotheses_satisfied: bool
    spectrum_withheld: bool
    withheld_reason: str | None
    s_infinity: ClassExpr | None
    spectrum: SpectrumResult | None
    checks: list[CheckResult] = field(default_factory=list)


@dataclass
class StratumReport:
    kept_variables: tuple[str, ...]
    zeroed_variables: tuple[str, ...]
    skipped: bool
    skip_reason: str | None
    analysis: AnalysisReport | None


@dataclass
class AffineReport:
    schema_version: str
    mode: str
    input_text: str
    variables: tuple[str, ...]
    polynomial: str
    options: AnalyzeOptions
    strata: list[StratumReport]
    nondegeneracy_verdict: str
    spectrum_withheld: bool
    withheld_reason: str | None
    s_infinity: ClassExpr | None
    spectrum: SpectrumResult | None
    checks: list[CheckResult] = field(default_factory=list)


def _total_space_symbol(f_gamma: LaurentPoly, weight: IntVec, d: int) -> str:
    fg = f_gamma.format()
    return f"[Gm^{d} - Z({fg}), 1/({fg}), sigma(omega={tuple(weight)})]"


def analyze_laurent(f: LaurentPoly, options: AnalyzeOptions | None = None,
                    input_text: str | None = None) -> AnalysisReport:
    """Run the torus-domain analysis of a nonconstant Laurent polynomial."""
    options = options or AnalyzeOptions()
    if f.is_zero():
        raise ConstantInputError("zero polynomial rejected")
    if f.is_constant():
        raise ConstantInputError("constant polynomial rejected")
    P = newton_polytope_at_infinity(f)
    lattice = face_lattice(P)
    gammas = faces_gamma(lattice)
    certificates, verdict = check_all(
        f, lattice, seed=options.seed, trials=options.nondegeneracy_trials)
    cert_by_face = {c.face_id: c for c in certificates}

    gated = (verdict == STATUS_EXACT_DEGENERATE
             and not options.assume_nondegenerate)
    allow_degenerate = options.assume_nondegenerate

    face_reports: list[FaceReport] = []
    for g in gammas:
        report = chi(g, P, options.chi_convention)
        w = sample_weight(g, P)
        w2 = sample_weight(g, P, skip=1)
        degree = face_degree(g, w)
        fiber = None
        fiber_error = None
        try:
            fiber = fiber_class(f, g, w, allow_degenerate=allow_degenerate)
        except DegenerateEdgeError as exc:
            fiber_error = str(exc)
        face_reports.append(FaceReport(
            face_id=g.id, dim=g.dim, vertices=g.vertices,
            support_points=g.support_points,
            contains_origin=g.contains_origin,
            in_coordinate_hyperplane=g.in_coordinate_hyperplane,
            chi=report, certificate=cert_by_face[g.id],
            weight=w, second_weight=w2, degree=degree,
            fiber=fiber, fiber_error=fiber_error,
            total_space_symbol=_total_space_symbol(
                face_restriction(f, g), w, f.dimension)))

    withheld_reason = None
    s_inf = None
    spec = None
    if gated:
        withheld_reason = ("nondegeneracy hypothesis fails (ExactDegenerate "
                           "certificate); rerun with the override to force "
                           "assembly")
    elif any(fr.fiber is None for fr in face_reports):
        withheld_reason = "some fiber classes could not be reduced"
    else:
        s_inf = assemble_S_infinity(
            [(fr.chi.chi_used, fr.fiber) for fr in face_reports])
        spec = sp_of_class(s_inf)

    report = AnalysisReport(
        schema_version=SCHEMA_VERSION,
        mode="laurent",
        input_text=input_text if input_text is not None else f.format(),
        variables=f.variables,
        polynomial=f.format(),
        options=options,
        polytope=PolytopeSummary(
            ambient_dim=P.ambient_dim, dim=P.dim, vertices=P.vertices,
            facets=tuple((fa.normal, fa.offset) for fa in P.facets),
            equations=tuple((e.normal, e.offset) for e in P.equations),
            commode=is_commode(P),
            normalized_volume=normalized_volume(P),
            euler_poincare_sum=lattice.euler_poincare_sum()),
        faces=face_reports,
        nondegeneracy_verdict=verdict,
        hypotheses_satisfied=(verdict == STATUS_EXACT_NONDEGENERATE),
        spectrum_withheld=s_inf is None,
        withheld_reason=withheld_reason,
        s_infinity=s_inf,
        spectrum=spec)
    report.checks = consistency_suite(report, f)
    return report


def consistency_suite(report: AnalysisReport, f: LaurentPoly) -> list[CheckResult]:
    """Standing cross-checks: mass, ω-independence, commode χ, mass vs χ_c."""
    checks: list[CheckResult] = []
    d = f.dimension

    # (a) Kouchnirenko mass: mass(sp) = (-1)^(d-1)·d!·Vol
    if not report.polytope.commode:
        checks.append(CheckResult(
            "kouchnirenko-mass", "skipped",
            "polyhedron is not commode; the closed-form hypothesis fails"))
    elif not report.hypotheses_satisfied:
        checks.append(CheckResult(
            "kouchnirenko-mass", "skipped",
            f"nondegeneracy verdict is {report.nondegeneracy_verdict}"))
    elif report.spectrum is None or report.spectrum.partial:
        reason = ("spectrum withheld" if report.spectrum is None
                  else "spectrum is partial (opaque faces of dimension ≥ 2)")
        checks.append(CheckResult("kouchnirenko-mass", "skipped", reason))
    else:
        vol = report.polytope.normalized_volume
        expected = (1 if (d - 1) % 2 == 0 else -1) * vol
        got = mass(report.spectrum)
        ok = Fraction(got) == expected
        checks.append(CheckResult(
            "kouchnirenko-mass", "pass" if ok else "fail",
            f"mass {got} vs (-1)^(d-1)·d!·Vol = {expected}"))

    # (b) ω-independence of the fiber classes
    if any(fr.fiber is None for fr in report.faces):
        checks.append(CheckResult(
            "omega-independence", "skipped",
            "fiber classes not computed (gate active)"))
    else:
        lattice = face_lattice(newton_polytope_at_infinity(f))
        mismatches = []
        for fr in report.faces:
            face = lattice.by_id[fr.face_id]
            second = fiber_class(
                f, face, fr.second_weight,
                allow_degenerate=report.options.assume_nondegenerate)
            if second != fr.fiber:
                mismatches.append(fr.face_id)
        checks.append(CheckResult(
            "omega-independence", "fail" if mismatches else "pass",
            (f"faces with weight-dependent classes: {mismatches}"
             if mismatches else
             f"all {len(report.faces)} fiber classes agree on both weight samples")))

    # (c) commode χ closed form vs cone χ_c
    if not report.polytope.commode:
        checks.append(CheckResult(
            "commode-chi-agreement", "skipped", "polyhedron is not commode"))
    else:
        bad = [fr.face_id for fr in report.faces
               if not fr.in_coordinate_hyperplane
               and fr.chi.chi_closed_form != fr.chi.chi_cone]
        hyper = [(fr.face_id, fr.chi.chi_cone) for fr in report.faces
                 if fr.in_coordinate_hyperplane]
        details = (f"disagreements off coordinate hyperplanes: {bad}" if bad
                   else "closed form matches cone χ_c off coordinate hyperplanes")
        if hyper:
            details += ("; recorded coordinate-hyperplane disagreements "
                        f"(0 vs cone χ_c): {hyper}")
        checks.append(CheckResult(
            "commode-chi-agreement", "fail" if bad else "pass", details))

    # (d) mass vs Euler-characteristic specialization
    if report.s_infinity is None or report.s_infinity.has_opaque():
        reason = ("class expression withheld" if report.s_infinity is None
                  else "opaque generators present")
        checks.append(CheckResult("mass-euler-agreement", "skipped", reason))
    else:
        m = mass(report.spectrum)
        e = euler_specialization(report.s_infinity)
        checks.append(CheckResult(
            "mass-euler-agreement", "pass" if m == e else "fail",
            f"mass {m} vs euler specialization {e}"))

    return checks


def analyze_affine(f: LaurentPoly, options: AnalyzeOptions | None = None,
                   input_text: str | None = None) -> AffineReport:
    """Stratify affine space into coordinate tori and add the analyses.

    Strata whose restriction is constant (zero or not) contribute nothing:
    no arc escapes to infinity inside them.  The torus stratum of an
    everywhere-nonnegative f coincides with analyze_laurent(f).
    """
    options = options or AnalyzeOptions()
    if f.is_zero() or f.is_constant():
        raise ConstantInputError("constant polynomial rejected")
    if any(e < 0 for exp in f.terms for e in exp):
        raise AffineModeError(
            "affine mode requires nonnegative exponents; negative exponents "
            "are only meaningful on the torus (use laurent mode)")

    subsets = []
    names = f.variables
    for mask in range(2 ** len(names)):
        kept = tuple(v for i, v in enumerate(names) if mask & (1 << i))
        subsets.append(kept)
    subsets.sort(key=lambda kept: (-len(kept), kept))

    strata: list[StratumReport] = []
    total_s: ClassExpr | None = motivic.zero()
    verdicts = []
    withheld_reason = None
    for kept in subsets:
        zeroed = tuple(v for v in names if v not in kept)
        restricted = stratum_restriction(f, zeroed)
        if isinstance(restricted, StratumConstant):
            strata.append(StratumReport(
                kept, zeroed, True,
                f"restriction is the constant {restricted.value}: no escape "
                "to infinity on this stratum", None))
            continue
        analysis = analyze_laurent(restricted, options)
        strata.append(StratumReport(kept, zeroed, False, None, analysis))
        verdicts.append(analysis.nondegeneracy_verdict)
        if analysis.s_infinity is None:
            if withheld_reason is None:
                withheld_reason = (f"stratum {kept}: {analysis.withheld_reason}")
            total_s = None
        elif total_s is not None:
            total_s = total_s + analysis.s_infinity

    if not verdicts:
        raise AffineModeError("every stratum restriction is constant")

    spectrum = sp_of_class(total_s) if total_s is not None else None
    report = AffineReport(
        schema_version=SCHEMA_VERSION,
        mode="affine",
        input_text=input_text if input_text is not None else f.format(),
        variables=f.variables,
        polynomial=f.format(),
        options=options,
        strata=strata,
        nondegeneracy_verdict=weakest_status(verdicts),
        spectrum_withheld=total_s is None,
        withheld_reason=withheld_reason,
        s_infinity=total_s,
        spectrum=spectrum)
    report.checks = _affine_checks(report)
    return report


def _affine_checks(report: AffineReport) -> list[CheckResult]:
    checks: list[CheckResult] = []
    active = [s for s in report.strata if not s.skipped]
    if report.s_infinity is None:
        checks.append(CheckResult(
            "stratum-additivity", "skipped",
            "totals withheld (a stratum is gated)"))
    else:
        total = motivic.zero()
        for s in active:
            total = total + s.analysis.s_infinity
        ok_s = total == report.s_infinity
        spec_sum = None
        for s in active:
            part = s.analysis.spectrum.poly
            spec_sum = part if spec_sum is None else spec_sum + part
        ok_sp = spec_sum == report.spectrum.poly
        checks.append(CheckResult(
            "stratum-additivity", "pass" if (ok_s and ok_sp) else "fail",
            f"class sum {'matches' if ok_s else 'differs'}, spectrum sum "
            f"{'matches' if ok_sp else 'differs'} over {len(active)} strata"))
    full = next((s for s in report.strata
                 if s.kept_variables == report.variables), None)
    if full is None or full.skipped:
        checks.append(CheckResult(
            "torus-stratum-coherence", "skipped", "no full torus stratum"))
    else:
        checks.append(CheckResult(
            "torus-stratum-coherence", "pass",
            "full stratum analyzed by the torus pipeline verbatim"))
    return checks


# ---------------------------------------------------------------------------
# calibration fixtures


@dataclass
class CalibrationResult:
    fixture: str
    expected: str
    computed: str
    passed: bool
    note: str


def calibration_suite(options: AnalyzeOptions | None = None) -> list[CalibrationResult]:
    """Convention-pinning fixtures with independently derived spectra.

    x is a trivial fibration (one point at infinity); x + 1/x a double
    cover with trivial monodromy at infinity; x² a double cover whose
    monodromy swaps the sheets (eigenvalues ±1); xy fibers into tori and
    fixes the sign convention for non-commode χ, recorded with the result.
    """
    from .spectrum import SpectrumPoly

    options = options or AnalyzeOptions()
    results: list[CalibrationResult] = []

    def run(text: str, variables: list[str]) -> SpectrumResult:
        from .laurent import parse_laurent
        return analyze_laurent(parse_laurent(text, variables), options).spectrum

    one = SpectrumPoly({Fraction(0): 1})
    t_minus_1 = SpectrumPoly({Fraction(1): 1, Fraction(0): -1})

    spec = run("x", ["x"])
    results.append(CalibrationResult(
        "x", "1", spec.render(), spec.poly == one,
        "trivial fibration: a single point escapes to infinity"))

    spec = run("x + x^-1", ["x"])
    results.append(CalibrationResult(
        "x + x^-1", "2", spec.render(), spec.poly == one.scale(2),
        "double cover of the value line, trivial monodromy at infinity"))

    spec = run("x^2", ["x"])
    expected = SpectrumPoly({Fraction(0): 1, Fraction(1, 2): 1})
    results.append(CalibrationResult(
        "x^2", "1 + t^(1/2)", spec.render(), spec.poly == expected,
        "monodromy at infinity swaps the two sheets: eigenvalues ±1"))

    spec = run("x*y", ["x", "y"])
    sign = None
    if spec.poly == t_minus_1:
        sign = 1
    elif spec.poly == -t_minus_1:
        sign = -1
    results.append(CalibrationResult(
        "x*y", "±(t - 1), sign recorded", spec.render(), sign is not None,
        f"non-commode χ convention {options.chi_convention!r} gives sign "
        f"{sign} relative to t - 1"))

    return results
