"""Exact Newton-polyhedron engine for the spectrum at infinity.

Public surface: Laurent polynomial parsing, the Newton polyhedron at
infinity with its face lattice, weight cones and their χ_c, Kouchnirenko
nondegeneracy certificates, motivic fiber-class reduction, spectrum
evaluation, and the analysis pipelines behind the newton-spectrum CLI.
"""

from .laurent import (ExponentVector, LaurentPoly, LaurentError, ParseError,
                      StratumConstant, UnknownVariableError, face_restriction,
                      parse_laurent, stratum_restriction, support)
from .polytope import (Face, FaceLattice, Facet, Polytope, face_lattice,
                       faces_gamma, is_commode, newton_polytope_at_infinity,
                       normalized_volume, triangulate)
from .cones import (ChiReport, RationalCone, chi, chi_commode, euler_compact,
                    face_degree, normal_cone, sample_weight)
from .nondegeneracy import Certificate, check_all, check_face
from .motivic import (ClassExpr, GenKey, OpaqueKey, assemble_S_infinity,
                      cyclic_orbit, fiber_class, lefschetz, point,
                      reduce_edge_fiber, reduce_vertex_fiber, torus_factor)
from .spectrum import (SpectrumPoly, SpectrumResult, euler_specialization,
                       mass, sp_of_class)
from .pipeline import (AffineReport, AnalysisReport, AnalyzeOptions,
                       analyze_affine, analyze_laurent, calibration_suite,
                       consistency_suite)
from .jsonio import render_text, report_from_json, report_to_json

__version__ = "0.1.0"

__all__ = [
    "AnalysisReport", "AffineReport", "AnalyzeOptions", "Certificate",
    "ChiReport", "ClassExpr", "ExponentVector", "Face", "FaceLattice",
    "Facet", "GenKey", "LaurentError", "LaurentPoly", "OpaqueKey",
    "ParseError", "Polytope", "RationalCone", "SpectrumPoly",
    "SpectrumResult", "StratumConstant", "UnknownVariableError",
    "analyze_affine", "analyze_laurent", "assemble_S_infinity",
    "calibration_suite", "check_all", "check_face", "chi", "chi_commode",
    "consistency_suite", "cyclic_orbit", "euler_compact",
    "euler_specialization", "face_degree", "face_lattice",
    "face_restriction", "faces_gamma", "fiber_class", "is_commode",
    "lefschetz", "mass", "newton_polytope_at_infinity", "normal_cone",
    "normalized_volume", "parse_laurent", "point", "reduce_edge_fiber",
    "reduce_vertex_fiber", "render_text", "report_from_json",
    "report_to_json", "sample_weight", "sp_of_class", "stratum_restriction",
    "support", "torus_factor", "triangulate",
]
