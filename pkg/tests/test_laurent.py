from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from newton_spectrum.laurent import (ExponentRangeError, LaurentError,
                                     LaurentPoly, ParseError, StratumConstant,
                                     UnknownVariableError, face_restriction,
                                     parse_laurent, stratum_restriction,
                                     support)
from newton_spectrum.polytope import face_lattice, newton_polytope_at_infinity


def test_parse_basic_laurent():
    p = parse_laurent("x + y + x^-1*y^-1", ["x", "y"])
    assert p.terms == {(1, 0): 1, (0, 1): 1, (-1, -1): 1}


def test_parse_rational_coefficients():
    p = parse_laurent("3*x^2 - 1/2*x", ["x"])
    assert p.terms == {(2,): 3, (1,): Fraction(-1, 2)}


def test_parse_unknown_variable():
    with pytest.raises(UnknownVariableError) as err:
        parse_laurent("x + z", ["x", "y"])
    assert err.value.name == "z"


def test_parse_error_positions():
    with pytest.raises(ParseError) as err:
        parse_laurent("x + ", ["x"])
    assert err.value.position == 4


@pytest.mark.parametrize("bad", ["", "x +* y", "^2", "x^", "1/0", "2*x*3",
                                 "x^(2", "x//2"])
def test_parse_rejects_malformed(bad):
    with pytest.raises(ParseError):
        parse_laurent(bad, ["x", "y"])


def test_parse_exponent_forms():
    a = parse_laurent("x^-1", ["x"])
    b = parse_laurent("x^(-1)", ["x"])
    assert a == b


def test_parse_merges_repeated_monomials():
    assert parse_laurent("x + x", ["x"]).terms == {(1,): 2}
    assert parse_laurent("x - x", ["x"]).is_zero()
    assert parse_laurent("x*x*y", ["x", "y"]).terms == {(2, 1): 1}


def test_zero_polynomial_is_a_value_not_an_error():
    z = parse_laurent("x - x", ["x"])
    assert z.is_zero() and z.format() == "0"


def test_exponent_bound_is_hard_error():
    with pytest.raises(ExponentRangeError):
        LaurentPoly(["x"], {(2**63,): 1})
    with pytest.raises(ExponentRangeError):
        parse_laurent(f"x^{2**63}", ["x"])


@st.composite
def laurent_polys(draw):
    dim = draw(st.integers(min_value=1, max_value=3))
    variables = ["x", "y", "z"][:dim]
    n_terms = draw(st.integers(min_value=1, max_value=6))
    terms = {}
    for _ in range(n_terms):
        exp = tuple(draw(st.integers(min_value=-5, max_value=5))
                    for _ in range(dim))
        num = draw(st.integers(min_value=-20, max_value=20))
        den = draw(st.integers(min_value=1, max_value=9))
        if num:
            terms[exp] = Fraction(num, den)
    return LaurentPoly(variables, terms)


@given(laurent_polys())
@settings(max_examples=150, deadline=None)
def test_format_parse_round_trip(p):
    assert parse_laurent(p.format(), p.variables) == p


@given(laurent_polys())
@settings(max_examples=50, deadline=None)
def test_support_matches_terms(p):
    assert support(p) == frozenset(p.terms)


def test_support_examples():
    assert support(parse_laurent("x + y + x^-1*y^-1", ["x", "y"])) == \
        frozenset({(1, 0), (0, 1), (-1, -1)})
    assert support(parse_laurent("5", ["x"])) == frozenset({(0,)})
    assert support(parse_laurent("x^2 + 2*x*y + y^2", ["x", "y"])) == \
        frozenset({(2, 0), (1, 1), (0, 2)})


def _face_with_vertices(f, vertices):
    lattice = face_lattice(newton_polytope_at_infinity(f))
    target = frozenset(vertices)
    for face in lattice.faces:
        if frozenset(face.vertices) == target:
            return face
    raise AssertionError(f"no face with vertices {vertices}")


def test_face_restriction_edge():
    f = parse_laurent("x + y + x^-1*y^-1", ["x", "y"])
    edge = _face_with_vertices(f, {(1, 0), (0, 1)})
    assert face_restriction(f, edge) == parse_laurent("x + y", ["x", "y"])


def test_face_restriction_vertex():
    f = parse_laurent("x + y + x^-1*y^-1", ["x", "y"])
    vertex = _face_with_vertices(f, {(-1, -1)})
    assert face_restriction(f, vertex) == parse_laurent("x^-1*y^-1", ["x", "y"])


def test_face_restriction_keeps_interior_lattice_points():
    f = parse_laurent("x^2 + 2*x*y + y^2 + x", ["x", "y"])
    edge = _face_with_vertices(f, {(2, 0), (0, 2)})
    assert face_restriction(f, edge) == \
        parse_laurent("x^2 + 2*x*y + y^2", ["x", "y"])


def test_face_restriction_rejects_foreign_face():
    f = parse_laurent("x + y + x^-1*y^-1", ["x", "y"])
    g = parse_laurent("x + y", ["x", "y"])
    face = _face_with_vertices(g, {(1, 0)})
    with pytest.raises(LaurentError):
        face_restriction(f, face)


def test_face_restriction_support_property():
    f = parse_laurent("x^2 + 2*x*y + y^2 + x", ["x", "y"])
    lattice = face_lattice(newton_polytope_at_infinity(f))
    for face in lattice.faces:
        if face.dim < 0:
            continue
        restricted = face_restriction(f, face)
        assert support(restricted) == support(f) & set(face.points)


def test_stratum_restriction_examples():
    f = parse_laurent("x*y + x", ["x", "y"])
    assert stratum_restriction(f, ["y"]) == parse_laurent("x", ["x"])
    assert stratum_restriction(parse_laurent("x*y", ["x", "y"]), ["y"]) == \
        StratumConstant(Fraction(0))
    with pytest.raises(LaurentError):
        stratum_restriction(parse_laurent("x + x^-1", ["x"]), ["x"])


def test_stratum_restriction_support_property():
    f = parse_laurent("x^2*y + x*z + y*z + x + 7", ["x", "y", "z"])
    reduced = stratum_restriction(f, ["z"])
    kept = {(e[0], e[1]) for e in f.terms if e[2] == 0}
    assert support(reduced) == kept


def test_stratum_restriction_all_variables():
    f = parse_laurent("x + y + 3", ["x", "y"])
    assert stratum_restriction(f, ["x", "y"]) == StratumConstant(Fraction(3))


def test_canonical_term_order_is_graded_lex_descending():
    p = parse_laurent("1 + x^2 + x*y + y + x^-1", ["x", "y"])
    grades = [sum(e) for e in p.terms]
    assert grades == sorted(grades, reverse=True)
    assert p.format() == "x^2 + x*y + y + 1 + x^-1"
