import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix

from newton_spectrum.intlinalg import (LinearAlgebraError, content,
                                       cross_normal, det, det_int, dot,
                                       integer_kernel, nullspace,
                                       positive_functional, primitive, rank,
                                       saturated_row_basis, solve,
                                       solve_integer, unimodular_map_to_e1)


def test_content_and_primitive():
    assert content((4, -6, 8)) == 2
    assert primitive((4, -6, 8)) == (2, -3, 4)
    with pytest.raises(LinearAlgebraError):
        primitive((0, 0))


@given(st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3),
                min_size=1, max_size=4))
@settings(max_examples=100, deadline=None)
def test_rank_matches_sympy(rows):
    assert rank(rows) == Matrix(rows).rank()


@given(st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3),
                min_size=3, max_size=3))
@settings(max_examples=100, deadline=None)
def test_det_matches_sympy(rows):
    assert det(rows) == Matrix(rows).det()
    assert det_int(rows) == Matrix(rows).det()


def test_solve_consistent_and_inconsistent():
    assert solve([(1, 2), (2, 4)], (3, 6)) == [Fraction(3), Fraction(0)]
    assert solve([(1, 2), (2, 4)], (3, 7)) is None


def test_nullspace_orthogonality():
    rows = [(1, 2, 3), (0, 1, 1)]
    for v in nullspace(rows):
        assert all(dot(r, v) == 0 for r in rows)
    assert len(nullspace(rows)) == 1


@given(st.lists(st.lists(st.integers(-6, 6), min_size=4, max_size=4),
                min_size=1, max_size=3))
@settings(max_examples=60, deadline=None)
def test_integer_kernel_is_saturated_basis(rows):
    kernel = integer_kernel(rows, 4)
    # every basis vector annihilates the rows
    for v in kernel:
        assert all(dot(r, v) == 0 for r in rows)
    # dimension matches the rank-nullity count
    assert len(kernel) == 4 - rank(rows)
    # saturation: elementary divisors of the basis matrix are all 1
    if kernel:
        from sympy.matrices.normalforms import smith_normal_form
        snf = smith_normal_form(Matrix(list(map(list, kernel))))
        diag = [snf[i, i] for i in range(min(snf.rows, snf.cols))]
        assert all(abs(x) == 1 for x in diag if x != 0)


@given(st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3),
                min_size=1, max_size=3))
@settings(max_examples=60, deadline=None)
def test_saturated_row_basis_spans_lattice_points(rows):
    basis = saturated_row_basis(rows, 3)
    assert len(basis) == rank(rows)
    if not basis:
        return
    columns = [[basis[i][j] for i in range(len(basis))] for j in range(3)]
    # original rows lie in the rational span
    for r in rows:
        if any(r):
            assert solve(columns, r) is not None
    # integer combinations land back on integer coordinates (saturation)
    rng = random.Random(7)
    for _ in range(5):
        coeffs = [rng.randint(-3, 3) for _ in basis]
        point = tuple(sum(c * b[j] for c, b in zip(coeffs, basis))
                      for j in range(3))
        sol = solve(columns, point)
        assert sol is not None and all(s.denominator == 1 for s in sol)


@given(st.lists(st.integers(-9, 9), min_size=2, max_size=4))
@settings(max_examples=100, deadline=None)
def test_unimodular_map_sends_primitive_to_e1(vec):
    if all(x == 0 for x in vec):
        return
    u = primitive(vec)
    rows = unimodular_map_to_e1(u)
    image = tuple(dot(r, u) for r in rows)
    assert image == (1,) + (0,) * (len(u) - 1)
    assert abs(det(rows)) == 1


def test_solve_integer():
    assert solve_integer([(2, 1), (1, 1)], (3, 2)) == (1, 1)
    assert solve_integer([(2, 0), (0, 2)], (1, 0)) is None


def test_cross_normal_small_dims():
    assert cross_normal([]) == (1,)
    assert cross_normal([(2, 4)]) in ((2, -1), (-2, 1))
    n = cross_normal([(1, 0, 0), (0, 1, 0)])
    assert n in ((0, 0, 1), (0, 0, -1))
    assert cross_normal([(1, 1), (2, 2)][:1]) is not None
    assert cross_normal([(0, 0)]) is None


@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3),
                min_size=1, max_size=6))
@settings(max_examples=80, deadline=None)
def test_positive_functional_agrees_with_lp_oracle(rays):
    from scipy.optimize import linprog

    rays = [tuple(r) for r in rays if any(r)]
    if not rays:
        return
    # independent numeric oracle: feasibility of {phi . r >= 1}
    lp = linprog(c=[0.0, 0.0, 0.0],
                 A_ub=[[-float(x) for x in r] for r in rays],
                 b_ub=[-1.0] * len(rays),
                 bounds=[(None, None)] * 3, method="highs")
    try:
        phi = positive_functional(rays)
        assert all(dot(phi, r) > 0 for r in rays)
        assert lp.status == 0
    except LinearAlgebraError:
        assert lp.status == 2  # oracle agrees: infeasible, cone not pointed
