"""Exact linear algebra over Z and Q for lattice geometry.

All vectors are tuples of Python ints, all matrices lists/tuples of such
rows.  Rational elimination uses fractions.Fraction; nothing here ever
touches floating point.  Lattice-level operations (saturation, integer
kernels, unimodular completion) are built on sympy's Smith normal form,
which is exact over Z.

Conventions:
  * a "primitive" integer vector has gcd of entries equal to 1;
  * saturated basis of a subspace V means a Z-basis of V ∩ Z^d, so every
    lattice point of V is an integer combination of the basis.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_decomp

IntVec = tuple[int, ...]


class LinearAlgebraError(ValueError):
    pass


def vec_add(a: Sequence[int], b: Sequence[int]) -> IntVec:
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a: Sequence[int], b: Sequence[int]) -> IntVec:
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(a: Sequence[int], k: int) -> IntVec:
    return tuple(k * x for x in a)


def dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def is_zero_vec(a: Sequence[int]) -> bool:
    return all(x == 0 for x in a)


def content(a: Sequence[int]) -> int:
    """gcd of the entries (0 for the zero vector)."""
    return math.gcd(*[abs(x) for x in a]) if a else 0


def primitive(a: Sequence[int]) -> IntVec:
    """Divide an integer vector by the gcd of its entries."""
    g = content(a)
    if g == 0:
        raise LinearAlgebraError("zero vector has no primitive representative")
    return tuple(x // g for x in a)


def primitive_of_rational(a: Sequence[Fraction]) -> IntVec:
    """Scale a rational vector to the primitive integer vector on the same ray."""
    denom = math.lcm(*[f.denominator for f in a]) if a else 1
    ints = [int(f * denom) for f in a]
    return primitive(ints)


# ---------------------------------------------------------------------------
# Rational Gaussian elimination


def _to_fraction_rows(rows: Iterable[Sequence[int | Fraction]]) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in rows]


def rank(rows: Iterable[Sequence[int | Fraction]]) -> int:
    """Rank of the matrix over Q."""
    m = _to_fraction_rows(rows)
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                factor = m[i][col]
                m[i] = [x - factor * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def affine_rank(points: Sequence[Sequence[int]]) -> int:
    """Dimension of the affine hull of the points (-1 for the empty set)."""
    if not points:
        return -1
    base = points[0]
    return rank([vec_sub(p, base) for p in points[1:]])


def det_int(rows: Sequence[Sequence[int]]) -> int:
    """Integer determinant by cofactor expansion (intended for n ≤ 4)."""
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    if n == 3:
        a, b, c = rows[0]
        d_, e, f_ = rows[1]
        g, h, i = rows[2]
        return a * (e * i - f_ * h) - b * (d_ * i - f_ * g) + c * (d_ * h - e * g)
    total = 0
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in rows[1:]]
        term = rows[0][j] * det_int(minor)
        total += term if j % 2 == 0 else -term
    return total


def cross_normal(rows: Sequence[Sequence[int]]) -> IntVec | None:
    """Primitive normal to the span of k-1 vectors in Z^k via cofactors.

    Returns None when the rows are linearly dependent (all cofactors zero).
    For k = 1 (no rows) the normal is (1,).
    """
    if not rows:
        return (1,)
    k = len(rows[0])
    if len(rows) != k - 1:
        raise LinearAlgebraError("cross_normal needs k-1 vectors of length k")
    rows = [list(r) for r in rows]
    n = []
    for j in range(k):
        minor = [row[:j] + row[j + 1:] for row in rows]
        cof = det_int(minor)
        n.append(cof if j % 2 == 0 else -cof)
    if all(x == 0 for x in n):
        return None
    return primitive(n)


def det(rows: Sequence[Sequence[int]]) -> Fraction:
    """Determinant over Q (square matrix)."""
    m = _to_fraction_rows(rows)
    n = len(m)
    if any(len(row) != n for row in m):
        raise LinearAlgebraError("determinant needs a square matrix")
    result = Fraction(1)
    for col in range(n):
        pivot = next((i for i in range(col, n) if m[i][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            result = -result
        result *= m[col][col]
        inv = 1 / m[col][col]
        for i in range(col + 1, n):
            if m[i][col] != 0:
                factor = m[i][col] * inv
                m[i] = [x - factor * y for x, y in zip(m[i], m[col])]
    return result


def solve(rows: Sequence[Sequence[int | Fraction]],
          rhs: Sequence[int | Fraction]) -> list[Fraction] | None:
    """One rational solution x of rows·x = rhs, or None if inconsistent.

    Free variables are set to 0.
    """
    m = _to_fraction_rows(rows)
    b = [Fraction(x) for x in rhs]
    if len(m) != len(b):
        raise LinearAlgebraError("dimension mismatch")
    if not m:
        return []
    ncols = len(m[0])
    pivots: list[tuple[int, int]] = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        b[r], b[pivot] = b[pivot], b[r]
        inv = 1 / m[r][col]
        m[r] = [x * inv for x in m[r]]
        b[r] *= inv
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                factor = m[i][col]
                m[i] = [x - factor * y for x, y in zip(m[i], m[r])]
                b[i] -= factor * b[r]
        pivots.append((r, col))
        r += 1
        if r == len(m):
            break
    for i in range(r, len(m)):
        if b[i] != 0:
            return None
    x = [Fraction(0)] * ncols
    for row, col in pivots:
        x[col] = b[row]
    return x


def nullspace(rows: Sequence[Sequence[int]]) -> list[IntVec]:
    """Primitive integer basis vectors of the rational nullspace {x : rows·x = 0}.

    The returned vectors span the nullspace over Q; they are each primitive
    but are not promised to span the saturated lattice (use integer_kernel
    for that).
    """
    m = _to_fraction_rows(rows)
    if not m:
        raise LinearAlgebraError("nullspace of empty matrix is ambiguous")
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                factor = m[i][col]
                m[i] = [x - factor * y for x, y in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for row, col in enumerate(pivots):
            v[col] = -m[row][fc]
        basis.append(primitive_of_rational(v))
    return basis


# ---------------------------------------------------------------------------
# Lattice operations via Smith normal form


def _smith(rows: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    m = Matrix([list(r) for r in rows])
    a, s, t = smith_normal_decomp(m, domain=ZZ)
    return a, s, t


def _matrix_rows(m: Matrix) -> list[IntVec]:
    return [tuple(int(x) for x in m.row(i)) for i in range(m.rows)]


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> list[IntVec]:
    """Saturated Z-basis of {x in Z^ncols : rows·x = 0}."""
    rows = [r for r in rows if not is_zero_vec(r)]
    if not rows:
        return [tuple(1 if i == j else 0 for j in range(ncols)) for i in range(ncols)]
    a, s, t = _smith(rows)
    r = sum(1 for i in range(min(a.rows, a.cols)) if a[i, i] != 0)
    cols = [tuple(int(x) for x in t.col(j)) for j in range(r, ncols)]
    return cols


def saturated_row_basis(rows: Sequence[Sequence[int]], ncols: int) -> list[IntVec]:
    """Z-basis of span_Q(rows) ∩ Z^ncols.

    Every lattice point of the rational row span is an integer combination
    of the returned vectors (elementary divisors all 1 by construction:
    the basis consists of rows of a unimodular matrix).
    """
    rows = [r for r in rows if not is_zero_vec(r)]
    if not rows:
        return []
    a, s, t = _smith(rows)
    r = sum(1 for i in range(min(a.rows, a.cols)) if a[i, i] != 0)
    t_inv = t.inv()
    return _matrix_rows(t_inv)[:r]


def unimodular_map_to_e1(u: Sequence[int]) -> list[IntVec]:
    """Rows of a unimodular U with U·u = e1, for primitive u."""
    if content(u) != 1:
        raise LinearAlgebraError("unimodular completion needs a primitive vector")
    a, s, t = _smith([[x] for x in u])
    # a = s · u · t with t = [±1]; then (t00·s)·u = t00²·content·e1 = e1.
    sign = int(t[0, 0])
    rows = _matrix_rows(s)
    result = [tuple(sign * x for x in row) for row in rows]
    assert tuple(dot(row, u) for row in result) == tuple(
        1 if i == 0 else 0 for i in range(len(u)))
    return result


def invert_unimodular(rows: Sequence[Sequence[int]]) -> list[IntVec]:
    """Exact inverse of a unimodular integer matrix."""
    m = Matrix([list(r) for r in rows])
    inv = m.inv()
    return _matrix_rows(inv)


def solve_integer(rows: Sequence[Sequence[int]], rhs: Sequence[int]) -> IntVec | None:
    """One integer solution of rows·x = rhs, or None.

    Requires the row lattice context only through Smith form; used to lift
    functionals through saturated bases (where a solution always exists).
    """
    rows = list(rows)
    if not rows:
        return None
    a, s, t = _smith(rows)
    srhs = s * Matrix([[x] for x in rhs])
    n = a.cols
    y = [0] * n
    for i in range(min(a.rows, a.cols)):
        d = int(a[i, i])
        val = int(srhs[i, 0])
        if d == 0:
            if val != 0:
                return None
            continue
        if val % d != 0:
            return None
        y[i] = val // d
    for i in range(min(a.rows, a.cols), a.rows):
        if int(srhs[i, 0]) != 0:
            return None
    x = t * Matrix([[v] for v in y])
    return tuple(int(v) for v in x)


# ---------------------------------------------------------------------------
# Fourier-Motzkin feasibility for strict ray systems


def positive_functional(rays: Sequence[Sequence[int]]) -> IntVec:
    """An integer φ with φ·r > 0 for every listed ray.

    Solves {φ·r ≥ 1} by Fourier-Motzkin elimination; such φ exists iff the
    cone generated by the rays is pointed (salient).  Raises
    LinearAlgebraError otherwise.
    """
    rays = [tuple(r) for r in rays if not is_zero_vec(r)]
    if not rays:
        raise LinearAlgebraError("no rays given")
    d = len(rays[0])
    # system entries: (coeffs, rhs) meaning coeffs·φ ≥ rhs
    system: list[tuple[tuple[Fraction, ...], Fraction]] = [
        (tuple(Fraction(x) for x in r), Fraction(1)) for r in rays
    ]
    eliminated: list[list[tuple[tuple[Fraction, ...], Fraction]]] = []
    for var in range(d - 1, -1, -1):
        lowers = []   # φ_var ≥ bound(rest)
        uppers = []   # φ_var ≤ bound(rest)
        keep = []
        for coeffs, rhs in system:
            c = coeffs[var]
            rest = coeffs[:var]
            if c > 0:
                lowers.append((tuple(-x / c for x in rest), rhs / c))
            elif c < 0:
                uppers.append((tuple(-x / c for x in rest), rhs / c))
            else:
                keep.append((rest, rhs))
        eliminated.append([(coeffs, rhs) for coeffs, rhs in system])
        new_system = list(keep)
        for lo_c, lo_r in lowers:
            for up_c, up_r in uppers:
                # lower bound ≤ upper bound
                new_system.append((tuple(u - l for l, u in zip(lo_c, up_c)),
                                   lo_r - up_r))
        system = new_system
    for coeffs, rhs in system:
        if rhs > 0:
            raise LinearAlgebraError("cone is not pointed: no positive functional")
    # back-substitution
    phi: list[Fraction] = []
    for var, old_system in zip(range(d), reversed(eliminated)):
        lo = None
        hi = None
        for coeffs, rhs in old_system:
            c = coeffs[var]
            if c == 0:
                continue
            rest_val = sum(coeffs[j] * phi[j] for j in range(var)) if var else Fraction(0)
            bound = (rhs - rest_val) / c
            if c > 0:
                lo = bound if lo is None else max(lo, bound)
            else:
                hi = bound if hi is None else min(hi, bound)
        if lo is None and hi is None:
            phi.append(Fraction(0))
        elif hi is None:
            phi.append(lo + 1)
        elif lo is None:
            phi.append(hi - 1)
        else:
            if lo > hi:
                raise LinearAlgebraError("Fourier-Motzkin back-substitution failed")
            phi.append((lo + hi) / 2)
    denom = math.lcm(*[f.denominator for f in phi])
    result = tuple(int(f * denom) for f in phi)
    assert all(dot(result, r) > 0 for r in rays)
    return result
