"""Kouchnirenko nondegeneracy certificates.

A face polynomial f_γ is nondegenerate when its zero set is smooth on the
torus.  Writing f_γ = x^base · q(u) in saturated face coordinates (u_i =
x^{B_i} for a saturated direction basis B), torus smoothness of f_γ is
equivalent to torus smoothness of the plane/line/hypersurface {q = 0}, so
the checks run on q:

  dim 0   monomials never vanish on the torus: vacuously nondegenerate.
  dim 1   q univariate: nondegenerate iff squarefree away from 0
          (exact gcd with the derivative over Q).
  dim 2   exact plane-curve decision: factor q over Q; repeated
          components, pairwise crossings and per-component singular
          points are decided by resultant elimination followed by gcd
          computations over Q[a]/(m) for each irreducible candidate
          factor m — no Groebner bases, no numerics.
  dim ≥ 3 seeded random rational slices down to two variables, each
          decided exactly; only a fully rational singular point verified
          by substitution can certify degeneracy, clean trials yield
          ProbablyNondegenerate, unresolved candidates yield Unknown.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import sympy
from sympy import (Poly, Rational, Symbol, diff, factor_list, gcd, gcdex,
                   resultant)

from . import intlinalg as la
from .laurent import LaurentPoly, face_restriction
from .polytope import Face, FaceLattice, faces_gamma

STATUS_EXACT_NONDEGENERATE = "exact-nondegenerate"
STATUS_EXACT_DEGENERATE = "exact-degenerate"
STATUS_PROBABLY_NONDEGENERATE = "probably-nondegenerate"
STATUS_UNKNOWN = "unknown"

#: weakest first; the overall verdict of a list of certificates is the min
_STATUS_ORDER = {
    STATUS_EXACT_DEGENERATE: 0,
    STATUS_UNKNOWN: 1,
    STATUS_PROBABLY_NONDEGENERATE: 2,
    STATUS_EXACT_NONDEGENERATE: 3,
}

DEFAULT_TRIALS = 4


@dataclass(frozen=True)
class Certificate:
    face_id: int
    status: str
    detail: str
    witness: str | None = None
    seed: int | None = None
    trials: int | None = None

    def is_exact(self) -> bool:
        return self.status in (STATUS_EXACT_NONDEGENERATE, STATUS_EXACT_DEGENERATE)


def weakest_status(statuses: Sequence[str]) -> str:
    if not statuses:
        return STATUS_EXACT_NONDEGENERATE
    return min(statuses, key=lambda s: _STATUS_ORDER[s])


# ---------------------------------------------------------------------------
# face coordinates


def face_polynomial(f: LaurentPoly, face: Face):
    """q(u_1..u_k) with f_γ = x^base · q(x^{B_1}, .., x^{B_k}), exponents ≥ 0.

    Uses the face's saturated direction basis, so q is an honest Laurent
    polynomial in k variables; a final monomial shift makes it polynomial
    with no variable dividing it (both operations are units on the torus).
    Returns (sympy expression, symbols).
    """
    restricted = face_restriction(f, face)
    k = face.dim
    syms = sympy.symbols(f"u1:{k + 1}") if k else ()
    basis = face.direction_basis
    base = face.base_point
    exponents: dict[tuple[int, ...], Fraction] = {}
    for alpha, coeff in restricted.terms.items():
        rhs = la.vec_sub(alpha, base)
        if k == 0:
            assert la.is_zero_vec(rhs)
            exponents[()] = coeff
            continue
        sol = la.solve([[basis[i][j] for i in range(k)]
                        for j in range(len(alpha))], rhs)
        assert sol is not None and all(s.denominator == 1 for s in sol)
        exponents[tuple(int(s) for s in sol)] = coeff
    if k == 0:
        (coeff,) = exponents.values()
        return Rational(coeff.numerator, coeff.denominator), syms
    mins = [min(e[i] for e in exponents) for i in range(k)]
    expr = sympy.Integer(0)
    for e, coeff in exponents.items():
        term = Rational(coeff.numerator, coeff.denominator)
        for i, s in enumerate(syms):
            term *= s ** (e[i] - mins[i])
        expr += term
    return sympy.expand(expr), syms


# ---------------------------------------------------------------------------
# exact bivariate machinery


def _strip_monomial(expr, syms):
    """Divide out the largest monomial factor (a unit on the torus)."""
    p = Poly(expr, *syms)
    if p.is_zero:
        return sympy.Integer(0)
    monoms = p.monoms()
    shifts = [min(m[i] for m in monoms) for i in range(len(syms))]
    if all(s == 0 for s in shifts):
        return p.as_expr()
    shifted = sympy.Integer(0)
    for m, c in zip(p.monoms(), p.coeffs()):
        term = c
        for i, s in enumerate(syms):
            term *= s ** (m[i] - shifts[i])
        shifted += term
    return sympy.expand(shifted)


def _ext_reduce(expr, m_poly: Poly, u1: Symbol):
    """Canonical representative of an u1-polynomial in Q[u1]/(m)."""
    return Poly(expr, u1, domain="QQ").rem(m_poly)


def _ext_inverse(c_poly: Poly, m_poly: Poly, u1: Symbol) -> Poly:
    s, t, h = gcdex(c_poly.as_expr(), m_poly.as_expr(), u1)
    assert h.is_number and h != 0, "non-invertible element modulo irreducible m"
    return Poly(sympy.expand(s / h), u1, domain="QQ").rem(m_poly)


def _to_ext_poly(expr, m_poly: Poly, u1: Symbol, u2: Symbol) -> dict[int, Poly]:
    """Represent expr as {deg_in_u2: coefficient in Q[u1]/(m)}, dropping zeros."""
    p = Poly(expr, u2)
    out: dict[int, Poly] = {}
    for (e,), c in zip(p.monoms(), p.coeffs()):
        red = _ext_reduce(c, m_poly, u1)
        if not red.is_zero:
            out[e] = out.get(e, Poly(0, u1, domain="QQ")) + red
    return {e: c for e, c in out.items() if not c.is_zero}


def _ext_gcd_list(polys: list[dict[int, Poly]], m_poly: Poly, u1: Symbol
                  ) -> dict[int, Poly]:
    """gcd of u2-polynomials with coefficients in the field Q[u1]/(m)."""

    def degree(p):
        return max(p) if p else -1

    def normalize(p):
        return {e: c.rem(m_poly) for e, c in p.items() if not c.rem(m_poly).is_zero}

    def mod(a, b):
        b_deg = degree(b)
        lc_inv = _ext_inverse(b[b_deg], m_poly, u1)
        a = dict(a)
        while degree(a) >= b_deg:
            a_deg = degree(a)
            factor = (a[a_deg] * lc_inv).rem(m_poly)
            for e, c in b.items():
                shift = e + a_deg - b_deg
                a[shift] = (a.get(shift, Poly(0, u1, domain="QQ"))
                            - factor * c).rem(m_poly)
            a = {e: c for e, c in a.items() if not c.is_zero}
        return a

    polys = [normalize(p) for p in polys]
    polys = [p for p in polys if p]
    if not polys:
        return {}
    g = polys[0]
    for p in polys[1:]:
        a, b = g, p
        while b:
            a, b = b, mod(a, b)
        g = a
        if degree(g) == 0:
            break
    return g


def _common_torus_zero(primary, others, u1: Symbol, u2: Symbol) -> str | None:
    """Does {primary = 0} carry a common torus zero of all the polynomials?

    `primary` must be irreducible over Q (or univariate in u1); `others`
    may be anything.  Returns a witness description or None.  The decision
    is exact: resultants give a superset of candidate u1-loci and the gcd
    over Q[u1]/(m) settles each candidate.
    """
    primary = _strip_monomial(primary, (u1, u2))
    others = [_strip_monomial(o, (u1, u2)) for o in others]
    others = [o for o in others if o != 0]
    if any(o.is_number and o != 0 for o in others):
        return None
    if primary.is_number:
        return None

    p_primary = Poly(primary, u1, u2)
    system = [primary] + others

    if p_primary.degree(u2) == 0:
        candidate = Poly(primary, u1, domain="QQ")
    else:
        res_list = []
        for o in others:
            r = resultant(primary, o, u2)
            if r == 0:
                # primary divides o (primary irreducible): o vanishes on all
                # of {primary = 0}; it imposes no further condition
                continue
            res_list.append(Poly(r, u1, domain="QQ"))
        if not res_list:
            # every other polynomial vanishes on the whole component
            return f"common component {primary}"
        candidate = res_list[0]
        for r in res_list[1:]:
            candidate = candidate.gcd(r)
            if candidate.degree() == 0:
                return None

    for factor, _mult in Poly(candidate, u1, domain="QQ").factor_list()[1]:
        if factor.degree() == 0 or factor.as_expr() == u1:
            continue
        ext = [_to_ext_poly(p, factor, u1, u2) for p in system]
        g = _ext_gcd_list(ext, factor, u1)
        if not g:
            # trivial slice (everything vanished): whole vertical line works
            return f"vertical component at roots of {factor.as_expr()}"
        low = min(g)
        if max(g) - low > 0:
            return (f"u1 a root of {factor.as_expr()}, u2 a common root of "
                    f"degree {max(g) - low}")
    return None


def _rational_singular_point(q_expr, syms, subs_map) -> tuple | None:
    """Search the sliced system for a rational singular point and verify it.

    Returns the verified point or None.  Only linear candidate factors can
    produce one; verification substitutes exactly into q and every partial.
    """
    u1, u2 = syms[0], syms[1]
    sliced = [q_expr.subs(subs_map)]
    for s in syms:
        sliced.append(sympy.expand(diff(q_expr, s).subs(subs_map)))
    sliced = [sympy.expand(e) for e in sliced]
    q_sliced = _strip_monomial(sliced[0], (u1, u2))
    if q_sliced == 0 or Poly(q_sliced, u1, u2).total_degree() == 0:
        return None
    const, factors = factor_list(q_sliced, u1, u2)
    for h, _ in factors:
        if Poly(h, u1, u2).total_degree() == 0:
            continue
        if _common_torus_zero(h, sliced[1:], u1, u2) is None:
            continue
        # candidate exists on this component; look for a rational one
        for a in _rational_roots_of_resultants(h, sliced[1:], u1, u2):
            if a == 0:
                continue
            line = [sympy.expand(e.subs(u1, a)) for e in sliced]
            g = Poly(line[0], u2, domain="QQ")
            for e in line[1:]:
                g = g.gcd(Poly(e, u2, domain="QQ"))
            for b_factor, _m in g.factor_list()[1]:
                if b_factor.degree() != 1:
                    continue
                b = Rational(-b_factor.nth(0), b_factor.nth(1))
                if b == 0:
                    continue
                point = dict(subs_map)
                point[u1] = a
                point[u2] = b
                values = [q_expr.subs(point)] + [
                    diff(q_expr, s).subs(point) for s in syms]
                if all(sympy.simplify(v) == 0 for v in values):
                    return tuple(point[s] for s in syms)
    return None


def _rational_roots_of_resultants(primary, others, u1, u2):
    if Poly(primary, u1, u2).degree(u2) == 0:
        pool = Poly(primary, u1, domain="QQ")
    else:
        pool = None
        for o in others:
            r = resultant(primary, o, u2)
            if r == 0:
                continue
            rp = Poly(r, u1, domain="QQ")
            pool = rp if pool is None else pool.gcd(rp)
        if pool is None:
            pool = Poly(0, u1, domain="QQ")
    roots = set()
    if not pool.is_zero:
        for factor, _ in pool.factor_list()[1]:
            if factor.degree() == 1:
                roots.add(Rational(-factor.nth(0), factor.nth(1)))
    return sorted(roots, key=str)


# ---------------------------------------------------------------------------
# per-dimension checks


def _check_dim1(q_expr, sym) -> tuple[bool, str | None]:
    q = Poly(q_expr, sym, domain="QQ")
    g = q.gcd(q.diff(sym))
    g_expr = _strip_monomial(g.as_expr(), (sym,))
    if Poly(g_expr, sym).degree() == 0:
        return True, None
    witnesses = []
    for factor, _ in factor_list(g_expr, sym)[1]:
        fp = Poly(factor, sym)
        if fp.degree() == 1:
            root = Rational(-fp.nth(0), fp.nth(1))
            witnesses.append(f"double root u = {root}")
        elif fp.degree() >= 1:
            witnesses.append(f"repeated factor {factor}")
    return False, "; ".join(witnesses) or f"repeated factor {g_expr}"


def _check_dim2(q_expr, syms) -> tuple[bool, str | None]:
    u1, u2 = syms
    const, factors = factor_list(q_expr, u1, u2)
    components = []
    for h, mult in factors:
        hp = Poly(h, u1, u2)
        if hp.total_degree() == 0:
            continue
        if len(hp.monoms()) == 1:
            continue  # monomial factor: no torus zeros
        if mult >= 2:
            return False, f"repeated component {h}"
        components.append(h)
    for i in range(len(components)):
        for j in range(i + 1, len(components)):
            w = _common_torus_zero(components[i], [components[j]], u1, u2)
            if w is not None:
                return False, (f"components {components[i]} and "
                               f"{components[j]} meet in the torus: {w}")
    for h in components:
        hp = Poly(h, u1, u2)
        if hp.degree(u1) == 0 or hp.degree(u2) == 0:
            continue  # parallel coordinate lines, each smooth
        w = _common_torus_zero(h, [diff(h, u1), diff(h, u2)], u1, u2)
        if w is not None:
            return False, f"singular point on {h}: {w}"
    return True, None


def check_face(f: LaurentPoly, face: Face, *, seed: int = 0,
               trials: int = DEFAULT_TRIALS) -> Certificate:
    """Certify torus smoothness of the face polynomial f_γ."""
    if face.dim < 0 or face.contains_origin:
        raise ValueError("nondegeneracy certificates apply to faces avoiding the origin")
    if face.dim == 0:
        return Certificate(face.id, STATUS_EXACT_NONDEGENERATE,
                           "monomial face: empty torus zero set")
    q_expr, syms = face_polynomial(f, face)
    if face.dim == 1:
        ok, witness = _check_dim1(q_expr, syms[0])
        if ok:
            return Certificate(face.id, STATUS_EXACT_NONDEGENERATE,
                               "edge polynomial squarefree away from 0")
        return Certificate(face.id, STATUS_EXACT_DEGENERATE,
                           "edge polynomial has a repeated torus root", witness)
    if face.dim == 2:
        ok, witness = _check_dim2(q_expr, syms)
        if ok:
            return Certificate(face.id, STATUS_EXACT_NONDEGENERATE,
                               "plane curve smooth on the torus (exact elimination)")
        return Certificate(face.id, STATUS_EXACT_DEGENERATE,
                           "plane curve singular on the torus", witness)

    # dim ≥ 3: random rational slices, each decided exactly
    rng = random.Random(seed)
    u1, u2 = syms[0], syms[1]
    pool = [Rational(n, d) for n in (1, -1, 2, -2, 3, -3) for d in (1, 2)]
    candidates = []
    for _ in range(trials):
        subs_map = {s: rng.choice(pool) for s in syms[2:]}
        point = _rational_singular_point(q_expr, syms, subs_map)
        if point is not None:
            return Certificate(
                face.id, STATUS_EXACT_DEGENERATE,
                "singular torus point found by random slicing and verified "
                "by exact substitution",
                witness=f"critical point u = {point}", seed=seed, trials=trials)
        sliced = [sympy.expand(q_expr.subs(subs_map))]
        for s in syms:
            sliced.append(sympy.expand(diff(q_expr, s).subs(subs_map)))
        q_sliced = _strip_monomial(sliced[0], (u1, u2))
        hit = None
        if q_sliced != 0 and not (Poly(q_sliced, u1, u2).total_degree() == 0):
            for h, _ in factor_list(q_sliced, u1, u2)[1]:
                if Poly(h, u1, u2).total_degree() == 0:
                    continue
                hit = _common_torus_zero(h, sliced[1:], u1, u2)
                if hit is not None:
                    break
        if hit is not None:
            candidates.append(hit)
    if candidates:
        return Certificate(
            face.id, STATUS_UNKNOWN,
            "random slices exhibit unverified critical candidates",
            witness="; ".join(sorted(set(candidates))), seed=seed, trials=trials)
    return Certificate(
        face.id, STATUS_PROBABLY_NONDEGENERATE,
        f"{trials} random rational torus slices show no critical points "
        f"(seed {seed}); not a proof in dimension ≥ 3",
        seed=seed, trials=trials)


def check_all(f: LaurentPoly, lattice: FaceLattice, *, seed: int = 0,
              trials: int = DEFAULT_TRIALS) -> tuple[list[Certificate], str]:
    """One certificate per face of Γ, plus the weakest overall status."""
    certs = [check_face(f, g, seed=seed, trials=trials)
             for g in faces_gamma(lattice)]
    return certs, weakest_status([c.status for c in certs])
