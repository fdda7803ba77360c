"""Grothendieck-style class expressions and fiber-class reductions.

Classes carrying a finite-order scaling action are reduced to Z-linear
combinations of canonical generators.  A generator is a formal product

    CyclicOrbit(e) × TorusFactor(r) × LefschetzPower(k)

written GenKey(orbit=e, torus=r, lefschetz=k); orbit 1 is the absorbed
trivial action and GenKey() alone is the class of a point.  Scaling
actions on torus factors are trivialized (torus translations extend to
linear actions on the affine line, whose class relation absorbs them);
free cyclic orbits keep their order.  Faces of dimension ≥ 2 admit no
closed reduction here and become Opaque generators, which downstream
spectrum evaluation reports as a symbolic remainder.

The fiber of a monomial c·x^a over 1 in the torus splits into e = content(a)
connected components, each a translated subtorus of codimension 1; the
residual order-N scaling permutes the components through a primitive e-th
root of unity, giving one free orbit: CyclicOrbit(e) × TorusFactor(d-1).
For an edge, a unimodular change straightens the edge to the first
coordinate, f_γ = z^b·q(z₁) with q of degree ℓ (the lattice length); the
remaining coordinates sweep a rank-(d-1) character torsor over {q ≠ 0},
contributing (TorusFactor(1) − ℓ·[pt]) × CyclicOrbit(e′) × TorusFactor(d-2)
with e′ the content of b off the edge direction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import sympy
from sympy import Poly, Rational

from . import intlinalg as la
from .cones import face_degree
from .intlinalg import IntVec
from .laurent import LaurentPoly, face_restriction
from .polytope import Face


class MotivicError(ValueError):
    pass


class DegenerateEdgeError(MotivicError):
    """Edge polynomial has repeated torus roots; reduction refused."""


@dataclass(frozen=True, order=True)
class GenKey:
    """Canonical monomial generator CyclicOrbit(orbit)·TorusFactor(torus)·L^lefschetz."""
    orbit: int = 1
    torus: int = 0
    lefschetz: int = 0

    def __post_init__(self):
        if self.orbit < 1 or self.torus < 0 or self.lefschetz < 0:
            raise MotivicError(f"malformed generator {self!r}")

    def mul(self, other: "GenKey") -> "GenKey":
        if self.orbit > 1 and other.orbit > 1:
            raise MotivicError(
                "product of two nontrivial cyclic orbits is outside the "
                "canonical generator set")
        return GenKey(self.orbit * other.orbit,
                      self.torus + other.torus,
                      self.lefschetz + other.lefschetz)

    def describe(self) -> str:
        parts = []
        if self.orbit > 1:
            parts.append(f"mu{self.orbit}")
        if self.torus:
            parts.append("Gm" if self.torus == 1 else f"Gm^{self.torus}")
        if self.lefschetz:
            parts.append("L" if self.lefschetz == 1 else f"L^{self.lefschetz}")
        return "[" + "*".join(parts) + "]" if parts else "[pt]"


@dataclass(frozen=True, order=True)
class OpaqueKey:
    """Unreduced face class; identity excludes the weight (ω-independence)."""
    face_id: int
    face_dim: int
    ambient_dim: int
    poly: str

    def describe(self) -> str:
        return (f"[opaque: face {self.face_id} (dim {self.face_dim}) "
                f"of Gm^{self.ambient_dim}, f_face = {self.poly}]")


@dataclass(frozen=True)
class OpaqueMeta:
    weight: IntVec
    degree: int


Key = GenKey | OpaqueKey


class ClassExpr:
    """Z-linear combination of canonical generators, canonical form throughout."""

    __slots__ = ("terms", "opaque_meta")

    def __init__(self, terms: Mapping[Key, int] | None = None,
                 opaque_meta: Mapping[OpaqueKey, OpaqueMeta] | None = None):
        cleaned = {k: int(c) for k, c in (terms or {}).items() if c != 0}
        object.__setattr__(self, "terms", dict(
            sorted(cleaned.items(), key=lambda kv: _key_sort(kv[0]))))
        meta = {k: m for k, m in (opaque_meta or {}).items() if k in cleaned}
        object.__setattr__(self, "opaque_meta", meta)

    def __setattr__(self, name, value):
        raise AttributeError("ClassExpr is immutable")

    # -- ring-lite operations -------------------------------------------------

    def __add__(self, other: "ClassExpr") -> "ClassExpr":
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, 0) + c
        return ClassExpr(terms, {**self.opaque_meta, **other.opaque_meta})

    def __sub__(self, other: "ClassExpr") -> "ClassExpr":
        return self + other.scale(-1)

    def __neg__(self) -> "ClassExpr":
        return self.scale(-1)

    def scale(self, k: int) -> "ClassExpr":
        return ClassExpr({key: k * c for key, c in self.terms.items()},
                         self.opaque_meta)

    def mul(self, other: "ClassExpr") -> "ClassExpr":
        terms: dict[Key, int] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                if isinstance(k1, OpaqueKey) or isinstance(k2, OpaqueKey):
                    if isinstance(k2, GenKey) and k2 == GenKey():
                        key: Key = k1
                    elif isinstance(k1, GenKey) and k1 == GenKey():
                        key = k2
                    else:
                        raise MotivicError("cannot multiply opaque classes")
                else:
                    key = k1.mul(k2)
                terms[key] = terms.get(key, 0) + c1 * c2
        return ClassExpr(terms, {**self.opaque_meta, **other.opaque_meta})

    def __eq__(self, other) -> bool:
        return isinstance(other, ClassExpr) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(tuple(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def has_opaque(self) -> bool:
        return any(isinstance(k, OpaqueKey) for k in self.terms)

    def opaque_terms(self) -> list[tuple[OpaqueKey, int]]:
        return [(k, c) for k, c in self.terms.items() if isinstance(k, OpaqueKey)]

    def describe(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for key, coeff in self.terms.items():
            body = key.describe()
            mag = abs(coeff)
            chunk = body if mag == 1 else f"{mag}*{body}"
            if not parts:
                parts.append(chunk if coeff > 0 else f"-{chunk}")
            else:
                parts.append(f"+ {chunk}" if coeff > 0 else f"- {chunk}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"ClassExpr({self.describe()})"


def _key_sort(key: Key):
    if isinstance(key, GenKey):
        return (0, key.orbit, key.torus, key.lefschetz)
    return (1, key.face_id, key.face_dim, key.ambient_dim, key.poly)


def zero() -> ClassExpr:
    return ClassExpr()


def point(mult: int = 1) -> ClassExpr:
    return ClassExpr({GenKey(): mult})


def torus_factor(r: int, mult: int = 1) -> ClassExpr:
    return ClassExpr({GenKey(torus=r): mult})


def cyclic_orbit(e: int, mult: int = 1) -> ClassExpr:
    return ClassExpr({GenKey(orbit=e): mult})


def lefschetz(k: int = 1, mult: int = 1) -> ClassExpr:
    return ClassExpr({GenKey(lefschetz=k): mult})


# ---------------------------------------------------------------------------
# fiber reductions


def reduce_vertex_fiber(f_gamma: LaurentPoly, weight: Sequence[int],
                        degree: int) -> ClassExpr:
    """Class of {c·x^a = 1} with the residual μ_N scaling action.

    The e = content(a) components form a single free orbit: the generator
    of μ_N multiplies the split coordinate x^{a/e} by a primitive e-th
    root of unity (its order is N/gcd(N, N/e) = e).  The coefficient c
    moves the torsor base point only.
    """
    terms = f_gamma.sorted_terms()
    if len(terms) != 1:
        raise MotivicError("vertex fiber expects a monomial")
    a, _coeff = terms[0]
    if la.is_zero_vec(a):
        raise MotivicError("vertex at the origin has no fiber class here")
    if degree <= 0 or degree != la.dot(weight, a):
        raise MotivicError("weight/degree mismatch: weight not in the face cone")
    e = la.content(a)
    d = f_gamma.dimension
    return ClassExpr({GenKey(orbit=e, torus=d - 1): 1})


def _edge_q_poly(f_gamma: LaurentPoly, face: Face):
    """Straighten the edge to e1; return (q coefficients, b, U, lattice length)."""
    v0 = face.base_point
    v1 = next(v for v in face.vertices if v != v0)
    delta = la.vec_sub(v1, v0)
    length = la.content(delta)
    u = la.primitive(delta)
    U = la.unimodular_map_to_e1(u)
    b = tuple(la.dot(row, v0) for row in U)
    coeffs: dict[int, Rational] = {}
    for alpha, c in f_gamma.terms.items():
        image = tuple(la.dot(row, alpha) for row in U)
        k = image[0] - b[0]
        assert image[1:] == b[1:] and 0 <= k <= length
        coeffs[k] = Rational(c.numerator, c.denominator)
    assert 0 in coeffs and length in coeffs
    return coeffs, b, U, length


def _distinct_root_count(poly: Poly, sym) -> int:
    """Number of distinct nonzero complex roots."""
    stripped = poly
    while stripped.nth(0) == 0 and stripped.degree() > 0:
        stripped = Poly(sympy.expand(stripped.as_expr() / sym), sym, domain="QQ")
    g = stripped.gcd(stripped.diff(sym))
    return stripped.degree() - g.degree()


def reduce_edge_fiber(f_gamma: LaurentPoly, face: Face, weight: Sequence[int],
                      degree: int, *, allow_degenerate: bool = False) -> ClassExpr:
    """Class of {f_γ = 1} for an edge face, with the μ_N action.

    After straightening, f_γ = z^b·q(z₁).  When b has support off the edge
    direction, the fiber is a rank-(d-1) character torsor over the ℓ-times
    punctured line {q ≠ 0} and e′ = content(b off position 1) counts the
    kernel components: (TorusFactor(1) − ℓ·[pt])×CyclicOrbit(e′)×TorusFactor(d-2).
    Otherwise the equation z₁^{b₁}q(z₁) = 1 has w simple torus roots
    (w = the width of its Newton segment) permuted freely in orbits of size
    s = N/gcd(N, ω′₁): (w/s)·CyclicOrbit(s)×TorusFactor(d-1).
    """
    d = f_gamma.dimension
    if d < 2:
        raise MotivicError("edge fibers require ambient dimension ≥ 2")
    if face.dim != 1:
        raise MotivicError("reduce_edge_fiber expects an edge")
    if degree <= 0:
        raise MotivicError("weight gives nonpositive degree")
    coeffs, b, U, length = _edge_q_poly(f_gamma, face)
    z = sympy.Symbol("z")
    q = Poly(sum(c * z**k for k, c in coeffs.items()), z, domain="QQ")
    assert q.degree() == length and q.nth(0) != 0

    distinct = _distinct_root_count(q, z)
    if distinct != length and not allow_degenerate:
        raise DegenerateEdgeError(
            f"edge polynomial q = {q.as_expr()} has repeated roots; "
            "pass the override to reduce anyway")

    b_rest = b[1:]
    if any(x != 0 for x in b_rest):
        e_prime = la.content(b_rest)
        punctured = torus_factor(1) - point(distinct)
        return punctured.mul(cyclic_orbit(e_prime)).mul(
            torus_factor(d - 2) if d > 2 else point())

    # affine hull of the edge passes through the origin: unreachable for
    # genuine faces of a Newton polyhedron at infinity, kept for direct calls
    b1 = b[0]
    w = max(b1 + length, 0) - min(b1, 0)
    u_inv = la.invert_unimodular(U)
    omega_prime_1 = sum(u_inv[i][0] * weight[i] for i in range(d))
    s = degree // math.gcd(degree, abs(omega_prime_1)) if omega_prime_1 else 1
    support_diffs = [k for k in coeffs]
    if any((k1 - k2) % s for k1 in support_diffs for k2 in support_diffs):
        raise MotivicError(
            "scaling multiplier does not preserve the root set: weight is "
            "inconsistent with the edge data")
    shift = max(-b1, 0)
    p = Poly(sympy.expand(q.as_expr() * z**max(b1, 0) - z**shift), z, domain="QQ")
    w_eff = _distinct_root_count(p, z)
    if w_eff != w and not allow_degenerate:
        raise DegenerateEdgeError(
            f"equation z^{b1}·q = 1 has repeated roots ({w_eff} of {w} distinct)")
    if w_eff % s:
        raise MotivicError(
            f"root count {w_eff} not divisible by orbit size {s}: "
            "internal inconsistency")
    return ClassExpr({GenKey(orbit=s, torus=d - 1): w_eff // s})


def make_opaque(f_gamma: LaurentPoly, face: Face, weight: Sequence[int],
                degree: int) -> ClassExpr:
    key = OpaqueKey(face.id, face.dim, f_gamma.dimension, f_gamma.format())
    return ClassExpr({key: 1}, {key: OpaqueMeta(tuple(weight), degree)})


def fiber_class(f: LaurentPoly, face: Face, weight: Sequence[int],
                *, allow_degenerate: bool = False) -> ClassExpr:
    """Dispatch to the vertex/edge reducers; dim ≥ 2 faces stay opaque."""
    degree = face_degree(face, weight)
    f_gamma = face_restriction(f, face)
    if face.dim == 0:
        return reduce_vertex_fiber(f_gamma, weight, degree)
    if face.dim == 1:
        return reduce_edge_fiber(f_gamma, face, weight, degree,
                                 allow_degenerate=allow_degenerate)
    return make_opaque(f_gamma, face, weight, degree)


def assemble_S_infinity(contributions: Iterable[tuple[int, ClassExpr]]) -> ClassExpr:
    """-Σ χ(C_γ)·[fiber class] over the faces avoiding the origin."""
    total = zero()
    for chi_used, fiber in contributions:
        total = total + fiber.scale(chi_used)
    return -total
