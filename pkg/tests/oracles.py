"""Independent test oracles.

Everything here recomputes expected values by a route disjoint from the
implementation under test: brute-force facet searches over point pairs and
triples, random-direction argmax classification, and numeric enumeration
of fibers with complex arithmetic.  The oracles are deliberately naive.
"""

from __future__ import annotations

import cmath
import itertools
import math
from fractions import Fraction

from newton_spectrum.intlinalg import cross_normal, dot, primitive, vec_sub
from newton_spectrum.laurent import LaurentPoly


def evaluate(f: LaurentPoly, point: dict[str, complex]) -> complex:
    """Numeric evaluation of a Laurent polynomial at a torus point."""
    total = 0j
    for exp, coeff in f.terms.items():
        term = complex(coeff)
        for var, e in zip(f.variables, exp):
            term *= point[var] ** e
        total += term
    return total


def brute_force_facets(points: list[tuple[int, ...]]) -> set[tuple[tuple[int, ...], int]]:
    """All facets of a full-dimensional hull in d ≤ 3, by testing all
    (d-1)-simplex candidates; returns {(primitive outer normal, offset)}.
    """
    d = len(points[0])
    found = set()
    if d == 1:
        coords = [p[0] for p in points]
        return {((1,), max(coords)), ((-1,), -min(coords))}
    for combo in itertools.combinations(points, d):
        rows = [vec_sub(p, combo[0]) for p in combo[1:]]
        normal = cross_normal(rows)
        if normal is None:
            continue
        c = dot(normal, combo[0])
        values = [dot(normal, p) for p in points]
        if all(v <= c for v in values):
            found.add((normal, c))
        if all(v >= c for v in values):
            found.add((tuple(-x for x in normal), -c))
    return found


def argmax_subset(points: list[tuple[int, ...]], direction: tuple[int, ...]
                  ) -> frozenset[tuple[int, ...]]:
    values = [dot(direction, p) for p in points]
    m = max(values)
    return frozenset(p for p, v in zip(points, values) if v == m)


def surveyor_normalized_area(vertices: list[tuple[int, int]]) -> Fraction:
    """2·area of a polygon via the shoelace formula (vertices in hull order)."""

    def angle(p, center):
        return math.atan2(p[1] - center[1], p[0] - center[0])

    cx = Fraction(sum(v[0] for v in vertices), len(vertices))
    cy = Fraction(sum(v[1] for v in vertices), len(vertices))
    ordered = sorted(vertices, key=lambda p: angle(p, (cx, cy)))
    twice = Fraction(0)
    for i, p in enumerate(ordered):
        q = ordered[(i + 1) % len(ordered)]
        twice += Fraction(p[0] * q[1] - q[0] * p[1])
    return abs(twice)


def roots_of_unity_orbit_structure(e: int, shift: int) -> list[int]:
    """Cycle lengths of k ↦ k+shift on Z/e, via explicit permutation chase."""
    seen = set()
    lengths = []
    for start in range(e):
        if start in seen:
            continue
        length = 0
        k = start
        while k not in seen:
            seen.add(k)
            k = (k + shift) % e
            length += 1
        lengths.append(length)
    return sorted(lengths)


def monomial_fiber_enumeration(a: tuple[int, ...], omega: tuple[int, ...]
                               ) -> tuple[int, list[int]]:
    """Enumerate the components of {x^a = 1} and the scaling permutation.

    Components are labeled by the e-th roots of unity taken by x^{a/e}
    (e = content): label j carries u = exp(2πij/e).  The generator
    λ = exp(2πi/N) acts through u ↦ λ^{-(ω|a)/e}·u, an explicit rotation;
    the orbit structure is read off the induced permutation of labels.
    Returns (number of components, orbit sizes).
    """
    e = math.gcd(*[abs(x) for x in a])
    n = dot(omega, a)
    assert n > 0
    p = tuple(x // e for x in a)
    lam = cmath.exp(2j * cmath.pi / n)
    mult = lam ** (-dot(omega, p))
    # express the multiplier as an exact rotation of the component labels
    angle = cmath.phase(mult) / (2 * cmath.pi)
    shift = round(angle * e)
    assert abs(cmath.exp(2j * cmath.pi * shift / e) - mult) < 1e-9, \
        "multiplier is not an e-th root of unity"
    labels = [cmath.exp(2j * cmath.pi * j / e) for j in range(e)]
    permuted = [u * mult for u in labels]
    perm = []
    for value in permuted:
        distances = [abs(value - u) for u in labels]
        perm.append(distances.index(min(distances)))
    assert sorted(perm) == list(range(e)), "action does not permute components"
    return e, roots_of_unity_orbit_structure(e, shift % e)


def track_monodromy(coeff_fn, radius: float, steps: int = 64) -> list[int]:
    """Follow the roots of a polynomial family around |t| = radius.

    coeff_fn(t) returns the coefficient list (numpy.roots convention).
    Returns the permutation of the initial root order after one loop.
    """
    import numpy as np

    t0 = complex(radius)
    current = list(np.roots(coeff_fn(t0)))
    order = list(range(len(current)))
    reference = list(current)
    for k in range(1, steps + 1):
        t = radius * cmath.exp(2j * cmath.pi * k / steps)
        new_roots = list(np.roots(coeff_fn(t)))
        matched = []
        taken = set()
        for c in current:
            best = min((i for i in range(len(new_roots)) if i not in taken),
                       key=lambda i: abs(new_roots[i] - c))
            taken.add(best)
            matched.append(new_roots[best])
        current = matched
    perm = []
    for c in current:
        distances = [abs(c - r) for r in reference]
        perm.append(distances.index(min(distances)))
    return perm
