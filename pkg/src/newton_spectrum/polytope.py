"""Newton polyhedron at infinity: exact hull, face lattice, per-face lattice data.

The Newton polyhedron at infinity of a Laurent polynomial f is the convex
hull of supp(f) together with the origin.  Everything here is computed in
exact integer/rational arithmetic with a brute-force facet search: every
d-subset of the input points proposes a hyperplane, which is kept when all
points lie weakly on one side.  At desk scale (ambient dimension ≤ 4,
≤ 64 points) this is fast, and an independent random-direction oracle in
the test suite cross-checks it.

Polytopes whose support spans a lower-dimensional sublattice are handled
by computing the hull in saturated affine-hull coordinates and lifting
facet normals back to the ambient lattice; all face data is reported in
ambient coordinates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from . import intlinalg as la
from .intlinalg import IntVec
from .laurent import LaurentPoly, support


class PolytopeError(ValueError):
    pass


@dataclass(frozen=True)
class Facet:
    """Outer facet description: normal·x ≤ offset on the polytope."""
    normal: IntVec
    offset: int


@dataclass(frozen=True)
class Face:
    """A face of the Newton polyhedron with its lattice data.

    `points` are the input points (support ∪ origin) lying on the face;
    `support_points` excludes the origin unless it is genuinely in the
    support.  `direction_basis` is a saturated Z-basis of the direction
    lattice of the face's affine hull, so base_point + Z-combinations of
    it reach every lattice point of that hull.
    """
    id: int
    dim: int
    vertices: tuple[IntVec, ...]
    points: tuple[IntVec, ...]
    support_points: tuple[IntVec, ...]
    contains_origin: bool
    in_coordinate_hyperplane: bool
    direction_basis: tuple[IntVec, ...]
    base_point: IntVec | None
    active_facets: frozenset[int]
    owner_key: frozenset[IntVec] = field(repr=False)

    def is_empty(self) -> bool:
        return self.dim < 0


class Polytope:
    """Exact integer convex hull of a finite point set (possibly lower-dim)."""

    def __init__(self, points: Sequence[Sequence[int]],
                 support_points: Sequence[Sequence[int]] | None = None):
        pts = sorted({tuple(int(x) for x in p) for p in points})
        if not pts:
            raise PolytopeError("empty point set")
        self.ambient_dim: int = len(pts[0])
        if any(len(p) != self.ambient_dim for p in pts):
            raise PolytopeError("points of mixed dimension")
        self.points: tuple[IntVec, ...] = tuple(pts)
        self.support_points: frozenset[IntVec] = (
            frozenset(tuple(int(x) for x in p) for p in support_points)
            if support_points is not None else frozenset(self.points))
        self.owner_key: frozenset[IntVec] = frozenset(self.points)
        self._lattice: "FaceLattice | None" = None
        self._build()

    # -- hull construction ---------------------------------------------------

    def _build(self) -> None:
        d = self.ambient_dim
        pts = self.points
        self.base_point: IntVec = pts[0]
        diffs = [la.vec_sub(p, self.base_point) for p in pts[1:]]
        basis = la.saturated_row_basis(diffs, d)
        self.dim: int = len(basis)
        self.direction_basis: tuple[IntVec, ...] = tuple(basis)

        # equations cutting out the affine hull (empty for full-dimensional)
        eq_normals = la.integer_kernel(basis, d) if self.dim < d else []
        self.equations: tuple[Facet, ...] = tuple(
            Facet(tuple(n), la.dot(n, self.base_point)) for n in sorted(eq_normals))

        # coordinates of each point in the saturated affine basis (exact ints)
        reduced: list[IntVec] = []
        for p in pts:
            rhs = la.vec_sub(p, self.base_point)
            if self.dim == 0:
                reduced.append(())
                continue
            sol = la.solve([[basis[i][j] for i in range(self.dim)]
                            for j in range(d)], rhs)
            assert sol is not None and all(f.denominator == 1 for f in sol)
            reduced.append(tuple(int(f) for f in sol))
        self._reduced_points: tuple[IntVec, ...] = tuple(reduced)

        lifted = [(self._lift_facet(n, c), (n, c)) for n, c in self._find_facets()]
        lifted.sort(key=lambda pair: (pair[0].normal, pair[0].offset))
        self.facets: tuple[Facet, ...] = tuple(f for f, _ in lifted)
        self._reduced_facets: tuple[tuple[IntVec, int], ...] = tuple(
            r for _, r in lifted)
        self._onfacet: tuple[frozenset[int], ...] = tuple(
            frozenset(i for i, p in enumerate(pts)
                      if la.dot(f.normal, p) == f.offset)
            for f in self.facets)
        self.vertices: tuple[IntVec, ...] = tuple(self._find_vertices())

    def _find_facets(self) -> list[tuple[IntVec, int]]:
        k = self.dim
        pts = self._reduced_points
        if k == 0:
            return []
        found: dict[tuple[IntVec, int], None] = {}
        if k == 1:
            coords = [p[0] for p in pts]
            found[((1,), max(coords))] = None
            found[((-1,), -min(coords))] = None
        else:
            for combo in itertools.combinations(range(len(pts)), k):
                base = pts[combo[0]]
                rows = [la.vec_sub(pts[i], base) for i in combo[1:]]
                normal = la.cross_normal(rows)
                if normal is None:
                    continue
                c = la.dot(normal, base)
                values = [la.dot(normal, p) for p in pts]
                if all(v <= c for v in values):
                    found[(normal, c)] = None
                if all(v >= c for v in values):
                    found[(tuple(-x for x in normal), -c)] = None
        return list(found)

    def _lift_facet(self, n_red: IntVec, c_red: int) -> Facet:
        n_amb = la.solve_integer(list(self.direction_basis), n_red)
        assert n_amb is not None
        c_amb = la.dot(n_amb, self.base_point) + c_red
        g = la.content(n_amb)
        assert g > 0 and c_amb % g == 0
        return Facet(tuple(x // g for x in n_amb), c_amb // g)

    def _find_vertices(self) -> list[IntVec]:
        if self.dim == 0:
            return list(self.points)
        verts = []
        for i, p in enumerate(self.points):
            active = [self._reduced_facets[j][0]
                      for j in range(len(self.facets)) if i in self._onfacet[j]]
            if la.rank(active) == self.dim:
                verts.append(p)
        return sorted(verts)

    # -- queries ---------------------------------------------------------------

    def contains(self, point: Sequence[int]) -> bool:
        p = tuple(int(x) for x in point)
        return (all(la.dot(e.normal, p) == e.offset for e in self.equations)
                and all(la.dot(f.normal, p) <= f.offset for f in self.facets))

    def __repr__(self) -> str:
        return (f"Polytope(dim {self.dim} in Z^{self.ambient_dim}, "
                f"{len(self.vertices)} vertices, {len(self.facets)} facets)")


class FaceLattice:
    """All faces of a polytope with the containment relation.

    Faces are listed in a canonical order (by dimension, then vertex
    coordinates); face 0 is the empty face (dimension -1), the last face is
    the polytope itself.
    """

    def __init__(self, polytope: Polytope):
        self.polytope = polytope
        self.faces: tuple[Face, ...] = tuple(self._enumerate_faces())
        self.by_id = {f.id: f for f in self.faces}
        self.subfaces: dict[int, frozenset[int]] = {
            f.id: frozenset(g.id for g in self.faces
                            if g.id != f.id and set(g.points) <= set(f.points))
            for f in self.faces
        }

    def _enumerate_faces(self) -> list[Face]:
        P = self.polytope
        n = len(P.points)
        onfacet = P._onfacet
        top = frozenset(range(n))
        seen: set[frozenset[int]] = {top}
        queue = [top]
        while queue:
            current = queue.pop()
            for j in range(len(P.facets)):
                s = current & onfacet[j]
                if not s or s == current:
                    continue
                active = [k for k in range(len(P.facets)) if s <= onfacet[k]]
                closure = frozenset.intersection(*(onfacet[k] for k in active))
                if closure not in seen:
                    seen.add(closure)
                    queue.append(closure)
        vertex_set = set(P.vertices)
        origin = (0,) * P.ambient_dim
        point_sets = sorted(
            seen,
            key=lambda s: (la.affine_rank([P.points[i] for i in s]),
                           sorted(P.points[i] for i in s)))
        faces: list[Face] = []
        empty = Face(
            id=0, dim=-1, vertices=(), points=(), support_points=(),
            contains_origin=False, in_coordinate_hyperplane=False,
            direction_basis=(), base_point=None,
            active_facets=frozenset(range(len(P.facets))), owner_key=P.owner_key)
        faces.append(empty)
        for fid, idx_set in enumerate(point_sets, start=1):
            pts = sorted(P.points[i] for i in idx_set)
            verts = tuple(p for p in pts if p in vertex_set)
            dim = la.affine_rank(verts)
            diffs = [la.vec_sub(v, verts[0]) for v in verts[1:]]
            basis = tuple(la.saturated_row_basis(diffs, P.ambient_dim))
            in_hyper = any(all(v[i] == 0 for v in verts)
                           for i in range(P.ambient_dim))
            faces.append(Face(
                id=fid,
                dim=dim,
                vertices=verts,
                points=tuple(pts),
                support_points=tuple(p for p in pts if p in P.support_points),
                contains_origin=origin in set(pts),
                in_coordinate_hyperplane=in_hyper,
                direction_basis=basis,
                base_point=verts[0],
                active_facets=frozenset(
                    j for j in range(len(P.facets)) if idx_set <= onfacet[j]),
                owner_key=P.owner_key))
        return faces

    def proper_faces(self) -> list[Face]:
        all_points = set(self.polytope.points)
        return [f for f in self.faces
                if f.dim >= 0 and set(f.points) != all_points]

    def top_face(self) -> Face:
        return self.faces[-1]

    def euler_poincare_sum(self) -> int:
        """Σ (-1)^dim over every face including ∅ (dim -1) and the polytope."""
        return sum(-1 if f.dim % 2 else 1 for f in self.faces)


def newton_polytope_at_infinity(f: LaurentPoly) -> Polytope:
    """Convex hull of supp(f) ∪ {0}, exactly."""
    if f.is_zero():
        raise PolytopeError("zero polynomial has no Newton polyhedron at infinity")
    if f.is_constant():
        raise PolytopeError("constant polynomial rejected")
    supp = support(f)
    origin = (0,) * f.dimension
    return Polytope(sorted(supp | {origin}), support_points=sorted(supp))


def face_lattice(P: Polytope) -> FaceLattice:
    if P._lattice is None:
        P._lattice = FaceLattice(P)
    return P._lattice


def faces_gamma(L: FaceLattice) -> list[Face]:
    """Faces of every dimension that do not contain the origin.

    Since the origin belongs to the polytope, the polytope itself always
    contains it, so only proper faces can qualify.
    """
    return [f for f in L.faces if f.dim >= 0 and not f.contains_origin]


def is_commode(P: Polytope) -> bool:
    """True iff the origin lies in the topological interior of the polytope.

    Requires full dimension; the origin is interior exactly when it
    satisfies every facet inequality strictly.
    """
    if P.dim != P.ambient_dim:
        return False
    return all(f.offset > 0 for f in P.facets)


def triangulate(P: Polytope,
                vertex_key: Callable[[IntVec], object] | None = None
                ) -> list[tuple[IntVec, ...]]:
    """Pulling triangulation into simplices (tuples of dim+1 vertices).

    Deterministic for the default key; passing a different vertex_key
    yields a different but equally valid triangulation (used by the
    triangulation-independence tests).
    """
    key = vertex_key or (lambda v: v)
    lattice = face_lattice(P)

    def recurse(face: Face) -> list[tuple[IntVec, ...]]:
        if face.dim == 0:
            return [(face.points[0],)]
        if face.dim < 0:
            return []
        apex = min(face.vertices, key=key)
        simplices = []
        for sub_id in sorted(lattice.subfaces[face.id]):
            sub = lattice.by_id[sub_id]
            if sub.dim != face.dim - 1 or apex in sub.points:
                continue
            for s in recurse(sub):
                simplices.append((apex,) + s)
        return simplices

    return recurse(lattice.top_face())


def normalized_volume(P: Polytope) -> Fraction:
    """dim! times the Euclidean volume; 0 for lower-dimensional polytopes."""
    if P.dim < P.ambient_dim:
        return Fraction(0)
    total = Fraction(0)
    for simplex in triangulate(P):
        rows = [la.vec_sub(p, simplex[0]) for p in simplex[1:]]
        total += abs(la.det(rows))
    return total
