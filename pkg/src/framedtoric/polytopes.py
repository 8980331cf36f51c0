"""Exact rational polytopes with both halfspace and vertex descriptions.

A halfspace is a pair (normal, offset) of an integer vector and an integer,
meaning {m : <normal, m> >= -offset}.  Vertices are exact rational points
(tuples of Fraction), kept in canonical lexicographically-descending order.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from math import gcd, floor, ceil

from . import exactlp
from .lattice import primitive, vec_gcd


class EmptyPolytopeError(ValueError):
    pass


class UnboundedPolytopeError(ValueError):
    pass


class DegenerateHullError(ValueError):
    """Hull is lower-dimensional than the ambient space."""

    def __init__(self, affine_dim, ambient_dim):
        self.affine_dim = affine_dim
        self.ambient_dim = ambient_dim
        super().__init__(
            f"hull has affine dimension {affine_dim} < ambient {ambient_dim}")


def _canon_points(pts):
    """Deduplicate and sort points lexicographically descending."""
    return sorted(set(tuple(Fraction(x) for x in p) for p in pts), reverse=True)


def _integral_halfspace(normal, offset):
    """Scale a rational halfspace to a primitive integral one."""
    vals = [Fraction(v) for v in list(normal) + [offset]]
    den = 1
    for v in vals:
        den = den * v.denominator // gcd(den, v.denominator)
    ints = [int(v * den) for v in vals]
    g = vec_gcd(ints)
    if g:
        ints = [x // g for x in ints]
    return tuple(ints[:-1]), ints[-1]


class RatPolytope:
    """A full-dimensional bounded rational polytope.

    Construct via :func:`framing_polytope` (H-representation) or
    :func:`convex_hull` (V-representation).  Facets of hull-built polytopes
    are computed lazily on first access.
    """

    def __init__(self, dim, vertices=None, halfspaces=None):
        if vertices is None and halfspaces is None:
            raise ValueError("need vertices or halfspaces")
        self.dim = dim
        self._vertices = vertices         # canonical order, tuples of Fraction
        self._halfspaces = halfspaces     # list of (int normal tuple, int offset)

    @property
    def vertices(self):
        if self._vertices is None:
            self._vertices = _vertex_enumeration(self.dim, self._halfspaces)
        return self._vertices

    @property
    def halfspaces(self):
        if self._halfspaces is None:
            self._halfspaces = facets_from_vertices(self.dim, self.vertices)
        return self._halfspaces

    def _bounds(self):
        """Componentwise lower/upper bounds; from the vertices when known,
        otherwise by exact LP against the halfspaces."""
        if self._vertices is not None:
            return ([min(v[i] for v in self._vertices) for i in range(self.dim)],
                    [max(v[i] for v in self._vertices) for i in range(self.dim)])
        lo, hi = [], []
        for i in range(self.dim):
            e = [Fraction(0)] * self.dim
            e[i] = Fraction(1)
            hi.append(exactlp.max_over_halfspaces(e, self._halfspaces, self.dim))
            e[i] = Fraction(-1)
            lo.append(-exactlp.max_over_halfspaces(e, self._halfspaces, self.dim))
        return lo, hi

    def contains(self, p):
        return all(sum(n_i * x_i for n_i, x_i in zip(n, p)) >= -c
                   for n, c in self.halfspaces)

    def lattice_points(self):
        """All integer points of the polytope, in canonical order."""
        hs = self.halfspaces
        lo, hi = self._bounds()
        ranges = [range(ceil(lo[i]), floor(hi[i]) + 1) for i in range(self.dim)]
        pts = []
        for p in product(*ranges):
            if all(sum(n_i * x_i for n_i, x_i in zip(n, p)) >= -c for n, c in hs):
                pts.append(p)
        return sorted(pts, reverse=True)

    def has_interior_origin(self):
        return all(c > 0 for _, c in self.halfspaces)

    def __repr__(self):
        return f"RatPolytope(dim={self.dim}, n_vertices={len(self.vertices)})"


def _vertex_enumeration(dim, halfspaces):
    """Vertices of the polyhedron cut out by the halfspaces (assumes the
    result is a polytope; boundedness is checked by the caller)."""
    verts = set()
    for combo in combinations(range(len(halfspaces)), dim):
        A = [list(halfspaces[i][0]) for i in combo]
        b = [-halfspaces[i][1] for i in combo]
        sol = exactlp.solve_unique(A, b)
        if sol is None:
            continue
        if all(sum(n_i * x_i for n_i, x_i in zip(n, sol)) >= -c
               for n, c in halfspaces):
            verts.add(tuple(sol))
    return sorted(verts, reverse=True)


def framing_polytope(V, a):
    """Polytope {m : <v_i, m> >= -a_i} for the columns v_i of V.

    V is an n x N integer matrix, a an integer vector of length N.  The
    result must be a bounded, full-dimensional polytope.
    """
    n = len(V)
    N = len(V[0])
    if len(a) != N:
        raise ValueError("framing length does not match number of columns")
    cols = [tuple(V[i][j] for i in range(n)) for j in range(N)]
    # bounded iff the recession cone {<v_i, m> >= 0 for all i} is {0}, i.e.
    # the columns positively span the ambient space
    for j in range(n):
        for s in (1, -1):
            e = [0] * n
            e[j] = s
            if not exactlp.in_cone(e, cols):
                raise UnboundedPolytopeError(
                    "halfspace normals do not positively span the space")
    hs = [(cols[j], int(a[j])) for j in range(N)]
    try:
        exactlp.max_over_halfspaces([Fraction(0)] * n, hs, n)
    except exactlp.InfeasibleLP:
        raise EmptyPolytopeError("halfspace system is infeasible") from None
    # vertices are enumerated lazily: lattice-point scans only need the
    # halfspaces and LP bounds.  The polytope may legitimately be
    # lower-dimensional (e.g. dual-framing polytopes).
    return RatPolytope(n, None, hs)


def affine_rank(points):
    pts = [tuple(Fraction(x) for x in p) for p in points]
    if not pts:
        return -1
    p0 = pts[0]
    diffs = [[p[i] - p0[i] for i in range(len(p0))] for p in pts[1:]]
    return exactlp.rank_q(diffs)


def convex_hull(points):
    """Convex hull of exact points, as a RatPolytope.  The hull must be
    full-dimensional in its ambient space."""
    pts = _canon_points(points)
    if not pts:
        raise EmptyPolytopeError("hull of no points")
    dim = len(pts[0])
    ar = affine_rank(pts)
    if ar < dim:
        raise DegenerateHullError(ar, dim)
    verts = [p for p in pts
             if not exactlp.in_convex_hull(p, [q for q in pts if q != p])]
    return RatPolytope(dim, verts)


def facets_from_vertices(dim, vertices):
    """Facet halfspaces of a full-dimensional polytope from its vertices.

    Each facet contains some affinely independent dim-subset of vertices, so
    scanning dim-subsets and keeping one-sided hyperplanes finds them all.
    """
    facets = {}
    for combo in combinations(vertices, dim):
        diffs = [[combo[i][j] - combo[0][j] for j in range(dim)]
                 for i in range(1, dim)]
        ns = exactlp.nullspace_q(diffs) if diffs else []
        if dim == 1:
            ns = [[Fraction(1)]]
        if len(ns) != 1:
            continue
        normal = ns[0]
        offset = -sum(normal[j] * combo[0][j] for j in range(dim))
        n_int, c_int = _integral_halfspace(normal, offset)
        vals = [sum(n_i * v_i for n_i, v_i in zip(n_int, v)) + c_int
                for v in vertices]
        if all(x >= 0 for x in vals):
            facets[(n_int, c_int)] = True
        elif all(x <= 0 for x in vals):
            facets[(tuple(-x for x in n_int), -c_int)] = True
    return sorted(facets)


def integer_part(P):
    """Convex hull of the lattice points of P."""
    pts = P.lattice_points()
    if not pts:
        raise EmptyPolytopeError("polytope has no lattice points")
    return convex_hull(pts)


def primitive_points_excluding_origin(P):
    """Primitive representatives of the nonzero lattice points of P, as the
    columns of an integer matrix (canonical column order).  P must contain
    the origin in its interior."""
    if not P.has_interior_origin():
        raise ValueError("origin is not interior to the polytope")
    prims = set()
    for p in P.lattice_points():
        if any(x != 0 for x in p):
            prims.add(primitive(p))
    cols = sorted(prims, reverse=True)
    n = P.dim
    return [[c[i] for c in cols] for i in range(n)]


def lattice_points_of_union_hull(polys):
    """Lattice points of conv(P_1 u ... u P_k) for framing polytopes sharing
    the same halfspace normals.

    Avoids computing facets of the hull: candidates are the lattice points of
    the relaxed polytope with componentwise-maximal offsets, filtered by an
    exact membership test against the union of the vertex sets.
    """
    normals = [n for n, _ in polys[0].halfspaces]
    for P in polys[1:]:
        if [n for n, _ in P.halfspaces] != normals:
            raise ValueError("polytopes do not share halfspace normals")
    offsets = [max(P.halfspaces[i][1] for P in polys) for i in range(len(normals))]
    relaxed = RatPolytope(
        polys[0].dim,
        _vertex_enumeration(polys[0].dim, list(zip(normals, offsets))),
        list(zip(normals, offsets)))
    all_verts = []
    for P in polys:
        all_verts.extend(P.vertices)
    # membership in any single polytope is a cheap sufficient condition;
    # only the remaining candidates need an exact LP against the hull
    pts = [p for p in relaxed.lattice_points()
           if any(P.contains(p) for P in polys)
           or exactlp.in_convex_hull(p, all_verts)]
    return sorted(pts, reverse=True)
