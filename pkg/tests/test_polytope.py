"""Rational polytopes: framing polytopes, exact convex hulls, lattice
points.  Hull extremality is cross-checked against an independent
exact-LP oracle."""

import random
from fractions import Fraction
from itertools import combinations

import pytest

from framedtoric.exactlp import in_convex_hull
from framedtoric.polytopes import (DegenerateHullError, RatPolytope,
                                   affine_rank, convex_hull,
                                   framing_polytope, integer_part,
                                   lattice_points_of_union_hull,
                                   primitive_points_excluding_origin)

P3 = [[1, 0, 0, -1],
      [0, 1, 0, -1],
      [0, 0, 1, -1]]

W_MU4 = [[2, 0, -1, -1],
         [0, 2, -1, -1],
         [-1, -1, 2, 0]]


def F(*args):
    return Fraction(*args)


# ---------------------------------------------------------------------------
# framing polytopes of the quadric pair in P^3 (fixed expected data)
# ---------------------------------------------------------------------------

def test_block_framing_polytope_vertices():
    P = framing_polytope(P3, [1, 1, 0, 0])
    assert sorted(P.vertices) == sorted([
        (F(1), F(-1), F(0)), (F(-1), F(1), F(0)),
        (F(-1), F(-1), F(2)), (F(-1), F(-1), F(0))])
    Q = framing_polytope(P3, [0, 0, 1, 1])
    assert sorted(Q.vertices) == sorted([
        (F(2), F(0), F(-1)), (F(0), F(2), F(-1)),
        (F(0), F(0), F(1)), (F(0), F(0), F(-1))])


def test_rational_framing_polytope():
    P = framing_polytope(W_MU4, [1, 1, 0, 0])
    assert sorted(P.vertices) == sorted([
        (F(1, 2), F(-1, 2), F(0)), (F(-1, 2), F(1, 2), F(0)),
        (F(0), F(0), F(1)), (F(-1), F(-1), F(-1))])


def test_lower_dimensional_framing_polytope():
    # dual-side polytopes are legitimately lower-dimensional
    lam = [[1, -1, -1, -1, 2, 0, 0, 0],
           [-1, 1, -1, -1, 0, 2, 0, 0],
           [0, 0, 2, 0, -1, -1, 1, -1]]
    b1 = [1, 1, 1, 1, 0, 0, 0, 0]
    P = framing_polytope(lam, b1)
    pts = P.lattice_points()
    assert len(pts) == 3
    assert affine_rank(pts) == 2


def test_framing_polytope_contains_origin_for_positive_framing():
    P = framing_polytope(P3, [1, 1, 1, 1])
    assert P.contains((0, 0, 0))
    assert P.has_interior_origin()


# ---------------------------------------------------------------------------
# convex hulls vs LP oracle
# ---------------------------------------------------------------------------

def oracle_vertices(points):
    """Independent extremality oracle: p is a vertex iff it is not in the
    hull of the remaining points (exact LP membership)."""
    uniq = sorted(set(map(tuple, points)))
    return sorted(p for p in uniq
                  if not in_convex_hull(p, [q for q in uniq if q != p]))


def test_convex_hull_vs_oracle_100_random_clouds():
    rng = random.Random(41)
    done = 0
    while done < 100:
        dim = rng.randint(1, 4)
        npts = rng.randint(dim + 1, 15)
        pts = [tuple(rng.randint(-4, 4) for _ in range(dim))
               for _ in range(npts)]
        try:
            hull = convex_hull(pts)
        except DegenerateHullError:
            continue
        got = sorted(tuple(v) for v in hull.vertices)
        want = [tuple(map(Fraction, p)) for p in oracle_vertices(pts)]
        assert got == want
        done += 1


def test_convex_hull_round_trip():
    rng = random.Random(43)
    done = 0
    while done < 40:
        dim = rng.randint(2, 4)
        pts = [tuple(rng.randint(-5, 5) for _ in range(dim))
               for _ in range(rng.randint(dim + 1, 12))]
        try:
            hull = convex_hull(pts)
        except DegenerateHullError:
            continue
        again = convex_hull([tuple(v) for v in hull.vertices])
        assert sorted(hull.vertices) == sorted(again.vertices)
        done += 1


def test_convex_hull_rejects_degenerate():
    with pytest.raises(DegenerateHullError):
        convex_hull([(0, 0), (1, 1), (2, 2)])


def test_halfspaces_cut_out_the_hull():
    rng = random.Random(47)
    done = 0
    while done < 25:
        dim = rng.randint(2, 3)
        pts = [tuple(rng.randint(-3, 3) for _ in range(dim))
               for _ in range(rng.randint(dim + 1, 10))]
        try:
            hull = convex_hull(pts)
        except DegenerateHullError:
            continue
        for p in pts:
            assert hull.contains(p)
            assert all(sum(n * x for n, x in zip(normal, p)) + off >= 0
                       for normal, off in hull.halfspaces)
        done += 1


# ---------------------------------------------------------------------------
# lattice points
# ---------------------------------------------------------------------------

def test_lattice_points_simplex():
    P = convex_hull([(0, 0), (2, 0), (0, 2)])
    assert sorted(P.lattice_points()) == sorted([
        (0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (0, 2)])


def test_integer_part_of_rational_polytope():
    P = convex_hull([(F(5, 2), F(0)), (F(0), F(5, 2)), (F(0), F(0))])
    ip = integer_part(P)
    assert sorted(tuple(int(x) for x in v) for v in ip.vertices) == sorted([
        (0, 0), (2, 0), (0, 2)])


def test_primitive_points_excluding_origin_square():
    P = convex_hull([(2, 0), (0, 2), (-2, 0), (0, -2)])
    M = primitive_points_excluding_origin(P)
    pts = sorted(tuple(col) for col in zip(*M))
    # primitive points of the cross polytope of radius 2
    want = sorted([(1, 0), (0, 1), (-1, 0), (0, -1),
                   (1, 1), (1, -1), (-1, 1), (-1, -1)])
    assert pts == want


def test_lattice_points_of_union_hull_matches_hull_enumeration():
    A = framing_polytope(W_MU4, [1, 1, 0, 0])
    B = framing_polytope(W_MU4, [0, 0, 1, 1])
    got = sorted(lattice_points_of_union_hull([A, B]))
    hull = convex_hull(list(A.vertices) + list(B.vertices))
    assert got == sorted(hull.lattice_points())
