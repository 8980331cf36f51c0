"""Web-level machinery: ordered dual fan matrices, the admissible-W scan,
intermediate-model webs, grading literals, and fixture replay."""

from itertools import combinations

import pytest

from framedtoric.lattice import (class_group, columns, from_columns,
                                 row_lattices_equal, shape)
from framedtoric.mirrorweb import (admissible_from_columns, build_model,
                                   build_web, check_assumption_A,
                                   find_admissible_W, indicator_blocks,
                                   mpcp_rays, ordered_dual_fan_matrix,
                                   verify_appendix, web_invariants)
from framedtoric.scenarios import pn_fan_matrix, scenario

from test_ftv import LAMBDA_22, W_33

Q_33 = [[1, 0, 0, 0, 0, 2, 0, 1, 1, 2, 2, 0],
        [0, 1, 0, 0, 0, 2, 1, 0, 1, 2, 2, 0],
        [0, 0, 1, 0, 0, 2, 1, 1, 0, 2, 2, 0],
        [0, 0, 0, 1, 1, 1, 1, 1, 1, 0, 0, 0],
        [0, 0, 0, 0, 1, 2, 1, 1, 1, 2, 1, 0],
        [0, 0, 0, 0, 0, 3, 1, 1, 1, 3, 3, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1]]

T_22 = [0, 0, 0, 0, 1, 0, 1, 0]   # order-2 character of the quadric dual


def test_ordered_dual_matrix_quadrics():
    lam, origins = ordered_dual_fan_matrix(scenario("y22"))
    assert lam == LAMBDA_22
    assert origins == [0, 0, 0, 0, 1, 1, 1, 1]


def test_ordered_dual_matrix_matches_canonical_columns():
    from framedtoric.ftv import dual_fan_matrix
    for name in ("y22", "y33", "y223p6"):
        X = scenario(name)
        lam, _ = ordered_dual_fan_matrix(X)
        canon, _ = dual_fan_matrix(X)
        assert sorted(columns(lam)) == sorted(columns(canon))


def test_ordered_dual_matrix_shapes():
    lam, _ = ordered_dual_fan_matrix(scenario("y456"))
    assert shape(lam) == (8, 27)
    lam, _ = ordered_dual_fan_matrix(scenario("y223p6"))
    assert shape(lam) == (6, 21)


def test_assumption_check():
    assert check_assumption_A(scenario("y22")) == [True, True]
    assert check_assumption_A(scenario("y33")) == [True, True]
    assert check_assumption_A(scenario("y223p5")) == [True, True, False]
    assert check_assumption_A(scenario("y223p6")) == [True, True, True]


def test_assumption_check_rejects_non_normal_form():
    from framedtoric.ftv import PartitionedFtv
    with pytest.raises(ValueError):
        check_assumption_A(PartitionedFtv(pn_fan_matrix(3),
                                          [[2, 1, 0, 0], [0, 0, 1, 1]]))


# ---------------------------------------------------------------------------
# admissible-W scan on the quadric web
# ---------------------------------------------------------------------------

@pytest.fixture(scope="module")
def y22_scan():
    X = scenario("y22")
    lam, origins = ordered_dual_fan_matrix(X)
    b = indicator_blocks(origins, 2)
    return X, lam, origins, b, find_admissible_W(X, lam, origins, b_blocks=b)


def test_quadric_scan_counts(y22_scan):
    _, _, _, _, adm = y22_scan
    assert len(adm) == 5
    passing = [w for w in adm if w.passes_C]
    assert len(passing) == 1
    w = passing[0]
    assert w.column_list == (3, 4, 5, 6)
    assert w.q == [1, 1, 1, 1]
    assert w.torsion == [4]
    assert w.aug_det == 4
    assert w.c_blocks == [[1, 1, 0, 0], [0, 0, 1, 1]]


def test_quadric_scan_b_passers_are_wps_quotients(y22_scan):
    from framedtoric.fans import is_fan_matrix_of_wps_quotient
    _, _, _, _, adm = y22_scan
    for w in adm:
        res = is_fan_matrix_of_wps_quotient(w.W)
        assert res.accepted
        assert res.weights == w.q


def test_single_column_list_evaluation(y22_scan):
    X, lam, origins, b, adm = y22_scan
    w = admissible_from_columns(X, lam, origins, [3, 4, 5, 6], b_blocks=b)
    assert w.passes_C
    found = {a.column_list for a in adm}
    bad = next(c for c in combinations(range(1, 9), 4) if c not in found)
    with pytest.raises(ValueError):
        admissible_from_columns(X, lam, origins, list(bad), b_blocks=b)


def test_quadric_web_models(y22_scan):
    X, lam, origins, b, adm = y22_scan
    chosen = next(w for w in adm if w.passes_C)
    web = build_web(X, lam, origins, b, chosen, subsets="all")
    assert web.exceptional == (1, 2, 7, 8)
    assert len(web.models) == 16
    report = web_invariants(adm, web)
    assert report["n_admissible_B"] == 5
    assert report["n_admissible_BC"] == 1
    assert report["aug_det_multiset"] == {4: 1}
    assert report["n_models"] == 16
    # the empty deletion is the full dual model; the full deletion is the
    # chosen quotient fan matrix itself
    full = web.model(())
    assert full.dual_fan_matrix == lam
    small = web.model((1, 2, 7, 8))
    assert sorted(columns(small.dual_fan_matrix)) == sorted(columns(chosen.W))


def test_web_rejects_subset_outside_exceptional(y22_scan):
    X, lam, origins, b, adm = y22_scan
    chosen = next(w for w in adm if w.passes_C)
    web = build_web(X, lam, origins, b, chosen)
    with pytest.raises(ValueError):
        web.model((3,))


def test_build_model_column_deletion():
    X = scenario("y22")
    lam, origins = ordered_dual_fan_matrix(X)
    b = indicator_blocks(origins, 2)
    model = build_model(lam, b, origins, (1, 8))
    assert shape(model.dual_fan_matrix) == (3, 6)
    kept = [c for j, c in enumerate(columns(lam)) if j not in (0, 7)]
    assert columns(model.dual_fan_matrix) == kept


# ---------------------------------------------------------------------------
# gradings of the cubic web
# ---------------------------------------------------------------------------

def test_cubic_weight_matrix_row_lattice():
    lam, _ = ordered_dual_fan_matrix(scenario("y33"))
    cg = class_group(lam)
    assert cg.free_rank == 7
    assert cg.invariant_factors == [3, 3, 3]
    assert row_lattices_equal(cg.weight_matrix, Q_33)


def test_cubic_quotient_torsion():
    cg = class_group(W_33)
    assert cg.free_rank == 1
    assert cg.invariant_factors == [3, 3, 9]


def test_quadric_torsion_character():
    lam, _ = ordered_dual_fan_matrix(scenario("y22"))
    cg = class_group(lam)
    assert cg.invariant_factors == [2]
    # the reference character annihilates the row space of the fan matrix
    for row in lam:
        assert sum(t * x for t, x in zip(T_22, row)) % 2 == 0
    # and is nontrivial: adding it to the weight rows and 2Z^8 changes the
    # row lattice
    two_i = [[2 if i == j else 0 for j in range(8)] for i in range(8)]
    assert not row_lattices_equal(cg.weight_matrix + two_i,
                                  cg.weight_matrix + [T_22] + two_i)
    # our own torsion row is an equivalent character
    t_ours = cg.torsion_matrix[0]
    assert row_lattices_equal(cg.weight_matrix + [T_22] + two_i,
                              cg.weight_matrix + [t_ours] + two_i)


# ---------------------------------------------------------------------------
# ray matrices and fixture replay
# ---------------------------------------------------------------------------

def test_mpcp_rays_of_plane():
    rays = mpcp_rays(pn_fan_matrix(2))
    assert sorted(columns(rays)) == sorted([(1, 0), (0, 1), (-1, -1)])


def test_mpcp_rays_of_scaled_plane():
    M = from_columns([(2, 0), (0, 2), (-2, -2)])
    rays = mpcp_rays(M)
    assert sorted(columns(rays)) == _plane_oracle()


def _plane_oracle():
    """Brute-force nonzero primitive points of conv((2,0),(0,2),(-2,-2))."""
    from fractions import Fraction
    from math import gcd
    pts = []
    verts = [(2, 0), (0, 2), (-2, -2)]
    for x in range(-2, 3):
        for y in range(-2, 3):
            if (x, y) == (0, 0) or gcd(x, y) != 1:
                continue
            if _in_triangle(Fraction(x), Fraction(y), verts):
                pts.append((x, y))
    return sorted(pts)


def _in_triangle(x, y, verts):
    from fractions import Fraction
    (x1, y1), (x2, y2), (x3, y3) = verts
    d = (y2 - y3) * (x1 - x3) + (x3 - x2) * (y1 - y3)
    a = Fraction((y2 - y3) * (x - x3) + (x3 - x2) * (y - y3), d)
    b = Fraction((y3 - y1) * (x - x3) + (x1 - x3) * (y - y3), d)
    c = 1 - a - b
    return a >= 0 and b >= 0 and c >= 0


@pytest.mark.parametrize("which,expected_entries",
                         [("A", 16), ("B", 1), ("C", 64)])
def test_fixture_replay(which, expected_entries):
    report = verify_appendix(which)
    assert len(report) == expected_entries
    bad = [r for r in report if not r["ok"]]
    assert bad == []
