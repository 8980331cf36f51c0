"""Framed toric varieties with partitioned framings, the forward and reverse
duality constructions, calibration checking, and mirror-family rendering."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .fans import irrelevant_ideal, is_fan_matrix_of_wps_quotient, spanned_fan
from .lattice import (class_group, columns, from_columns, matmul, primitive,
                      rank, shape, transpose, vec_gcd)
from .polytopes import (convex_hull, framing_polytope, integer_part,
                        lattice_points_of_union_hull, DegenerateHullError,
                        EmptyPolytopeError)


class UnsupportedFramingError(ValueError):
    """Dual-framing rule is only implemented in the reduced regime (all
    block excesses equal to 1)."""


class NonIntegralVertexError(ValueError):
    pass


class NonPrimitiveVertexError(ValueError):
    pass


class ReverseDualError(ValueError):
    """Reverse dual requires an n x (n+1) fan matrix of a weighted
    projective space quotient."""


@dataclass
class PartitionedFtv:
    """A complete toric variety given by a fan matrix together with a
    strictly effective framing split into blocks with disjoint supports."""
    fan_matrix: list
    blocks: list

    def __post_init__(self):
        n, ncols = shape(self.fan_matrix)
        for a in self.blocks:
            if len(a) != ncols:
                raise ValueError("block length does not match column count")

    def validate(self):
        n, ncols = shape(self.fan_matrix)
        if rank(self.fan_matrix) != n:
            raise ValueError("fan matrix does not have full row rank")
        for col in columns(self.fan_matrix):
            if vec_gcd(col) != 1:
                raise ValueError(f"non-primitive fan matrix column {col}")
        seen = set()
        for a in self.blocks:
            if any(x < 0 for x in a):
                raise ValueError("negative framing entry")
            sup = {j for j, x in enumerate(a) if x != 0}
            if sup & seen:
                raise ValueError("block supports are not disjoint")
            seen |= sup
        if seen != set(range(ncols)):
            raise ValueError("framing is not strictly effective")
        return self

    @property
    def partition(self):
        return [tuple(j + 1 for j, x in enumerate(a) if x != 0)
                for a in self.blocks]

    def d(self, k):
        return sum(self.blocks[k])

    def m(self, k):
        return sum(1 for x in self.blocks[k] if x != 0)

    def delta(self, k):
        return self.d(k) - self.m(k) + 1

    @property
    def total_framing(self):
        return [sum(a[j] for a in self.blocks)
                for j in range(shape(self.fan_matrix)[1])]


@dataclass
class ReverseDualResult:
    """Candidate dual of a weighted-projective-quotient side: a fan matrix
    plus dual framing blocks."""
    fan_matrix: list
    blocks: list


class MirrorModel:
    """Output of the forward duality: dual fan matrix, dual framing blocks,
    exponent matrices of the mirror family, and the ambient invariants.

    The spanned fan (hence the irrelevant ideal) is computed lazily because
    facet enumeration is expensive in high dimension and many callers only
    need the matrices.
    """

    def __init__(self, fan_matrix, blocks, block_origin):
        self.dual_fan_matrix = fan_matrix
        self.dual_blocks = blocks
        self.block_origin = block_origin
        n, ncols = shape(fan_matrix)
        self.lattice_point_sets = []
        self.exponent_matrices = []
        self.psi_columns = []
        lam_t = transpose(fan_matrix)
        for b in blocks:
            delta_b = framing_polytope(fan_matrix, b)
            pts = delta_b.lattice_points()
            self.lattice_point_sets.append(pts)
            M = [[sum(lam_t[j][i] * m[i] for i in range(n)) + b[j]
                  for m in pts] for j in range(ncols)]
            if any(x < 0 for row in M for x in row):
                raise ValueError("negative exponent in a mirror monomial")
            self.exponent_matrices.append(M)
            zero = tuple([0] * n)
            self.psi_columns.append(pts.index(zero) if zero in pts else None)
        self.class_group = class_group(fan_matrix)
        Q = self.class_group.weight_matrix
        self.degrees = []
        for M in self.exponent_matrices:
            cols = columns(M)
            degs = {tuple(sum(qrow[j] * c[j] for j in range(ncols)) for qrow in Q)
                    for c in cols}
            if len(degs) != 1:
                raise ValueError("mirror monomials are not homogeneous")
            for trow, s in zip(self.class_group.torsion_matrix,
                               self.class_group.invariant_factors):
                tdegs = {sum(trow[j] * c[j] for j in range(ncols)) % s
                         for c in cols}
                if len(tdegs) != 1:
                    raise ValueError("mirror monomials are not homogeneous "
                                     "under the torsion grading")
            self.degrees.append(list(degs.pop()))

    @cached_property
    def spanning_polytope(self):
        return convex_hull(columns(self.dual_fan_matrix))

    @cached_property
    def fan(self):
        """Spanned fan of the hull of the columns, with rays renumbered to
        this model's column order so that ideal variable indices match the
        fan matrix."""
        from .fans import SpannedFan
        raw = spanned_fan(self.spanning_polytope)
        cols = columns(self.dual_fan_matrix)
        ray_cols = columns(raw.rays)
        if sorted(cols) != sorted(ray_cols):
            raise ValueError("fan rays do not coincide with the fan matrix "
                             "columns")
        remap = [cols.index(rc) for rc in ray_cols]
        cones = sorted(tuple(sorted(remap[i] for i in cone))
                       for cone in raw.max_cones)
        return SpannedFan(dim=raw.dim, rays=self.dual_fan_matrix,
                          max_cones=cones)

    @cached_property
    def irrelevant_ideal(self):
        return irrelevant_ideal(self.fan)


def f_dual(X: PartitionedFtv) -> MirrorModel:
    """Forward duality in the reduced regime (all block excesses 1):
    the dual fan matrix collects the vertices of the hull of the per-block
    framing polytopes, the dual blocks are column-membership indicators."""
    lam, origins = dual_fan_matrix(X)
    ncols = shape(lam)[1]
    blocks = [[1 if origins[j] == k else 0 for j in range(ncols)]
              for k in range(len(X.blocks))]
    return MirrorModel(lam, blocks, origins)


def dual_fan_matrix(X: PartitionedFtv):
    """The dual fan matrix (canonical column order) and the block origin of
    each column."""
    for k in range(len(X.blocks)):
        if X.delta(k) != 1:
            raise UnsupportedFramingError(
                f"unsupported dual-framing regime: block {k + 1} has excess "
                f"{X.delta(k)} > 1")
    polys = [framing_polytope(X.fan_matrix, a) for a in X.blocks]
    hull = convex_hull([v for P in polys for v in P.vertices])
    cols = []
    origins = []
    for v in hull.vertices:
        if any(x.denominator != 1 for x in v):
            raise NonIntegralVertexError(f"non-integral dual vertex {v}")
        iv = tuple(int(x) for x in v)
        if vec_gcd(iv) != 1:
            raise NonPrimitiveVertexError(f"non-primitive dual vertex {iv}")
        origin = next(k for k, P in enumerate(polys) if v in P.vertices)
        cols.append(iv)
        origins.append(origin)
    return from_columns(cols), origins


def f_dual_reverse(X: PartitionedFtv) -> ReverseDualResult:
    """Reverse duality through the integer part of the hull of the framing
    polytopes of a weighted-projective-quotient fan matrix."""
    wps = is_fan_matrix_of_wps_quotient(X.fan_matrix)
    if not wps.accepted:
        raise ReverseDualError(wps.reason)
    polys = [framing_polytope(X.fan_matrix, c) for c in X.blocks]
    pts = lattice_points_of_union_hull(polys)
    if not pts:
        raise EmptyPolytopeError("hull of framing polytopes has no lattice points")
    hull = convex_hull(pts)
    # recovered framing on the primitive reductions of the integer part's
    # vertices: each column carries minus its minimal pairing against the
    # source fan matrix columns (a vertex belonging to several polytopes
    # counts for the lowest block; one belonging to none contributes to no
    # block)
    src_cols = columns(X.fan_matrix)
    col_list = []
    memberships = []
    values = []
    for v in hull.vertices:
        iv = v_int(v)
        col = primitive(iv)
        origin = next((k for k, P in enumerate(polys) if P.contains(iv)), None)
        if col in col_list:
            continue
        col_list.append(col)
        memberships.append(origin)
        values.append(-min(sum(c * w for c, w in zip(col, wc))
                           for wc in src_cols))
    order = sorted(range(len(col_list)), key=lambda i: col_list[i],
                   reverse=True)
    cols = [col_list[i] for i in order]
    origins = [memberships[i] for i in order]
    vals = [values[i] for i in order]
    blocks = [[vals[j] if origins[j] == k else 0 for j in range(len(cols))]
              for k in range(len(X.blocks))]
    return ReverseDualResult(fan_matrix=from_columns(cols), blocks=blocks)


def v_int(v):
    return tuple(int(x) for x in v)


def framed_equal_up_to_block_permutation(fan1, blocks1, fan2, blocks2):
    """Whether two framed fan matrices agree up to a column permutation and
    a relabelling of the framing blocks."""
    from itertools import permutations
    if len(blocks1) != len(blocks2):
        return False
    target = column_profile_multiset(fan2, blocks2)
    return any(column_profile_multiset(fan1, list(perm)) == target
               for perm in permutations(blocks1))


def column_profile_multiset(fan_matrix, blocks):
    """Multiset of (column, per-block framing values) pairs; the comparison
    currency for fan matrices with framings up to column permutation."""
    cols = columns(fan_matrix)
    out = {}
    for j, c in enumerate(cols):
        key = (c, tuple(b[j] for b in blocks))
        out[key] = out.get(key, 0) + 1
    return out


@dataclass
class CalibrationResult:
    calibrated: bool
    steps: list = field(default_factory=list)

    def __bool__(self):
        return self.calibrated


def _dual_of(fan_matrix, blocks):
    """One duality step: forward when supported, falling back to the reverse
    construction on weighted-projective-quotient sides whose forward dual
    has non-integral or non-primitive vertices."""
    X = PartitionedFtv(fan_matrix, blocks)
    try:
        model = f_dual(X)
        return model.dual_fan_matrix, model.dual_blocks, "forward"
    except (NonIntegralVertexError, NonPrimitiveVertexError):
        n, ncols = shape(fan_matrix)
        if ncols != n + 1 or not is_fan_matrix_of_wps_quotient(fan_matrix).accepted:
            raise
        rev = f_dual_reverse(X)
        return rev.fan_matrix, rev.blocks, "reverse"


def check_calibration(X: PartitionedFtv) -> CalibrationResult:
    """Apply the duality twice and compare the result with the input at the
    level of column multisets with matching framing blocks."""
    m1, b1, how1 = _dual_of(X.fan_matrix, X.blocks)
    m2, b2, how2 = _dual_of(m1, b1)
    same = framed_equal_up_to_block_permutation(m2, b2, X.fan_matrix,
                                                X.blocks)
    return CalibrationResult(calibrated=same, steps=[how1, how2])


def monomial_string(exponents, psi=False):
    parts = ["psi"] if psi else []
    for j, e in enumerate(exponents):
        if e == 1:
            parts.append(f"x{j + 1}")
        elif e > 1:
            parts.append(f"x{j + 1}^{e}")
    return "*".join(parts) if parts else ("psi" if psi else "1")


def render_family(model: MirrorModel) -> list:
    """One polynomial string per block; the monomial at lattice point 0
    carries the coefficient psi."""
    out = []
    for k, M in enumerate(model.exponent_matrices):
        cols = columns(M)
        terms = [monomial_string(c, psi=(j == model.psi_columns[k]))
                 for j, c in enumerate(cols)]
        out.append(" + ".join(terms))
    return out


# ---------------------------------------------------------------------------
# the degree-(d,d) family: closed-form block matrices
# ---------------------------------------------------------------------------

def _scaled_identity(s, m, n=None):
    n = m if n is None else n
    return [[s if i == j else 0 for j in range(n)] for i in range(m)]


def _const(c, m, n):
    return [[c] * n for _ in range(m)]


def _madd(A, B):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]


def _hcat(*mats):
    return [sum((m[i] for m in mats), []) for i in range(len(mats[0]))]


def _vcat(*mats):
    return [row for m in mats for row in m]


def generate_dd_input(d: int):
    """Input for the degree-(d,d) complete intersection in P^{2d-1} plus the
    closed-form expected matrices of its two dual descriptions."""
    if d < 2:
        raise ValueError("d must be at least 2")
    n = 2 * d - 1
    V = _hcat(_scaled_identity(1, n), _const(-1, n, 1))
    a1 = [1] * d + [0] * d
    a2 = [0] * d + [1] * d
    X = PartitionedFtv(V, [a1, a2])

    lam_a1 = _vcat(
        _hcat(_madd(_scaled_identity(d, d), _const(-1, d, d)), _const(-1, d, d)),
        _hcat(_const(0, d - 1, d), _scaled_identity(d, d - 1), _const(0, d - 1, 1)))
    lam_a2 = _vcat(
        _hcat(_scaled_identity(d, d), _const(0, d, d)),
        _hcat(_const(-1, d - 1, d),
              _madd(_scaled_identity(d, d - 1), _const(-1, d - 1, d - 1)),
              _const(-1, d - 1, 1)))
    lam = _hcat(lam_a1, lam_a2)

    W = _vcat(
        _hcat(_const(-1, d, d), _scaled_identity(d, d)),
        _hcat(_scaled_identity(d, d - 1), _const(0, d - 1, 1),
              _const(-1, d - 1, d)))

    M1 = _vcat(
        _hcat(_scaled_identity(d, d), _const(1, d, 1)),
        _hcat(_const(0, d, d), _const(1, d, 1)),
        _hcat(_scaled_identity(d, d), _const(0, d, 1)),
        _const(0, d, d + 1))
    M2 = _vcat(
        _const(0, d, d + 1),
        _hcat(_scaled_identity(d, d), _const(0, d, 1)),
        _hcat(_const(0, d, d), _const(1, d, 1)),
        _hcat(_scaled_identity(d, d), _const(1, d, 1)))
    Mv1 = _vcat(
        _hcat(_scaled_identity(d, d), _const(0, d, 1)),
        _hcat(_const(0, d, d), _const(1, d, 1)))
    Mv2 = _vcat(
        _hcat(_const(0, d, d), _const(1, d, 1)),
        _hcat(_scaled_identity(d, d), _const(0, d, 1)))

    expected = {
        "Lambda": lam,
        "W": W,
        "M1": M1,
        "M2": M2,
        "Mv1": Mv1,
        "Mv2": Mv2,
        "b1": [1] * (2 * d) + [0] * (2 * d),
        "b2": [0] * (2 * d) + [1] * (2 * d),
        "c1": [1] * d + [0] * d,
        "c2": [0] * d + [1] * d,
    }
    return X, expected
