"""Multiple-mirror machinery: admissibility assumptions, exhaustive search
for weighted-projective-quotient submatrices W of the dual fan matrix,
intermediate-model webs over subsets of the exceptional columns, invariant
reports, and fixture replay."""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path

from .ftv import (MirrorModel, PartitionedFtv, ReverseDualResult,
                  column_profile_multiset, dual_fan_matrix, f_dual,
                  f_dual_reverse, framed_equal_up_to_block_permutation)
from .lattice import (augmented_determinant, columns, det, from_columns,
                      invariant_factors, primitive, shape, transpose)
from .polytopes import (convex_hull, primitive_points_excluding_origin,
                        DegenerateHullError, EmptyPolytopeError,
                        UnboundedPolytopeError)
from .scenarios import pn_fan_matrix, scenario


# ---------------------------------------------------------------------------
# admissibility assumptions
# ---------------------------------------------------------------------------

def check_assumption_A(X: PartitionedFtv) -> list:
    """Per-block check: support size >= 3, or the nontrivial part of the
    block is exactly (1,1).  Blocks must be in normal form: the nonzero part
    is 1,...,1 followed by the excess."""
    results = []
    for k, a in enumerate(X.blocks):
        nontrivial = [x for x in a if x != 0]
        m = len(nontrivial)
        delta = X.delta(k)
        if nontrivial != [1] * (m - 1) + [delta]:
            raise ValueError(f"block {k + 1} is not in normal form")
        results.append(m >= 3 or nontrivial == [1, 1])
    return results


# ---------------------------------------------------------------------------
# ordered dual fan matrix over P^n (block-juxtaposition column order)
# ---------------------------------------------------------------------------

def ordered_dual_fan_matrix(X: PartitionedFtv):
    """Dual fan matrix of a family over P^n with columns ordered block by
    block: for block k with degree d_k, the columns are the primitive
    reductions of d_k*e_i - a_k (i = 1..n) followed by -a_k, where a_k is
    truncated to the first n coordinates.

    This is the column order used by the shipped fixtures; the column
    multiset agrees with dual_fan_matrix (checked in tests).
    """
    n = shape(X.fan_matrix)[0]
    if X.fan_matrix != pn_fan_matrix(n):
        raise ValueError("ordered dual fan matrix requires the standard "
                         "projective-space fan matrix")
    cols = []
    origins = []
    for k, a in enumerate(X.blocks):
        d = X.d(k)
        ahat = a[:n]
        for i in range(n):
            v = [-x for x in ahat]
            v[i] += d
            cols.append(primitive(v))
            origins.append(k)
        cols.append(primitive([-x for x in ahat]) if any(ahat) else None)
        if cols[-1] is None:
            raise ValueError("block truncates to zero")
        origins.append(k)
    return from_columns(cols), origins


def indicator_blocks(origins, n_blocks):
    return [[1 if o == k else 0 for o in origins] for k in range(n_blocks)]


# ---------------------------------------------------------------------------
# admissible-W search
# ---------------------------------------------------------------------------

@dataclass
class AdmissibleW:
    column_list: tuple      # 1-based indices into the ordered dual fan matrix
    W: list
    q: list                 # weight vector (positive Gale row)
    torsion: list           # invariant factors of coker(W^T)
    c_blocks: list
    aug_det: int
    passes_C: bool


def _minor_vector(cols, n):
    """Signed maximal minors of the n x (n+1) matrix with the given columns:
    q_j = (-1)^j det(matrix without column j); a kernel vector."""
    out = []
    for j in range(n + 1):
        sub = from_columns([cols[t] for t in range(n + 1) if t != j])
        d = det(sub)
        out.append(d if j % 2 == 0 else -d)
    return out


def derived_c_value(w_col, v_cols):
    """Framing value of a W-column in the reverse direction: minus the
    minimal pairing against the base fan matrix columns."""
    return -min(sum(w * v for w, v in zip(w_col, vc)) for vc in v_cols)


def _evaluate_combo(base_cols, a_blocks, lam_cols, origins, b_blocks, combo):
    """Test one (n+1)-column subset; returns an AdmissibleW when it passes
    the weighted-projective test, else None."""
    n = len(lam_cols[0])
    wcols = [lam_cols[j] for j in combo]
    qv = _minor_vector(wcols, n)
    if all(x == 0 for x in qv):
        return None
    if any(x == 0 for x in qv):
        return None
    if qv[0] < 0:
        qv = [-x for x in qv]
    if any(x < 0 for x in qv):
        return None
    from math import gcd
    g = 0
    for x in qv:
        g = gcd(g, x)
    qv = [x // g for x in qv]
    W = from_columns(wcols)
    n_blocks = len(a_blocks)
    if b_blocks is not None:
        c_blocks = [[b_blocks[k][j] for j in combo] for k in range(n_blocks)]
    else:
        c_blocks = [[derived_c_value(wcols[t], base_cols)
                     if origins[combo[t]] == k else 0
                     for t in range(n + 1)] for k in range(n_blocks)]
    try:
        rev = f_dual_reverse(PartitionedFtv(W, c_blocks))
        passes = framed_equal_up_to_block_permutation(
            rev.fan_matrix, rev.blocks, from_columns(base_cols), a_blocks)
    except (DegenerateHullError, EmptyPolytopeError, UnboundedPolytopeError,
            ValueError):
        passes = False
    return AdmissibleW(
        column_list=tuple(j + 1 for j in combo),
        W=W,
        q=qv,
        torsion=invariant_factors(transpose(W)),
        c_blocks=c_blocks,
        aug_det=augmented_determinant(W),
        passes_C=passes,
    )


def _scan_chunk(args):
    base_cols, a_blocks, lam_cols, origins, b_blocks, combos = args
    out = []
    for combo in combos:
        res = _evaluate_combo(base_cols, a_blocks, lam_cols, origins,
                              b_blocks, combo)
        if res is not None:
            out.append(res)
    return out


def find_admissible_W(base: PartitionedFtv, lam, origins, b_blocks=None,
                      jobs=1):
    """Exhaustive scan of all (n+1)-column submatrices of the dual fan
    matrix; keeps those that are fan matrices of weighted-projective-space
    quotients, each annotated with whether its reverse dual returns the
    base.  Results ordered by column list."""
    n, ncols = shape(lam)
    lam_cols = columns(lam)
    base_cols = columns(base.fan_matrix)
    # the submatrix must respect the partition: block k contributes exactly
    # as many columns as the nontrivial width of the k-th framing block, so
    # that each restricted framing c_k is a framing block of the same
    # partitioned type as the base block it mirrors
    want = [sum(1 for x in b if x != 0) for b in base.blocks]
    combos = [c for c in combinations(range(ncols), n + 1)
              if [sum(1 for j in c if origins[j] == k)
                  for k in range(len(want))] == want]
    if jobs <= 1:
        results = _scan_chunk((base_cols, base.blocks, lam_cols, origins,
                               b_blocks, combos))
    else:
        chunk = (len(combos) + jobs - 1) // jobs
        tasks = [(base_cols, base.blocks, lam_cols, origins, b_blocks,
                  combos[i:i + chunk]) for i in range(0, len(combos), chunk)]
        results = []
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_scan_chunk, tasks):
                results.extend(part)
    results.sort(key=lambda r: r.column_list)
    return results


def admissible_from_columns(base, lam, origins, column_list, b_blocks=None):
    """Evaluate a single specified column list (1-based)."""
    combo = tuple(j - 1 for j in column_list)
    res = _evaluate_combo(columns(base.fan_matrix), base.blocks,
                          columns(lam), origins, b_blocks, combo)
    if res is None:
        raise ValueError("column list is not a weighted-projective-space "
                         "quotient fan matrix")
    return res


# ---------------------------------------------------------------------------
# mirror webs
# ---------------------------------------------------------------------------

@dataclass
class MirrorWeb:
    base: PartitionedFtv
    lam: list
    origins: list
    b_blocks: list
    chosen: AdmissibleW
    exceptional: tuple        # I^W, 1-based indices, sorted
    models: dict = field(default_factory=dict)

    def model(self, A):
        """Model for a subset A of the exceptional columns (1-based)."""
        A = tuple(sorted(A))
        if any(j not in self.exceptional for j in A):
            raise ValueError(f"subset {A} is not contained in the "
                             f"exceptional column set {self.exceptional}")
        key = subset_key(A)
        if key not in self.models:
            self.models[key] = build_model(self.lam, self.b_blocks,
                                           self.origins, A)
        return self.models[key]


def subset_key(A):
    return ",".join(str(j) for j in sorted(A))


def build_model(lam, b_blocks, origins, A):
    """Intermediate model: remove the 1-based columns A from the dual fan
    matrix and the corresponding entries from each dual framing block."""
    remove = set(A)
    keep = [j for j in range(shape(lam)[1]) if j + 1 not in remove]
    lam_a = from_columns([columns(lam)[j] for j in keep])
    blocks_a = [[b[j] for j in keep] for b in b_blocks]
    origins_a = [origins[j] for j in keep]
    return MirrorModel(lam_a, blocks_a, origins_a)


def build_web(base: PartitionedFtv, lam, origins, b_blocks,
              chosen: AdmissibleW, subsets=()):
    """Web of intermediate models for one admissible W.  ``subsets`` may be
    "all" (only when |I^W| <= 20), or an iterable of index subsets."""
    wset = set(chosen.column_list)
    exceptional = tuple(j for j in range(1, shape(lam)[1] + 1)
                        if j not in wset)
    web = MirrorWeb(base=base, lam=lam, origins=origins, b_blocks=b_blocks,
                    chosen=chosen, exceptional=exceptional)
    if subsets == "all":
        if len(exceptional) > 20:
            raise ValueError("exceptional set too large for eager "
                             "enumeration; request explicit subsets")
        subsets = [c for r in range(len(exceptional) + 1)
                   for c in combinations(exceptional, r)]
    for A in subsets:
        web.model(A)
    return web


def web_invariants(admissibles, web: MirrorWeb | None = None):
    """Summary invariants over a list of admissible W's (and optionally a
    built web): augmented-determinant multiset, torsion and anticanonical
    degree per W, and the number of stored models."""
    passing = [w for w in admissibles if w.passes_C]
    aug_multiset = {}
    for w in passing:
        aug_multiset[w.aug_det] = aug_multiset.get(w.aug_det, 0) + 1
    report = {
        "n_admissible_B": len(admissibles),
        "n_admissible_BC": len(passing),
        "aug_det_multiset": aug_multiset,
        "per_W": [{
            "columns": list(w.column_list),
            "q": list(w.q),
            "torsion": list(w.torsion),
            "aug_det": w.aug_det,
            "anticanonical_degree": sum(w.q),
            "passes_C": w.passes_C,
        } for w in admissibles],
    }
    if web is not None:
        report["n_models"] = len(web.models)
    return report


def mpcp_rays(M):
    """All nonzero primitive lattice points of conv(columns of M): the ray
    matrix of any maximal crepant subdivision."""
    return primitive_points_excluding_origin(convex_hull(columns(M)))


# ---------------------------------------------------------------------------
# fixture replay
# ---------------------------------------------------------------------------

def fixtures_dir():
    env = os.environ.get("MIRRORWEB_FIXTURES")
    if env:
        return Path(env)
    return Path(__file__).parent / "fixtures"


def load_fixture(name):
    with open(fixtures_dir() / name, encoding="utf-8") as fh:
        return json.load(fh)


def _compare_model_to_entry(model: MirrorModel, entry):
    """Compare a computed intermediate model against a fixture entry.
    Returns (ok, detail)."""
    got_polys = sorted(sorted(columns(M)) for M in model.exponent_matrices)
    want_polys = sorted(sorted(tuple(c) for c in block)
                        for block in entry["polynomials"])
    if got_polys != want_polys:
        return False, (f"exponent multiset mismatch: got {got_polys}, "
                       f"want {want_polys}")
    got_ideal = [list(g) for g in model.irrelevant_ideal.generators]
    want_ideal = [list(g) for g in entry["ideal"]]
    if got_ideal != want_ideal:
        if sorted(map(len, got_ideal)) == sorted(map(len, want_ideal)):
            return False, "ideal generator sets differ (possible variable permutation)"
        return False, f"ideal mismatch: got {got_ideal}, want {want_ideal}"
    return True, ""


def replay_intermediates(scenario_name, fixture_name):
    """Replay every fixture entry for a scenario: per entry, build the
    intermediate model and compare exponent multisets and ideals."""
    base = scenario(scenario_name)
    lam, origins = ordered_dual_fan_matrix(base)
    b_blocks = indicator_blocks(origins, len(base.blocks))
    fx = load_fixture(fixture_name)
    report = []
    for entry in fx["entries"]:
        model = build_model(lam, b_blocks, origins, entry["A"])
        ok, detail = _compare_model_to_entry(model, entry)
        report.append({"A": entry["A"], "ok": ok, "detail": detail})
    return report


def replay_ray_matrix(scenario_name, fixture_name):
    """Compare mpcp_rays of the scenario's dual fan matrix against the fixture
    matrix, as column multisets."""
    base = scenario(scenario_name)
    lam, _ = ordered_dual_fan_matrix(base)
    got = mpcp_rays(lam)
    want = load_fixture(fixture_name)["matrix"]
    ok = sorted(columns(got)) == sorted(tuple(c) for c in zip(*want))
    return [{"A": None, "ok": ok,
             "detail": "" if ok else
             f"ray matrix mismatch: {shape(got)} vs {len(want)}x{len(want[0])}"}]


def verify_appendix(which):
    which = which.upper()
    if which == "A":
        return replay_intermediates("y22", "y22_intermediate_models.json")
    if which == "B":
        return replay_ray_matrix("y33", "y33_mpcp_rays.json")
    if which == "C":
        return replay_intermediates("y33", "y33_intermediate_models.json")
    raise KeyError(f"unknown appendix {which!r}")
