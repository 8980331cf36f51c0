"""Complete simplicial-or-not fans spanned by polytopes with interior
origin, squarefree monomial ideals attached to them, and the recognition of
fan matrices of weighted-projective-space quotients."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from .lattice import (augmented_determinant, columns, from_columns, gale_dual,
                      invariant_factors, primitive, rank, shape, snf,
                      transpose, NotFanMatrixError)
from .polytopes import affine_rank, RatPolytope


class FanNotCompleteError(ValueError):
    pass


@dataclass
class SpannedFan:
    """Fan whose maximal cones are spanned by the facets of a polytope with
    the origin in its interior."""
    dim: int
    rays: list          # matrix n x N, columns = primitive ray generators
    max_cones: list     # list of sorted tuples of 0-based ray indices

    @property
    def n_rays(self):
        return shape(self.rays)[1]


def spanned_fan(P: RatPolytope) -> SpannedFan:
    """Fan over the facets of P (origin must be interior), with a
    completeness sanity check: every ridge of P lies on exactly two facets."""
    if not P.has_interior_origin():
        raise ValueError("origin is not interior to the polytope")
    n = P.dim
    facet_verts = []
    for normal, c in P.halfspaces:
        tight = [v for v in P.vertices
                 if sum(n_i * x_i for n_i, x_i in zip(normal, v)) == -c]
        facet_verts.append(tight)
    # completeness: each (n-2)-dimensional facet intersection is shared by
    # exactly two facets
    nf = len(facet_verts)
    ridge_count = {}
    for i in range(nf):
        si = set(facet_verts[i])
        for j in range(i + 1, nf):
            inter = [v for v in facet_verts[j] if v in si]
            if inter and affine_rank(inter) == n - 2:
                ridge_count[tuple(sorted(inter))] = \
                    ridge_count.get(tuple(sorted(inter)), 0) + 1
    if any(cnt != 1 for cnt in ridge_count.values()):
        raise FanNotCompleteError("a ridge is shared by more than two facets")
    ray_set = set()
    facet_rays = []
    for tight in facet_verts:
        rays = sorted({primitive(_clear(v)) for v in tight}, reverse=True)
        facet_rays.append(rays)
        ray_set.update(rays)
    ray_list = sorted(ray_set, reverse=True)
    index = {r: i for i, r in enumerate(ray_list)}
    cones = sorted({tuple(sorted(index[r] for r in rays)) for rays in facet_rays})
    return SpannedFan(dim=n, rays=from_columns(ray_list), max_cones=cones)


def _clear(v):
    """Scale a rational vector to integers."""
    den = 1
    for x in v:
        d = x.denominator
        den = den * d // gcd(den, d)
    return tuple(int(x * den) for x in v)


@dataclass
class MonomialIdeal:
    """Squarefree monomial ideal, generators as sorted tuples of 1-based
    variable indices, the generator list itself sorted."""
    n_vars: int
    generators: list

    def __str__(self):
        return ", ".join(
            "*".join(f"x{i}" for i in g) for g in self.generators)


def _minimalize(gens):
    gens = sorted(set(gens), key=lambda g: (len(g), g))
    out = []
    for g in gens:
        gs = set(g)
        if not any(set(h) <= gs for h in out):
            out.append(g)
    return sorted(out)


def irrelevant_ideal(fan: SpannedFan) -> MonomialIdeal:
    """For each maximal cone, the squarefree monomial in the variables of the
    rays outside the cone; generators minimalised by divisibility."""
    N = fan.n_rays
    gens = []
    for cone in fan.max_cones:
        inside = set(cone)
        gens.append(tuple(sorted(i + 1 for i in range(N) if i not in inside)))
    return MonomialIdeal(n_vars=N, generators=_minimalize(gens))


def unstable_components(ideal: MonomialIdeal) -> list:
    """Minimal primes of a squarefree monomial ideal, i.e. the minimal
    hitting sets of its generators; each component is a sorted tuple of
    1-based variable indices, the list sorted."""
    gens = [frozenset(g) for g in ideal.generators]
    if not gens:
        return []
    results = set()

    def rec(i, chosen):
        if i == len(gens):
            results.add(frozenset(chosen))
            return
        if gens[i] & chosen:
            rec(i + 1, chosen)
            return
        for v in sorted(gens[i]):
            rec(i + 1, chosen | {v})

    rec(0, frozenset())
    minimal = [s for s in results if not any(t < s for t in results)]
    return sorted(tuple(sorted(s)) for s in minimal)


@dataclass
class WpsQuotient:
    """Result of testing whether an n x (n+1) matrix is the fan matrix of a
    finite quotient of a weighted projective space."""
    accepted: bool
    reason: str = ""
    weights: list = field(default_factory=list)   # the positive Gale row
    torsion: list = field(default_factory=list)   # invariant factors > 1
    aug_det: int = 0


def is_fan_matrix_of_wps_quotient(W) -> WpsQuotient:
    n, c = shape(W)
    if c != n + 1:
        return WpsQuotient(False, f"expected n x (n+1) matrix, got {n}x{c}")
    if rank(W) != n:
        return WpsQuotient(False, "matrix does not have full row rank")
    Q = gale_dual(W)
    q = Q[0]
    if any(x <= 0 for x in q):
        return WpsQuotient(False, "relation vector is not strictly positive")
    return WpsQuotient(True, weights=list(q),
                       torsion=invariant_factors(transpose(W)),
                       aug_det=augmented_determinant(W))
