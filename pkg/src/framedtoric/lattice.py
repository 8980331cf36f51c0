"""Exact integer linear algebra: Hermite/Smith normal forms, Gale duals,
class groups of fan matrices, and assorted small helpers.

All matrices are plain lists of lists of Python ints (row-major).  Everything
is exact; there is no floating point anywhere in this package.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd


# ---------------------------------------------------------------------------
# basic matrix helpers
# ---------------------------------------------------------------------------

def shape(A):
    return len(A), (len(A[0]) if A else 0)


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(m, n):
    return [[0] * n for _ in range(m)]


def transpose(A):
    return [list(row) for row in zip(*A)] if A else []


def matmul(A, B):
    m, k = shape(A)
    k2, n = shape(B)
    if k != k2:
        raise ValueError(f"shape mismatch: {m}x{k} times {k2}x{n}")
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def mat_copy(A):
    return [list(row) for row in A]


def mat_eq(A, B):
    return A == B


def columns(A):
    """Columns of A as a list of tuples."""
    return [tuple(row[j] for row in A) for j in range(shape(A)[1])]


def from_columns(cols):
    """Matrix whose columns are the given vectors."""
    if not cols:
        return []
    return [[c[i] for c in cols] for i in range(len(cols[0]))]


def vec_gcd(v):
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def primitive(v):
    """Primitive integer vector on the same ray as v (v must be nonzero)."""
    g = vec_gcd(v)
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return tuple(x // g for x in v)


# ---------------------------------------------------------------------------
# determinant and rank (fraction-free Bareiss)
# ---------------------------------------------------------------------------

def det(A):
    m, n = shape(A)
    if m != n:
        raise ValueError("determinant of non-square matrix")
    if n == 0:
        return 1
    M = mat_copy(A)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def rank(A):
    m, n = shape(A)
    if m == 0 or n == 0:
        return 0
    M = mat_copy(A)
    r = 0
    prev = 1
    for c in range(n):
        piv = None
        for i in range(r, m):
            if M[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        for i in range(r + 1, m):
            for j in range(c + 1, n):
                M[i][j] = (M[i][j] * M[r][c] - M[i][c] * M[r][j]) // prev
            M[i][c] = 0
        prev = M[r][c]
        r += 1
        if r == m:
            break
    return r


# ---------------------------------------------------------------------------
# Hermite normal form
# ---------------------------------------------------------------------------

@dataclass
class HNFResult:
    H: list          # column-style HNF of A:  A @ U == H
    U: list          # unimodular transform
    pivots: list     # (row, col) of each pivot


def _col_swap(M, i, j):
    for row in M:
        row[i], row[j] = row[j], row[i]


def _col_addmul(M, dst, src, q):
    """column dst += q * column src"""
    if q == 0:
        return
    for row in M:
        row[dst] += q * row[src]


def _col_neg(M, j):
    for row in M:
        row[j] = -row[j]


def hnf(A):
    """Column-style Hermite normal form.

    Returns HNFResult(H, U, pivots) with A @ U == H, U unimodular,
    H lower-echelon by columns: pivot entries positive, entries to the left
    of a pivot (in its row) reduced into [0, pivot), zero columns at the end.
    """
    m, n = shape(A)
    H = mat_copy(A)
    U = identity(n)
    c = 0
    pivots = []
    for i in range(m):
        if c >= n:
            break
        # clear row i among columns >= c down to a single nonzero entry
        while True:
            nz = [j for j in range(c, n) if H[i][j] != 0]
            if len(nz) <= 1:
                break
            # pick the column with smallest |entry| and reduce the others
            jmin = min(nz, key=lambda j: abs(H[i][j]))
            for j in nz:
                if j == jmin:
                    continue
                q = H[i][j] // H[i][jmin]
                _col_addmul(H, j, jmin, -q)
                _col_addmul(U, j, jmin, -q)
        nz = [j for j in range(c, n) if H[i][j] != 0]
        if not nz:
            continue
        j = nz[0]
        if j != c:
            _col_swap(H, c, j)
            _col_swap(U, c, j)
        if H[i][c] < 0:
            _col_neg(H, c)
            _col_neg(U, c)
        piv = H[i][c]
        for j in range(c):
            q = H[i][j] // piv
            _col_addmul(H, j, c, -q)
            _col_addmul(U, j, c, -q)
        pivots.append((i, c))
        c += 1
    return HNFResult(H=H, U=U, pivots=pivots)


def row_hnf(A):
    """Row-style Hermite normal form of A (pivots positive, entries below a
    pivot zero, entries above reduced into [0, pivot)); returns just H."""
    res = hnf(transpose(A))
    return transpose(res.H)


def kernel_basis(A):
    """Basis (list of column vectors, as tuples) of the saturated integer
    kernel {x in Z^n : A x = 0}."""
    res = hnf(A)
    n = shape(A)[1]
    pivot_cols = {c for (_, c) in res.pivots}
    zero_cols = [j for j in range(n) if j not in pivot_cols]
    Ucols = columns(res.U)
    return [Ucols[j] for j in zero_cols]


def row_lattices_equal(A, B):
    """Whether two integer matrices have the same row lattice."""
    return row_hnf(A) == row_hnf(B)


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

@dataclass
class SNFResult:
    S: list   # diagonal, nonnegative, divisibility chain;  S == U @ A @ W
    U: list
    W: list


def _row_swap(M, i, j):
    M[i], M[j] = M[j], M[i]


def _row_addmul(M, dst, src, q):
    if q == 0:
        return
    row_s = M[src]
    row_d = M[dst]
    for k in range(len(row_d)):
        row_d[k] += q * row_s[k]


def _row_neg(M, i):
    M[i] = [-x for x in M[i]]


def snf(A):
    """Smith normal form with transforms: S = U @ A @ W, U and W unimodular,
    S diagonal with s_1 | s_2 | ... and all s_i >= 0."""
    m, n = shape(A)
    S = mat_copy(A)
    U = identity(m)
    W = identity(n)

    def find_pivot(t):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if S[i][j] != 0 and (best is None or abs(S[i][j]) < abs(S[best[0]][best[1]])):
                    best = (i, j)
        return best

    t = 0
    while True:
        pos = find_pivot(t)
        if pos is None:
            break
        i, j = pos
        if i != t:
            _row_swap(S, t, i)
            _row_swap(U, t, i)
        if j != t:
            _col_swap(S, t, j)
            _col_swap(W, t, j)
        # eliminate row and column t
        while True:
            done = True
            for i in range(t + 1, m):
                if S[i][t] != 0:
                    q = S[i][t] // S[t][t]
                    _row_addmul(S, i, t, -q)
                    _row_addmul(U, i, t, -q)
                    if S[i][t] != 0:
                        _row_swap(S, t, i)
                        _row_swap(U, t, i)
                        done = False
            for j in range(t + 1, n):
                if S[t][j] != 0:
                    q = S[t][j] // S[t][t]
                    _col_addmul(S, j, t, -q)
                    _col_addmul(W, j, t, -q)
                    if S[t][j] != 0:
                        _col_swap(S, t, j)
                        _col_swap(W, t, j)
                        done = False
            if done:
                break
        # make sure the pivot divides every remaining entry
        piv = S[t][t]
        bad = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if S[i][j] % piv != 0:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            _row_addmul(S, t, bad, 1)
            _row_addmul(U, t, bad, 1)
            continue  # redo elimination at the same t
        if S[t][t] < 0:
            _row_neg(S, t)
            _row_neg(U, t)
        t += 1
        if t == m or t == n:
            break
    return SNFResult(S=S, U=U, W=W)


def invariant_factors(A):
    """Nontrivial (> 1) diagonal entries of the Smith normal form."""
    S = snf(A).S
    m, n = shape(A)
    out = []
    for i in range(min(m, n)):
        if S[i][i] > 1:
            out.append(S[i][i])
    return out


# ---------------------------------------------------------------------------
# Gale duality and class groups of fan matrices
# ---------------------------------------------------------------------------

class NotFanMatrixError(ValueError):
    """Raised when a matrix does not have full row rank (so its columns do
    not span the ambient lattice over Q)."""


def gale_dual(V):
    """Canonical Gale dual of a full-row-rank n x (n+r) integer matrix.

    Returns the r x (n+r) matrix Q whose rows are a basis of the saturated
    lattice of integer linear relations among the columns of V, normalised
    to row Hermite normal form.
    """
    n, npr = shape(V)
    if rank(V) != n:
        raise NotFanMatrixError(f"matrix {n}x{npr} does not have full row rank")
    ker = kernel_basis(V)
    if len(ker) != npr - n:
        raise NotFanMatrixError("unexpected kernel dimension")
    if not ker:
        return []
    Q = row_hnf([list(v) for v in ker])
    return Q


@dataclass
class ClassGroup:
    free_rank: int
    invariant_factors: list   # nontrivial invariant factors, ascending
    weight_matrix: list       # Gale dual Q (free part of the grading)
    torsion_matrix: list      # one row per invariant factor (mod that factor)

    def __str__(self):
        parts = ["Z^%d" % self.free_rank] if self.free_rank else []
        parts += ["Z/%d" % f for f in self.invariant_factors]
        return " x ".join(parts) if parts else "0"


def class_group(V):
    """Class group of the toric variety with fan matrix V: the cokernel of
    the transpose V^T acting on the lattice of torus-invariant divisors."""
    n, npr = shape(V)
    Q = gale_dual(V)
    res = snf(transpose(V))
    facs = []
    trows = []
    for i in range(min(npr, n)):
        s = res.S[i][i]
        if s > 1:
            facs.append(s)
            trows.append([x % s for x in res.U[i]])
    return ClassGroup(free_rank=npr - n, invariant_factors=facs,
                      weight_matrix=Q, torsion_matrix=trows)


def augmented_determinant(W):
    """Absolute determinant of the n x (n+1) matrix W with the extra bottom
    row (0, ..., 0, 1) appended."""
    n, c = shape(W)
    if c != n + 1:
        raise ValueError("augmented determinant needs an n x (n+1) matrix")
    aug = [list(row) for row in W] + [[0] * n + [1]]
    return abs(det(aug))
