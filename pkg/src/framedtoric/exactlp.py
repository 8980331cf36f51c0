"""Exact rational linear algebra over fractions.Fraction: linear solves,
rank, and a phase-I simplex used for feasibility questions (point-in-hull,
cone membership)."""

from __future__ import annotations

from fractions import Fraction


def qmat(A):
    return [[Fraction(x) for x in row] for row in A]


def rank_q(A):
    if not A or not A[0]:
        return 0
    M = qmat(A)
    m, n = len(M), len(M[0])
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, m):
            if M[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(m):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        r += 1
        if r == m:
            break
    return r


def solve_unique(A, b):
    """Solve the square system A x = b exactly; returns the solution as a
    list of Fractions, or None if A is singular."""
    n = len(A)
    M = [[Fraction(A[i][j]) for j in range(n)] + [Fraction(b[i])] for i in range(n)]
    for c in range(n):
        piv = None
        for i in range(c, n):
            if M[i][c] != 0:
                piv = i
                break
        if piv is None:
            return None
        M[c], M[piv] = M[piv], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for i in range(n):
            if i != c and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b_ for a, b_ in zip(M[i], M[c])]
    return [M[i][n] for i in range(n)]


def nullspace_q(A):
    """Rational nullspace basis of A (list of Fraction vectors)."""
    if not A:
        return []
    M = qmat(A)
    m, n = len(M), len(M[0])
    pivots = []
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, m):
            if M[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(m):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -M[i][fc]
        basis.append(v)
    return basis


def feasible_nonneg(A, b):
    """Whether {x >= 0 : A x = b} is nonempty, via a phase-I simplex with
    Bland's rule.  A is m x n (ints or Fractions), b length m."""
    m = len(A)
    if m == 0:
        return True
    n = len(A[0]) if A else 0
    # tableau rows: [x_1..x_n, artificials, rhs]; make rhs nonnegative first
    T = []
    for i in range(m):
        row = [Fraction(x) for x in A[i]]
        rhs = Fraction(b[i])
        if rhs < 0:
            row = [-x for x in row]
            rhs = -rhs
        T.append(row + [Fraction(0)] * m + [rhs])
    for i in range(m):
        T[i][n + i] = Fraction(1)
    basis = [n + i for i in range(m)]
    total = n + m
    # objective: minimise sum of artificials; cost row z = sum of basic rows
    z = [Fraction(0)] * (total + 1)
    for i in range(m):
        for k in range(total + 1):
            z[k] += T[i][k]
    for j in range(n, total):
        z[j] -= Fraction(1)  # reduced costs of artificials themselves
    # ``z`` now holds reduced costs (positive entry => entering improves)
    while True:
        enter = None
        for j in range(total):
            if z[j] > 0:
                enter = j
                break
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            if T[i][enter] > 0:
                ratio = T[i][total] / T[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            # phase-I objective is bounded below by 0, so this cannot happen
            raise RuntimeError("unbounded phase-I simplex")
        piv = T[leave][enter]
        T[leave] = [x / piv for x in T[leave]]
        for i in range(m):
            if i != leave and T[i][enter] != 0:
                f = T[i][enter]
                T[i] = [a - f * c for a, c in zip(T[i], T[leave])]
        f = z[enter]
        z = [a - f * c for a, c in zip(z, T[leave])]
        basis[leave] = enter
    obj = sum(T[i][total] for i in range(m) if basis[i] >= n)
    return obj == 0


class UnboundedLP(ValueError):
    pass


class InfeasibleLP(ValueError):
    pass


def simplex_max(c, A, b):
    """Maximise c.y subject to A y = b, y >= 0, exactly (two-phase simplex
    with Bland's rule).  Returns (optimal value, optimal y)."""
    m = len(A)
    n = len(A[0]) if A else len(c)
    T = []
    for i in range(m):
        row = [Fraction(x) for x in A[i]]
        rhs = Fraction(b[i])
        if rhs < 0:
            row = [-x for x in row]
            rhs = -rhs
        T.append(row + [Fraction(0)] * m + [rhs])
    for i in range(m):
        T[i][n + i] = Fraction(1)
    basis = [n + i for i in range(m)]
    total = n + m

    def pivot(leave, enter):
        piv = T[leave][enter]
        T[leave] = [x / piv for x in T[leave]]
        for i in range(m):
            if i != leave and T[i][enter] != 0:
                f = T[i][enter]
                T[i] = [a - f * v for a, v in zip(T[i], T[leave])]
        basis[leave] = enter

    def run(z, allowed):
        """Maximise with reduced-cost row z over the allowed columns."""
        while True:
            enter = next((j for j in range(allowed) if z[j] > 0), None)
            if enter is None:
                return z
            leave = None
            best = None
            for i in range(m):
                if T[i][enter] > 0:
                    ratio = T[i][total] / T[i][enter]
                    if (best is None or ratio < best or
                            (ratio == best and basis[i] < basis[leave])):
                        best = ratio
                        leave = i
            if leave is None:
                raise UnboundedLP("objective is unbounded above")
            f = z[enter]
            pivot(leave, enter)
            z[:] = [a - f * v for a, v in zip(z, T[leave])]

    # phase I: maximise -(sum of artificials)
    z = [Fraction(0)] * (total + 1)
    for i in range(m):
        for k in range(total + 1):
            z[k] += T[i][k]
    for j in range(n, total):
        z[j] -= Fraction(1)
    run(z, total)
    if any(T[i][total] != 0 for i in range(m) if basis[i] >= n):
        raise InfeasibleLP("constraint system is infeasible")
    # drive any degenerate artificials out of the basis
    for i in range(m):
        if basis[i] >= n:
            enter = next((j for j in range(n) if T[i][j] != 0), None)
            if enter is not None:
                pivot(i, enter)
    # phase II on the real objective
    z = [Fraction(x) for x in c] + [Fraction(0)] * (m + 1)
    for i in range(m):
        if basis[i] < n and z[basis[i]] != 0:
            f = z[basis[i]]
            z = [a - f * v for a, v in zip(z, T[i])]
    run(z, n)
    y = [Fraction(0)] * n
    for i in range(m):
        if basis[i] < n:
            y[basis[i]] = T[i][total]
    return -z[total], y


def max_over_halfspaces(obj, halfspaces, dim):
    """Maximise obj.x over {x : <n, x> >= -c for (n, c) in halfspaces},
    with x free.  Returns the exact optimal value."""
    # x = u - w with u, w >= 0; slack s >= 0 turns <n,x> >= -c into
    # <n,u> - <n,w> - s = -c
    A = []
    b = []
    for n_vec, c_off in halfspaces:
        row = ([Fraction(x) for x in n_vec] +
               [Fraction(-x) for x in n_vec] +
               [Fraction(0)] * len(halfspaces))
        A.append(row)
        b.append(Fraction(-c_off))
    for i in range(len(halfspaces)):
        A[i][2 * dim + i] = Fraction(-1)
    c_row = ([Fraction(x) for x in obj] + [Fraction(-x) for x in obj] +
             [Fraction(0)] * len(halfspaces))
    value, _ = simplex_max(c_row, A, b)
    return value


def in_convex_hull(p, points):
    """Whether p lies in the convex hull of ``points`` (all exact vectors)."""
    if not points:
        return False
    d = len(p)
    A = [[Fraction(q[i]) for q in points] for i in range(d)]
    A.append([Fraction(1)] * len(points))
    b = [Fraction(x) for x in p] + [Fraction(1)]
    return feasible_nonneg(A, b)


def in_cone(p, generators):
    """Whether p lies in the cone spanned by ``generators``."""
    if not generators:
        return all(x == 0 for x in p)
    d = len(p)
    A = [[Fraction(g[i]) for g in generators] for i in range(d)]
    b = [Fraction(x) for x in p]
    return feasible_nonneg(A, b)
