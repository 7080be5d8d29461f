"""Exact integer and rational linear algebra on plain Python ints.

Small dense matrices only (a few hundred rows); everything is exact.
Vectors are tuples of ints, matrices are lists of row lists.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd


def content(vec) -> int:
    g = 0
    for x in vec:
        g = gcd(g, x)
    return g


def primitive(vec) -> tuple[int, ...]:
    """Divide out the gcd of the entries (zero vector is returned as-is)."""
    g = content(vec)
    if g > 1:
        return tuple(x // g for x in vec)
    return tuple(vec)


def dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


def int_rank(rows) -> int:
    """Rank of an integer matrix, fraction-free elimination."""
    work = [list(r) for r in rows if any(r)]
    if not work:
        return 0
    ncols = len(work[0])
    rank = 0
    col = 0
    while work and col < ncols:
        piv = next((i for i, r in enumerate(work) if r[col]), None)
        if piv is None:
            col += 1
            continue
        pr = work.pop(piv)
        rank += 1
        pv = pr[col]
        nxt = []
        for r in work:
            if r[col]:
                g = gcd(pv, r[col])
                a, b = pv // g, r[col] // g
                r = [a * x - b * y for x, y in zip(r, pr)]
            if any(r):
                nxt.append(r)
        work = nxt
        col += 1
    return rank


def smith_normal_form(mat):
    """Return (U, D, V) with U @ mat @ V = D, U and V unimodular.

    D is diagonal (as a rectangular matrix) with nonnegative entries
    d_1 | d_2 | ... .  Pivoting on smallest absolute value keeps entries
    modest for the matrix sizes used here.
    """
    m = len(mat)
    n = len(mat[0]) if m else 0
    D = [list(r) for r in mat]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in D:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def addmul_row(i, j, q):
        D[i] = [a + q * b for a, b in zip(D[i], D[j])]
        U[i] = [a + q * b for a, b in zip(U[i], U[j])]

    def addmul_col(i, j, q):
        for r in D:
            r[i] += q * r[j]
        for r in V:
            r[i] += q * r[j]

    def clear_at(t):
        while True:
            piv = None
            for i in range(t, m):
                for j in range(t, n):
                    if D[i][j] and (piv is None
                                    or abs(D[i][j]) < abs(D[piv[0]][piv[1]])):
                        piv = (i, j)
            if piv is None:
                return False
            if piv != (t, t):
                swap_rows(t, piv[0])
                swap_cols(t, piv[1])
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    addmul_row(i, t, -(D[i][t] // D[t][t]))
                    if D[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if D[t][j]:
                    addmul_col(j, t, -(D[t][j] // D[t][t]))
                    if D[t][j]:
                        dirty = True
            if not dirty:
                return True

    t = 0
    while t < min(m, n):
        if not clear_at(t):
            break
        t += 1
    rank = t
    # enforce the divisibility chain
    changed = True
    while changed:
        changed = False
        for i in range(rank - 1):
            if D[i][i] and D[i + 1][i + 1] % D[i][i]:
                addmul_col(i, i + 1, 1)
                clear_at(i)
                changed = True
    for i in range(rank):
        if D[i][i] < 0:
            D[i] = [-x for x in D[i]]
            U[i] = [-x for x in U[i]]
    return U, D, V


def invariant_factors(mat) -> list[int]:
    """The nonzero diagonal entries of the Smith normal form."""
    _, D, _ = smith_normal_form(mat)
    out = []
    for i in range(min(len(D), len(D[0]) if D else 0)):
        if D[i][i]:
            out.append(D[i][i])
    return out


def kernel_basis(mat) -> list[tuple[int, ...]]:
    """Integer basis of {x : mat @ x = 0}; the kernel lattice is saturated."""
    m = len(mat)
    n = len(mat[0]) if m else 0
    if m == 0:
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]
    U, D, V = smith_normal_form(mat)
    rank = sum(1 for i in range(min(m, n)) if D[i][i])
    return [tuple(V[i][j] for i in range(n)) for j in range(rank, n)]


def saturated_span_basis(vectors) -> list[tuple[int, ...]]:
    """Lattice basis of span_Q(vectors) intersected with Z^d."""
    vecs = [list(v) for v in vectors if any(v)]
    if not vecs:
        return []
    comp = kernel_basis(vecs)  # integer basis of the orthogonal complement
    if not comp:
        d = len(vecs[0])
        return [tuple(int(i == j) for j in range(d)) for i in range(d)]
    return kernel_basis([list(c) for c in comp])


def solve_rational(columns, target):
    """Solve sum_j x_j * columns[j] = target over Q; None if inconsistent."""
    nrow = len(target)
    ncol = len(columns)
    aug = [[Fraction(columns[j][i]) for j in range(ncol)] + [Fraction(target[i])]
           for i in range(nrow)]
    pivots = []
    r = 0
    for c in range(ncol):
        pr = next((i for i in range(r, nrow) if aug[i][c]), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(nrow):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    for i in range(r, nrow):
        if aug[i][ncol]:
            return None
    x = [Fraction(0)] * ncol
    for i, c in enumerate(pivots):
        x[c] = aug[i][ncol]
    return x


def rational_matrix_inverse(mat):
    """Exact inverse of a square rational matrix; None if singular."""
    n = len(mat)
    aug = [[Fraction(mat[i][j]) for j in range(n)]
           + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        pr = next((i for i in range(c, n) if aug[i][c]), None)
        if pr is None:
            return None
        aug[c], aug[pr] = aug[pr], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]


def rational_det(mat) -> Fraction:
    n = len(mat)
    work = [[Fraction(x) for x in row] for row in mat]
    det = Fraction(1)
    for c in range(n):
        pr = next((i for i in range(c, n) if work[i][c]), None)
        if pr is None:
            return Fraction(0)
        if pr != c:
            work[c], work[pr] = work[pr], work[c]
            det = -det
        det *= work[c][c]
        pv = work[c][c]
        for i in range(c + 1, n):
            if work[i][c]:
                f = work[i][c] / pv
                work[i] = [a - f * b for a, b in zip(work[i], work[c])]
    return det
