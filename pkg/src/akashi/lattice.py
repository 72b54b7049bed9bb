"""Integer lattices: Smith normal form with transforms and finite subquotients.

Matrices are lists of rows of Python ints.
"""
from __future__ import annotations

from typing import List

IntMatrix = List[List[int]]


def eye(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: IntMatrix, B: IntMatrix) -> IntMatrix:
    if not A:
        return []
    inner = len(B)
    m = len(B[0]) if B else 0
    Bt = list(zip(*B)) if B else [() for _ in range(m)]
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] if inner else [0] * m for row in A]


def transpose(A: IntMatrix, ncols: int = 0) -> IntMatrix:
    if not A:
        return [[] for _ in range(ncols)]
    return [list(c) for c in zip(*A)]


def hstack(*mats: IntMatrix) -> IntMatrix:
    rows = max(len(m) for m in mats)
    return [sum((m[i] for m in mats if m), []) for i in range(rows)]


def smith(A: IntMatrix, nrows: int = None, ncols: int = None):
    """Return (diag, U, Uinv, V) with U A V = diag (as a matrix), U, V unimodular.

    diag is the list of diagonal entries (length min(rows, cols)), nonnegative,
    each dividing the next.
    """
    n = len(A) if nrows is None else nrows
    m = (len(A[0]) if A else 0) if ncols is None else ncols
    D = [list(r) for r in A] if A else [[0] * m for _ in range(n)]
    U, Uinv, V = eye(n), eye(n), eye(m)

    def row_add(i, j, c):  # row_i += c row_j
        if c == 0:
            return
        D[i] = [a + c * b for a, b in zip(D[i], D[j])]
        U[i] = [a + c * b for a, b in zip(U[i], U[j])]
        for r in Uinv:
            r[j] -= c * r[i]

    def row_swap(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]
        for r in Uinv:
            r[i], r[j] = r[j], r[i]

    def row_neg(i):
        D[i] = [-a for a in D[i]]
        U[i] = [-a for a in U[i]]
        for r in Uinv:
            r[i] = -r[i]

    def col_add(i, j, c):  # col_i += c col_j
        if c == 0:
            return
        for r in D:
            r[i] += c * r[j]
        for r in V:
            r[i] += c * r[j]

    def col_swap(i, j):
        for r in D:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    t = 0
    while t < min(n, m):
        # pivot: smallest nonzero |entry| in the remaining block
        best = None
        for i in range(t, n):
            for j in range(t, m):
                a = D[i][j]
                if a and (best is None or abs(a) < best[0]):
                    best = (abs(a), i, j)
        if best is None:
            break
        _, i, j = best
        row_swap(t, i)
        col_swap(t, j)
        while True:
            done = True
            piv = D[t][t]
            for i in range(t + 1, n):
                if D[i][t]:
                    q = D[i][t] // piv
                    row_add(i, t, -q)
                    if D[i][t]:
                        done = False
            for j in range(t + 1, m):
                if D[t][j]:
                    q = D[t][j] // piv
                    col_add(j, t, -q)
                    if D[t][j]:
                        done = False
            if done:
                # divisibility of the remaining block
                bad = next(
                    ((i, j) for i in range(t + 1, n) for j in range(t + 1, m) if D[i][j] % piv),
                    None,
                )
                if bad is None:
                    break
                row_add(t, bad[0], 1)
                continue
            # move the smallest entry of row/col t to the pivot
            best = (abs(D[t][t]), t, t)
            for i in range(t + 1, n):
                if D[i][t] and abs(D[i][t]) < best[0]:
                    best = (abs(D[i][t]), i, t)
            for j in range(t + 1, m):
                if D[t][j] and abs(D[t][j]) < best[0]:
                    best = (abs(D[t][j]), t, j)
            _, i, j = best
            row_swap(t, i)
            col_swap(t, j)
        if D[t][t] < 0:
            row_neg(t)
        t += 1
    diag = [D[i][i] for i in range(min(n, m))]
    return diag, U, Uinv, V


def kernel(A: IntMatrix, ncols: int) -> IntMatrix:
    """Z-basis of {x : A x = 0}, as columns of an ncols x r matrix."""
    n = len(A)
    diag, _, _, V = smith(A, n, ncols)
    rank = sum(1 for d in diag if d)
    return [row[rank:] for row in V]


def column_basis(G: IntMatrix, n: int) -> IntMatrix:
    """Z-basis (columns) of the lattice spanned by the columns of G in Z^n."""
    g = len(G[0]) if G and G[0] else 0
    if g == 0:
        return [[] for _ in range(n)]
    diag, _, Uinv, _ = smith(G, n, g)
    rank = sum(1 for d in diag if d)
    return [[Uinv[i][j] * diag[j] for j in range(rank)] for i in range(n)]


def solve_in_basis(B: IntMatrix, J: IntMatrix) -> IntMatrix:
    """Integral Y with B Y = J, B square of full rank; raises if not integral."""
    n = len(B)
    diag, U, _, V = smith(B, n, n)
    UJ = matmul(U, J)
    h = len(J[0]) if J and J[0] else 0
    Z = []
    for i in range(n):
        row = []
        for c in range(h):
            q, r = divmod(UJ[i][c], diag[i])
            if r:
                raise ValueError("vector not in lattice")
            row.append(q)
        Z.append(row)
    return matmul(V, Z) if h else [[] for _ in range(n)]


def subquotient(B: IntMatrix, J: IntMatrix, theta: IntMatrix = None):
    """Finite quotient (lattice spanned by basis B) / (lattice spanned by J).

    theta, if given, is an ambient endomorphism preserving both lattices.
    Returns (orders, theta_q, gens) with orders the nontrivial invariant
    factors, theta_q the induced action on the chosen generators, and gens the
    ambient coordinates (columns) of the generators.
    """
    n = len(B)
    a = len(B[0]) if n else 0
    if a == 0:
        return [], [], [[] for _ in range(n)]
    Y = solve_in_basis(B, J) if (J and J[0]) else [[] for _ in range(a)]
    h = len(Y[0]) if Y and Y[0] else 0
    diag, U2, U2inv, _ = smith(Y, a, h)
    diag = diag + [0] * (a - len(diag))
    keep = [i for i, d in enumerate(diag) if d != 1]
    if any(diag[i] == 0 for i in keep):
        raise ValueError("subquotient is infinite")
    orders = [diag[i] for i in keep]
    gens_B = [[U2inv[r][i] for i in keep] for r in range(a)]
    gens = matmul(B, gens_B)
    theta_q = []
    if theta is not None:
        TB = matmul(theta, B)
        X = solve_in_basis(B, TB)
        Xp = matmul(matmul(U2, X), U2inv)
        theta_q = [[Xp[i][j] % diag[i] for j in keep] for i in keep]
    return orders, theta_q, gens
