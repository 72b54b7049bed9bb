"""Exact polynomials and polynomial matrices over Z[T].

Polynomials use sympy's dense univariate representation (coefficient list,
highest degree first, no leading zeros; [] is zero). Everything here is exact
integer arithmetic; p-adic reduction happens only when results are turned into
characteristic elements.
"""
from __future__ import annotations

from itertools import combinations
from math import gcd as igcd
from typing import List, Optional, Sequence, Tuple

from sympy.polys.densearith import (
    dup_add,
    dup_exquo,
    dup_mul,
    dup_mul_ground,
    dup_neg,
    dup_sub,
    dup_exquo_ground,
)
from sympy.polys.densebasic import dup_strip
from sympy.polys.densetools import dup_compose
from sympy.polys.domains import ZZ
from sympy.polys.euclidtools import dup_gcd

from .padic import vp

Poly = list
Matrix = List[List[list]]

ZERO: Poly = []
ONE: Poly = [ZZ(1)]


def from_ascending(coeffs: Sequence[int]) -> Poly:
    return dup_strip([ZZ(int(c)) for c in reversed(list(coeffs))])


def to_ascending(f: Poly) -> List[int]:
    return [int(c) for c in reversed(f)]


def const(c: int) -> Poly:
    return dup_strip([ZZ(int(c))])


def add(f: Poly, g: Poly) -> Poly:
    return dup_add(f, g, ZZ)


def sub(f: Poly, g: Poly) -> Poly:
    return dup_sub(f, g, ZZ)


def mul(f: Poly, g: Poly) -> Poly:
    return dup_mul(f, g, ZZ)


def neg(f: Poly) -> Poly:
    return dup_neg(f, ZZ)


def scale(f: Poly, c: int) -> Poly:
    return dup_mul_ground(f, ZZ(c), ZZ)


def exquo(f: Poly, g: Poly) -> Poly:
    return dup_exquo(f, g, ZZ)


def compose(f: Poly, g: Poly) -> Poly:
    """f(g(T))."""
    return dup_compose(f, g, ZZ)


def constant_term(f: Poly) -> int:
    return int(f[-1]) if f else 0


def content(f: Poly) -> int:
    c = 0
    for a in f:
        c = igcd(c, int(a))
    return c


def content_valuation(f: Poly, p: int) -> Optional[int]:
    """min_i v_p(a_i), i.e. the mu-invariant of f as an element of Z_p[[T]]."""
    c = content(f)
    return None if c == 0 else vp(c, p)


def is_lambda_unit(f: Poly, p: int) -> bool:
    """Polynomials with constant term prime to p are units of Z_p[[T]]."""
    return constant_term(f) % p != 0


def weierstrass_degree(f: Poly, p: int) -> int:
    """Index of the first coefficient of minimal valuation (lambda-invariant)."""
    mu = content_valuation(f, p)
    pm = p ** mu
    for i, a in enumerate(to_ascending(f)):
        if (a // pm) % p != 0:
            return i
    raise AssertionError("unreachable for nonzero f")


def gcd(f: Poly, g: Poly) -> Poly:
    return dup_gcd(f, g, ZZ)


def shift_one_plus_t_power(e: int) -> Poly:
    """(1+T)^e - 1."""
    out = ONE
    base = [ZZ(1), ZZ(1)]
    k = e
    while k:
        if k & 1:
            out = mul(out, base)
        base = mul(base, base)
        k >>= 1
    return sub(out, ONE)


# --- matrices -----------------------------------------------------------

def mat_copy(A: Matrix) -> Matrix:
    return [list(row) for row in A]


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    n = len(A)
    m = len(B[0]) if B else 0
    inner = len(B)
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = ZERO
            for t in range(inner):
                if A[i][t] and B[t][j]:
                    acc = add(acc, mul(A[i][t], B[t][j]))
            row.append(acc)
        out.append(row)
    return out


def mat_sub(A: Matrix, B: Matrix) -> Matrix:
    return [[sub(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_eq(A: Matrix, B: Matrix) -> bool:
    return len(A) == len(B) and all(
        len(ra) == len(rb) and all(a == b for a, b in zip(ra, rb)) for ra, rb in zip(A, B)
    )


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def zeros(n: int, m: int) -> Matrix:
    return [[ZERO for _ in range(m)] for _ in range(n)]


def det(A: Matrix) -> Poly:
    """Fraction-free (Bareiss) determinant."""
    n = len(A)
    if n == 0:
        return ONE
    M = mat_copy(A)
    sign = 1
    prev = ONE
    for i in range(n - 1):
        if not M[i][i]:
            swap = next((j for j in range(i + 1, n) if M[j][i]), None)
            if swap is None:
                return ZERO
            M[i], M[swap] = M[swap], M[i]
            sign = -sign
        piv = M[i][i]
        for j in range(i + 1, n):
            mji = M[j][i]
            for k in range(i + 1, n):
                M[j][k] = exquo(sub(mul(M[j][k], piv), mul(mji, M[i][k])), prev)
        prev = piv
    d = M[n - 1][n - 1]
    return d if sign > 0 else neg(d)


def rank(A: Matrix) -> int:
    """Rank over Q(T) by fraction-free elimination."""
    M = mat_copy(A)
    rows = len(M)
    cols = len(M[0]) if rows else 0
    r = 0
    prev = ONE
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        pv = M[r][c]
        for i in range(r + 1, rows):
            mic = M[i][c]
            for k in range(c, cols):
                M[i][k] = exquo(sub(mul(M[i][k], pv), mul(mic, M[r][k])), prev)
        prev = pv
        r += 1
        if r == rows:
            break
    return r


def _row_normalize(row: List[Poly], p: int) -> List[Poly]:
    """Divide a row by the p-free part of its integer content (a unit op)."""
    c = 0
    for a in row:
        c = igcd(c, content(a))
    if c <= 1:
        return row
    while c % p == 0:
        c //= p
    if c == 1:
        return row
    return [dup_exquo_ground(a, ZZ(c), ZZ) if a else a for a in row]


def eliminate_units(A: Matrix, p: int) -> Tuple[Matrix, int]:
    """Strip pivots that are units of Z_p[[T]].

    Returns (A', s) where A ~ diag(u_1..u_s, A') by invertible row and column
    operations over Z_(p)[T] localised at (p, T); hence Delta_r(A) and
    Delta_{r-s}(A') agree up to a unit.
    """
    M = [_row_normalize(list(row), p) for row in A]
    stripped = 0
    while True:
        hit = None
        best = None
        for i, row in enumerate(M):
            for j, a in enumerate(row):
                if a and is_lambda_unit(a, p):
                    size = len(a)
                    if best is None or size < best:
                        hit, best = (i, j), size
                        if size == 1:
                            break
            if best == 1:
                break
        if hit is None:
            return M, stripped
        i, j = hit
        piv = M[i][j]
        prow = M[i]
        newM = []
        for r, row in enumerate(M):
            if r == i:
                continue
            a = row[j]
            if a:
                row = [sub(mul(x, piv), mul(a, y)) for x, y in zip(row, prow)]
                row = _row_normalize(row, p)
            newM.append(row[:j] + row[j + 1:])
        M = newM
        stripped += 1
        if not M or not M[0]:
            return M, stripped


def lambda_gcd(polys, p: int, early_exit: bool = True) -> Tuple[Optional[int], Poly]:
    """gcd in Z_p[[T]] of polynomials in Z[T].

    Returned as (mu, g): mu = min content valuation and g the primitive Q[T]-gcd;
    the Lambda-gcd is p^mu times the distinguished part of g. (None, []) if all
    inputs are zero.
    """
    mu = None
    g: Poly = ZERO
    for f in polys:
        if not f:
            continue
        v = content_valuation(f, p)
        mu = v if mu is None else min(mu, v)
        g = gcd(g, f) if g else dup_exquo_ground(f, ZZ(content(f)), ZZ)
        if early_exit and mu == 0 and is_lambda_unit(g, p):
            break
    return mu, g


def minors(A: Matrix, r: int):
    rows = len(A)
    cols = len(A[0]) if rows else 0
    for rs in combinations(range(rows), r):
        for cs in combinations(range(cols), r):
            yield det([[A[i][j] for j in cs] for i in rs])


def gcd_of_minors(A: Matrix, r: int, p: int) -> Tuple[Optional[int], Poly]:
    """Lambda-gcd of the r x r minors of A, after stripping unit pivots."""
    if r == 0:
        return 0, ONE
    R, s = eliminate_units(A, p)
    r -= s
    if r == 0:
        return 0, ONE
    return lambda_gcd(minors(R, r), p)
