"""Koszul homology for commuting actions of H = Z_p^d and the Akashi series.

Presentation bases are handled exactly over Z[T]: with M = coker(P) and P
injective, K(M) is quasi-isomorphic to the cone of K(F_1) -> K(F_0), and the
characteristic element of each homology group is the Lambda-gcd of the maximal
minors of the next cone differential.  Finite-form bases (and the truncated
view of any presentation) go through integer Smith forms.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import List, Optional, Sequence, Tuple, Union

from sympy.polys.polyerrors import ExactQuotientFailed

from . import lattice, zpoly
from .errors import ActionMismatch, CertificateError, NotExact, NotTorsionAtPrecision, PrecisionMismatch
from .modules import (
    FiniteFormModule,
    PresentationModule,
    char_from_minors,
    char_of_finite_form,
    exact_matrix,
    flatten_series_matrix,
    truncation_lattice,
    zpoly_to_series,
)
from .series import CharElement, LambdaSeries, leading_term_at_zero, ord_at_zero

Base = Union[PresentationModule, FiniteFormModule]


# --- the Sigma-module ----------------------------------------------------------

@dataclass(frozen=True)
class SigmaModule:
    """A base module with d commuting automorphisms h_1..h_d.

    Presentation bases: ``actions`` are k x k matrices of LambdaSeries and
    ``action_lifts`` the matching m x m matrices Q_i with h_i P = P Q_i; lifts
    are derived automatically for square P or scalar actions.  Finite bases:
    ``actions`` are k x k integer matrices.
    """

    base: Base
    actions: Tuple = ()
    action_lifts: Tuple = ()

    @property
    def d(self) -> int:
        return len(self.actions)

    @property
    def p(self) -> int:
        return self.base.p

    @property
    def N(self) -> int:
        return self.base.N

    @classmethod
    def build(cls, base: Base, actions: Sequence = (), action_lifts: Optional[Sequence] = None) -> "SigmaModule":
        if isinstance(base, FiniteFormModule):
            acts = tuple(tuple(tuple(int(x) for x in row) for row in A) for A in actions)
            M = cls(base, acts, ())
            _check_finite_actions(M)
            return M
        acts = tuple(_as_series_matrix(A, base) for A in actions)
        if action_lifts is None:
            lifts = tuple(_derive_lift(base, A) for A in acts)
        else:
            lifts = tuple(_as_series_matrix(Q, base) for Q in action_lifts)
        M = cls(base, acts, lifts)
        _check_presentation_actions(M)
        return M

    @classmethod
    def trivial(cls, base: Base, d: int) -> "SigmaModule":
        if isinstance(base, FiniteFormModule):
            return cls.build(base, [lattice.eye(base.k)] * d)
        one_k = _series_identity(base, base.k)
        one_m = _series_identity(base, base.m)
        return cls.build(base, [one_k] * d, [one_m] * d)


def _series_identity(base: PresentationModule, n: int):
    z = LambdaSeries(base.p, base.N, base.D)
    o = LambdaSeries(base.p, base.N, base.D, [1])
    return tuple(tuple(o if i == j else z for j in range(n)) for i in range(n))


def _as_series_matrix(A, base: PresentationModule):
    out = []
    for row in A:
        r = []
        for a in row:
            if isinstance(a, LambdaSeries):
                if (a.p, a.N) != (base.p, base.N):
                    raise PrecisionMismatch("action entries disagree with the base")
                r.append(a)
            elif isinstance(a, int):
                r.append(LambdaSeries(base.p, base.N, base.D, [a]))
            else:
                r.append(LambdaSeries(base.p, base.N, base.D, list(a)))
        out.append(tuple(r))
    return tuple(out)


def _is_scalar(A) -> Optional[LambdaSeries]:
    n = len(A)
    c = A[0][0] if n else None
    for i in range(n):
        for j in range(n):
            if i == j and A[i][j] != c:
                return None
            if i != j and not A[i][j].is_zero():
                return None
    return c


def _derive_lift(base: PresentationModule, H):
    """Solve h P = P Q for Q over Z[T] (Cramer's rule for square P)."""
    c = _is_scalar(H)
    if c is not None and base.m:
        z = LambdaSeries(base.p, base.N, base.D)
        return tuple(tuple(c if i == j else z for j in range(base.m)) for i in range(base.m))
    if base.m == 0:
        return ()
    if not base.is_square:
        raise ActionMismatch("non-square presentation: supply action_lifts")
    P = base.exact()
    HP = zpoly.mat_mul(exact_matrix(H), P)
    dP = zpoly.det(P)
    if not dP:
        raise NotTorsionAtPrecision("det(P) = 0")
    k = base.k
    Q = [[None] * k for _ in range(k)]
    for j in range(k):
        b = [HP[r][j] for r in range(k)]
        for i in range(k):
            Pi = [list(row) for row in P]
            for r in range(k):
                Pi[r][i] = b[r]
            try:
                Q[i][j] = zpoly.exquo(zpoly.det(Pi), dP)
            except ExactQuotientFailed:
                raise ActionMismatch("h P = P Q has no solution over Z[T]; supply action_lifts") from None
    return tuple(tuple(zpoly_to_series(q, base.p, base.N, base.D) for q in row) for row in Q)


def _congruent(A, B, modulus: int) -> bool:
    for ra, rb in zip(A, B):
        for a, b in zip(ra, rb):
            if any(c % modulus for c in zpoly.to_ascending(zpoly.sub(a, b))):
                return False
    return True


def _check_presentation_actions(M: SigmaModule):
    base = M.base
    P = base.exact()
    pN = base.p ** base.N
    if base.m and zpoly.rank(P) < base.m:
        raise CertificateError("relation columns are dependent; give an injective presentation")
    Hs = [exact_matrix(H) for H in M.actions]
    Qs = [exact_matrix(Q) for Q in M.action_lifts]
    if len(Qs) != len(Hs):
        raise ActionMismatch("need one lift per action")
    for i, (H, Q) in enumerate(zip(Hs, Qs)):
        if len(H) != base.k or any(len(r) != base.k for r in H):
            raise ActionMismatch(f"action {i} must be {base.k} x {base.k}")
        if base.m:
            lhs, rhs = zpoly.mat_mul(H, P), zpoly.mat_mul(P, Q)
            if not zpoly.mat_eq(lhs, rhs):
                hint = " (holds only mod p^N; supply exact lifts)" if _congruent(lhs, rhs, pN) else ""
                raise ActionMismatch(f"h_{i + 1} P != P Q_{i + 1}{hint}")
        if not zpoly.is_lambda_unit(zpoly.det(H), base.p):
            raise ActionMismatch(f"h_{i + 1} is not invertible")
    for i in range(len(Hs)):
        for j in range(i + 1, len(Hs)):
            for X in (Hs, Qs):
                if not zpoly.mat_eq(zpoly.mat_mul(X[i], X[j]), zpoly.mat_mul(X[j], X[i])):
                    raise ActionMismatch(f"h_{i + 1} and h_{j + 1} do not commute")


def _check_finite_actions(M: SigmaModule):
    base = M.base
    k, mods = base.k, base.moduli

    def congruent(A, B):
        return all((A[i][j] - B[i][j]) % mods[i] == 0 for i in range(k) for j in range(k))

    theta = [list(r) for r in base.theta]
    for n, h in enumerate(M.actions):
        if len(h) != k or any(len(r) != k for r in h):
            raise ActionMismatch(f"action {n} must be {k} x {k}")
        if any((h[i][j] * mods[j]) % mods[i] for i in range(k) for j in range(k)):
            raise ActionMismatch(f"h_{n + 1} is not well defined")
        if not congruent(lattice.matmul(h, theta), lattice.matmul(theta, h)):
            raise ActionMismatch(f"h_{n + 1} does not commute with T")
        if k and _det_mod_p(h, base.p) == 0:
            raise ActionMismatch(f"h_{n + 1} is not invertible")
    for a in range(M.d):
        for b in range(a + 1, M.d):
            ha, hb = M.actions[a], M.actions[b]
            if not congruent(lattice.matmul(ha, hb), lattice.matmul(hb, ha)):
                raise ActionMismatch(f"h_{a + 1} and h_{b + 1} do not commute")


def _det_mod_p(A, p: int) -> int:
    n = len(A)
    M = [[x % p for x in row] for row in A]
    det = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det = det * M[c][c] % p
        inv = pow(M[c][c], -1, p)
        for r in range(c + 1, n):
            f = M[r][c] * inv % p
            M[r] = [(x - f * y) % p for x, y in zip(M[r], M[c])]
    return det % p


# --- Koszul complexes ----------------------------------------------------------------

def _subsets(d: int, j: int):
    return list(combinations(range(d), j))


def koszul_differential(phis, r: int, d: int, j: int, zero, neg, block_get):
    """Matrix of d_j : K_j -> K_{j-1}, d(x e_S) = sum_t (-1)^t phi_{s_t}(x) e_{S - s_t}.

    Generic over the entry type: ``zero`` is the zero entry, ``neg`` negates and
    ``block_get(phi, a, b)`` reads an entry of an operator.
    """
    src, dst = _subsets(d, j), _subsets(d, j - 1)
    index = {S: n for n, S in enumerate(dst)}
    out = [[zero for _ in range(len(src) * r)] for _ in range(len(dst) * r)]
    for c, S in enumerate(src):
        for t, s in enumerate(S):
            row = index[S[:t] + S[t + 1:]]
            for a in range(r):
                for b in range(r):
                    x = block_get(phis[s], a, b)
                    out[row * r + a][c * r + b] = neg(x) if t % 2 else x
    return out


def _zp_phis(mats, n):
    """h - 1 over Z[T]."""
    return [zpoly.mat_sub(H, zpoly.identity(n)) for H in mats]


def _zp_koszul(phis, r, d, j):
    if j <= 0 or j > d or r == 0:
        return zpoly.zeros(comb(d, j - 1) * r if 0 <= j - 1 <= d else 0, comb(d, j) * r if 0 <= j <= d else 0)
    return koszul_differential(phis, r, d, j, zpoly.ZERO, zpoly.neg, lambda A, a, b: A[a][b])


def _block_diag_repeat(P, copies: int, rows: int, cols: int):
    out = zpoly.zeros(copies * rows, copies * cols)
    for c in range(copies):
        for a in range(rows):
            for b in range(cols):
                out[c * rows + a][c * cols + b] = P[a][b]
    return out


def _assemble(blocks, row_sizes, col_sizes):
    out = zpoly.zeros(sum(row_sizes), sum(col_sizes))
    r0 = 0
    for bi, rs in enumerate(row_sizes):
        c0 = 0
        for bj, cs in enumerate(col_sizes):
            B = blocks[bi][bj]
            if B is not None:
                for a in range(rs):
                    for b in range(cs):
                        out[r0 + a][c0 + b] = B[a][b]
            c0 += cs
        r0 += rs
    return out


def cone_complex(M: SigmaModule):
    """Differentials d_1..d_{d+1} and chain ranks n_0..n_{d+1} of the cone."""
    base, d = M.base, M.d
    k, m = base.k, base.m
    P = base.exact()
    phi0 = _zp_phis([exact_matrix(H) for H in M.actions], k)
    phi1 = _zp_phis([exact_matrix(Q) for Q in M.action_lifts], m)

    def a(j):  # rank of K_j(F_0)
        return comb(d, j) * k if 0 <= j <= d else 0

    def b(j):  # rank of K_{j-1}(F_1)
        return comb(d, j - 1) * m if 0 <= j - 1 <= d else 0

    sizes = [a(j) + b(j) for j in range(d + 2)]
    diffs = {}
    for j in range(1, d + 2):
        dA = _zp_koszul(phi0, k, d, j)
        dB = [[zpoly.neg(x) for x in row] for row in _zp_koszul(phi1, m, d, j - 1)]
        Pj = _block_diag_repeat(P, comb(d, j - 1), k, m) if 0 <= j - 1 <= d else None
        diffs[j] = _assemble(
            [[dA if a(j) and a(j - 1) else None, Pj], [None, dB if b(j) and b(j - 1) else None]],
            [a(j - 1), b(j - 1)],
            [a(j), b(j)],
        )
    return diffs, sizes


@dataclass(frozen=True)
class HomologyGroup:
    degree: int
    char: CharElement
    truncated: Optional[FiniteFormModule] = None

    @property
    def finite(self) -> Optional[FiniteFormModule]:
        return self.truncated


def _presentation_homology_chars(M: SigmaModule) -> List[CharElement]:
    base, d = M.base, M.d
    diffs, sizes = cone_complex(M)
    ranks = {0: 0, d + 2: 0}
    for j in range(1, d + 2):
        ranks[j] = zpoly.rank(diffs[j]) if sizes[j] and sizes[j - 1] else 0
    chars = []
    for j in range(d + 1):
        free = sizes[j] - ranks[j] - ranks[j + 1]
        if free:
            raise NotTorsionAtPrecision(f"H_{j} has rank {free} over Lambda")
        r = ranks[j + 1]
        if r == 0:
            chars.append(CharElement.one(base.p, base.N))
        else:
            chars.append(char_from_minors(diffs[j + 1], r, base.p, base.N))
    return chars


# --- flattened (Smith) route ----------------------------------------------------------

@dataclass
class Flat:
    """A module as Z^n / (relation columns) with T and H acting by integer matrices."""

    p: int
    N: int
    n: int
    rel: List[List[int]]
    theta: List[List[int]]
    actions: List[List[List[int]]]


def flatten(M: SigmaModule, D: Optional[int] = None) -> Flat:
    base = M.base
    if isinstance(base, FiniteFormModule):
        return Flat(
            base.p, base.N, base.k, base.relation_lattice(),
            [list(r) for r in base.theta], [[list(r) for r in h] for h in M.actions],
        )
    D = D or base.D
    n, rel, shift = truncation_lattice(_retruncate(base, D), D)
    acts = [flatten_series_matrix(H, D, base.k, base.k) for H in M.actions]
    return Flat(base.p, base.N, n, rel, shift, acts)


def _retruncate(base: PresentationModule, D: int) -> PresentationModule:
    if D == base.D:
        return base
    rows = tuple(tuple(a.reduce(D=D) for a in r) for r in base.P)
    return PresentationModule(base.p, base.N, D, rows, base.k, base.m)


def _int_blockdiag(A, copies: int):
    r = len(A)
    c = len(A[0]) if r else 0
    out = [[0] * (copies * c) for _ in range(copies * r)]
    for t in range(copies):
        for i in range(r):
            for j in range(c):
                out[t * r + i][t * c + j] = A[i][j]
    return out


def _exponent(order: int, p: int) -> int:
    e = 0
    while order > 1:
        order //= p
        e += 1
    return e


def flat_koszul_homology(F: Flat, d: int) -> List[FiniteFormModule]:
    """All H_j, j = 0..d, of the Koszul complex on a finite flattened module."""
    n = F.n
    phis = [[[h[i][j] - (i == j) for j in range(n)] for i in range(n)] for h in F.actions]

    def D_(j):
        if j <= 0 or j > d:
            return None
        return koszul_differential(phis, n, d, j, 0, lambda x: -x, lambda A, a, b: A[a][b])

    out = []
    for j in range(d + 1):
        a_j = comb(d, j) * n
        rel_j = _int_blockdiag(F.rel, comb(d, j))
        if j == 0:
            B = lattice.eye(a_j)
        else:
            rel_prev = _int_blockdiag(F.rel, comb(d, j - 1))
            big = lattice.hstack(D_(j), [[-x for x in row] for row in rel_prev])
            K = lattice.kernel(big, len(big[0]))
            B = lattice.column_basis(K[:a_j], a_j)
        nxt = D_(j + 1)
        J = lattice.hstack(nxt, rel_j) if nxt is not None else rel_j
        theta = _int_blockdiag(F.theta, comb(d, j))
        orders, theta_q, _ = lattice.subquotient(B, J, theta)
        exps = tuple(_exponent(o, F.p) for o in orders)
        out.append(FiniteFormModule(F.p, F.N, exps, tuple(map(tuple, theta_q))))
    return out


# --- public operations -------------------------------------------------------------------

def truncated_homology(M: SigmaModule, D: Optional[int] = None) -> List[FiniteFormModule]:
    """Koszul homology of the base at truncation (p^N, T^D), in finite form."""
    return flat_koszul_homology(flatten(M, D), M.d)


def koszul_homology_all(M: SigmaModule, truncated: bool = True) -> List[HomologyGroup]:
    if isinstance(M.base, FiniteFormModule):
        groups = truncated_homology(M)
        return [HomologyGroup(j, char_of_finite_form(H), H) for j, H in enumerate(groups)]
    chars = _presentation_homology_chars(M)
    trunc = truncated_homology(M) if truncated else [None] * len(chars)
    return [HomologyGroup(j, c, t) for j, (c, t) in enumerate(zip(chars, trunc))]


def koszul_homology(M: SigmaModule, i: int) -> HomologyGroup:
    if not 0 <= i <= M.d:
        raise ValueError(f"degree {i} outside 0..{M.d}")
    return koszul_homology_all(M)[i]


@dataclass(frozen=True)
class AkashiResult:
    homology_chars: Tuple[CharElement, ...]
    akashi: CharElement
    ord_at_zero: int
    leading_valuation: Optional[int]


def alternating_product(chars: Sequence[CharElement]) -> CharElement:
    p, N = chars[0].prime, min(c.precision for c in chars)
    num = CharElement.one(p, N)
    for c in chars[0::2]:
        num = num * c
    for c in chars[1::2]:
        num = num.divide(c)
    return num


def akashi_series(M: SigmaModule) -> AkashiResult:
    if isinstance(M.base, FiniteFormModule):
        chars = [g.char for g in koszul_homology_all(M)]
    else:
        chars = _presentation_homology_chars(M)
    ak = alternating_product(chars)
    try:
        lead = leading_term_at_zero(ak)
    except Exception:  # leading term lost to precision
        lead = None
    return AkashiResult(tuple(chars), ak, ord_at_zero(ak), lead)


# --- exact sequences ---------------------------------------------------------------------

@dataclass(frozen=True)
class MultiplicativityReport:
    holds: bool
    akashi_L: CharElement
    akashi_M: CharElement
    akashi_N: CharElement

    def __bool__(self):
        return self.holds


def _flat_map(A, src: SigmaModule, dst: SigmaModule, D: int) -> List[List[int]]:
    """Integer matrix of a Lambda-linear map between flattened modules."""
    s, t = src.base, dst.base
    if isinstance(t, PresentationModule):
        cols_src = s.k
        series = _as_series_matrix(A, _retruncate(t, D)) if s.k else ()
        if isinstance(s, PresentationModule):
            return flatten_series_matrix(series, D, t.k, s.k)
        full = flatten_series_matrix(series, D, t.k, cols_src)
        return [[row[j * D] for j in range(cols_src)] for row in full]
    Ai = [[int(x) for x in row] for row in A]
    if isinstance(s, FiniteFormModule):
        return Ai
    # presentation -> finite: T^s e_j maps to theta^s (column j)
    cols = []
    theta = [list(r) for r in t.theta]
    for j in range(s.k):
        v = [[Ai[i][j]] for i in range(t.k)]
        for _ in range(D):
            cols.append([x[0] for x in v])
            v = lattice.matmul(theta, v)
    return lattice.transpose(cols, t.k) if cols else [[] for _ in range(t.k)]


def _index(G, n: int) -> int:
    if n == 0:
        return 1
    g = len(G[0]) if G and G[0] else 0
    if g == 0:
        return 0
    diag, *_ = lattice.smith(G, n, g)
    if len(diag) < n or any(x == 0 for x in diag):
        return 0
    out = 1
    for x in diag:
        out *= x
    return out


def _contained(vectors, rel, n: int) -> bool:
    if n == 0 or not vectors or not vectors[0]:
        return True
    B = lattice.column_basis(rel, n)
    try:
        lattice.solve_in_basis(B, vectors)
    except ValueError:
        return False
    return True


def check_exact(L: SigmaModule, M: SigmaModule, N: SigmaModule, maps) -> None:
    """Certify L -> M -> N -> 0 exact and H-equivariant at truncation; raises NotExact."""
    i_map, pi_map = maps
    if {(X.p, X.N) for X in (L, M, N)} != {(M.p, M.N)}:
        raise PrecisionMismatch("modules disagree on (p, N)")
    if not L.d == M.d == N.d:
        raise NotExact("the three modules carry different numbers of actions")
    D = max([X.base.D for X in (L, M, N) if isinstance(X.base, PresentationModule)] or [1])
    FL, FM, FN = flatten(L, D), flatten(M, D), flatten(N, D)
    I = _flat_map(i_map, L, M, D)
    Pi = _flat_map(pi_map, M, N, D)
    if not _contained(lattice.matmul(I, FL.rel), FM.rel, FM.n):
        raise NotExact("first map is not well defined")
    if not _contained(lattice.matmul(Pi, FM.rel), FN.rel, FN.n):
        raise NotExact("second map is not well defined")
    for name, f, X, Y in (("first", I, FL, FM), ("second", Pi, FM, FN)):
        for hx, hy in [(X.theta, Y.theta)] + list(zip(X.actions, Y.actions)):
            diff = [[a - b for a, b in zip(r1, r2)]
                    for r1, r2 in zip(lattice.matmul(hy, f), lattice.matmul(f, hx))]
            if not _contained(diff, Y.rel, Y.n):
                raise NotExact(f"{name} map is not equivariant")
    if FL.n and not _contained(lattice.matmul(Pi, I), FN.rel, FN.n):
        raise NotExact("composition is not zero")
    if _index(lattice.hstack(Pi, FN.rel), FN.n) != 1:
        raise NotExact("second map is not surjective")
    big = lattice.hstack(Pi, [[-x for x in r] for r in FN.rel])
    K = lattice.kernel(big, len(big[0]))[: FM.n]
    image = lattice.hstack(I, FM.rel) if FL.n else FM.rel
    if _index(K, FM.n) != _index(image, FM.n):
        raise NotExact("kernel of the second map exceeds the image of the first")


def verify_multiplicativity(L: SigmaModule, M: SigmaModule, N: SigmaModule, maps) -> MultiplicativityReport:
    check_exact(L, M, N, maps)
    aL, aM, aN = (akashi_series(X).akashi for X in (L, M, N))
    return MultiplicativityReport(aM == aL * aN, aL, aM, aN)
