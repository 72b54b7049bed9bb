"""Finitely generated torsion modules over Z_p[[T]] and their characteristic elements.

Two forms:

* ``PresentationModule``: coker of a k x m matrix P over Lambda acting on the
  free module of rank k (square P is the usual case; m < k allows free parts).
* ``FiniteFormModule``: the finite group sum_j Z/p^{n_j} with T acting through
  an integer matrix theta.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from . import lattice, zpoly
from .errors import CertificateError, NotAUnit, NotTorsionAtPrecision, PrecisionMismatch
from .padic import PadicInt
from .series import CharElement, LambdaSeries, char_from_integer_poly

SeriesMatrix = List[List[LambdaSeries]]


def series_to_zpoly(f: LambdaSeries):
    return zpoly.from_ascending(f.lifts())


def zpoly_to_series(g, p: int, N: int, D: Optional[int] = None) -> LambdaSeries:
    coeffs = zpoly.to_ascending(g)
    D = max(D or 1, len(coeffs), 1)
    return LambdaSeries(p, N, D, coeffs)


def exact_matrix(A: SeriesMatrix):
    return [[series_to_zpoly(a) for a in row] for row in A]


def data_precision(N: int, mu: int) -> int:
    """Precision of the distinguished part when the entries are known mod p^N.

    Moving an entry by p^N moves a minor by p^N times a cofactor, so after
    dividing out p^mu only N - mu digits are determined (floored at 1).
    """
    return max(N - mu, 1)


def char_from_minors(A, r: int, p: int, N: int) -> CharElement:
    mu, g = zpoly.gcd_of_minors(A, r, p)
    if mu is None:
        raise NotTorsionAtPrecision("all maximal minors vanish")
    return char_from_integer_poly(g, mu, p, data_precision(N, mu))


@dataclass(frozen=True)
class PresentationModule:
    p: int
    N: int
    D: int
    P: Tuple[Tuple[LambdaSeries, ...], ...]
    k: int
    m: int

    @classmethod
    def from_matrix(cls, P: Sequence[Sequence[LambdaSeries]], k: Optional[int] = None) -> "PresentationModule":
        rows = [tuple(r) for r in P]
        k = len(rows) if k is None else k
        m = len(rows[0]) if rows else 0
        entries = [a for r in rows for a in r]
        if not entries:
            raise ValueError("give at least one entry, or use free_module")
        p, N = entries[0].p, entries[0].N
        if any((a.p, a.N) != (p, N) for a in entries):
            raise PrecisionMismatch("matrix entries disagree on (p, N)")
        D = max(a.D for a in entries)
        rows = [tuple(a.reduce(D=D) for a in r) for r in rows]
        return cls(p, N, D, tuple(rows), k, m)

    @classmethod
    def from_ints(cls, p: int, N: int, D: int, P: Sequence[Sequence[Sequence[int]]]) -> "PresentationModule":
        """Entries as ascending coefficient lists."""
        rows = [[LambdaSeries(p, N, D, c) for c in r] for r in P]
        M = cls.from_matrix(rows)
        return M if M.D == D else cls(p, N, D, M.P, M.k, M.m)

    @classmethod
    def cyclic(cls, f: LambdaSeries) -> "PresentationModule":
        return cls(f.p, f.N, f.D, ((f,),), 1, 1)

    @classmethod
    def free_module(cls, p: int, N: int, D: int, k: int = 1) -> "PresentationModule":
        return cls(p, N, D, tuple(() for _ in range(k)), k, 0)

    def exact(self):
        """Relation matrix over Z[T] on centred lifts (k x m)."""
        return [[series_to_zpoly(a) for a in row] for row in self.P]

    @property
    def is_square(self) -> bool:
        return self.k == self.m


@dataclass(frozen=True)
class FiniteFormModule:
    p: int
    N: int
    orders: Tuple[int, ...]  # exponents n_j
    theta: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        k = len(self.orders)
        if any(not 1 <= n <= self.N for n in self.orders):
            raise ValueError(f"orders must lie in 1..N={self.N}: {self.orders}")
        if len(self.theta) != k or any(len(r) != k for r in self.theta):
            raise ValueError("theta must be k x k")
        mods = [self.p ** n for n in self.orders]
        th = tuple(tuple(int(self.theta[i][j]) % mods[i] for j in range(k)) for i in range(k))
        object.__setattr__(self, "theta", th)
        object.__setattr__(self, "orders", tuple(int(n) for n in self.orders))
        self.check()

    @property
    def k(self) -> int:
        return len(self.orders)

    @property
    def moduli(self) -> List[int]:
        return [self.p ** n for n in self.orders]

    def size_exponent(self) -> int:
        return sum(self.orders)

    def check(self):
        """Well-definedness of theta and nilpotence of T on the finite module."""
        mods = self.moduli
        k = self.k
        for i in range(k):
            for j in range(k):
                if (self.theta[i][j] * mods[j]) % mods[i]:
                    raise CertificateError(f"theta[{i}][{j}] is not well defined on the finite module")
        # T must act nilpotently: theta^(k*N) kills every generator
        power = [list(r) for r in lattice.eye(k)]
        for _ in range(max(1, k * self.N)):
            power = [[sum(power[i][t] * self.theta[t][j] for t in range(k)) % mods[i] for j in range(k)] for i in range(k)]
        if any(power[i][j] % mods[i] for i in range(k) for j in range(k)):
            raise CertificateError("T does not act nilpotently on the finite module")

    def relation_lattice(self):
        return [[self.moduli[i] if i == j else 0 for j in range(self.k)] for i in range(self.k)]

    def torsion_profile(self) -> List[int]:
        """log_p |X[p^e]| for e = 1..N (determines the group up to isomorphism)."""
        return [sum(min(e, n) for n in self.orders) for e in range(1, self.N + 1)]


def zero_finite(p: int, N: int) -> FiniteFormModule:
    return FiniteFormModule(p, N, (), ())


# --- characteristic elements ---------------------------------------------------

def char_of_presentation(M: PresentationModule) -> CharElement:
    A = M.exact()
    if M.m < M.k:
        raise NotTorsionAtPrecision(f"{M.k} generators but only {M.m} relations")
    if M.is_square:
        d = zpoly.det(A)
        if not d:
            raise NotTorsionAtPrecision("det(P) = 0")
        mu = zpoly.content_valuation(d, M.p)
        g = zpoly.exquo(d, zpoly.const(zpoly.content(d)))
        return char_from_integer_poly(g, mu, M.p, data_precision(M.N, mu))
    if zpoly.rank(A) < M.k:
        raise NotTorsionAtPrecision("relation matrix has rank < k")
    return char_from_minors(A, M.k, M.p, M.N)


def finite_relation_matrix(M: FiniteFormModule):
    """k x 2k matrix [T*I - theta | diag(p^n_j)] over Z[T]."""
    k = M.k
    rows = []
    for i in range(k):
        left = []
        for j in range(k):
            c = -M.theta[i][j]
            left.append(zpoly.from_ascending([c, 1] if i == j else [c]))
        right = [zpoly.const(M.moduli[i]) if i == j else zpoly.ZERO for j in range(k)]
        rows.append(left + right)
    return rows


def char_of_finite_form(M: FiniteFormModule) -> CharElement:
    """Divisorial hull of the Fitting ideal; 1 for every finite module."""
    if M.k == 0:
        return CharElement.one(M.p, M.N)
    A = finite_relation_matrix(M)
    return char_from_minors(A, M.k, M.p, M.N)


def char_of(M) -> CharElement:
    if isinstance(M, FiniteFormModule):
        return char_of_finite_form(M)
    return char_of_presentation(M)


# --- constructions ---------------------------------------------------------------

def rank_one_twist(u: PadicInt, D: int = 2, convention: str = "direct") -> PresentationModule:
    """Lambda / ((1+T) - u): the compact side of (Q_p/Z_p)(chi) with chi(gamma) = u.

    ``convention="inverse"`` uses u^{-1} instead (the other dual-action convention).
    """
    if not u.is_unit():
        raise NotAUnit(f"{u!r}")
    if convention == "inverse":
        u = PadicInt(u.prime, u.precision, pow(u.value, -1, u.modulus))
    elif convention != "direct":
        raise ValueError(f"unknown dual convention {convention!r}")
    f = LambdaSeries(u.prime, u.precision, max(D, 2), [1 - u.value, 1])
    return PresentationModule.cyclic(f)


def induce(M: PresentationModule, c: int) -> PresentationModule:
    """Lambda(Gamma) tensor over Lambda(Gamma') of M, via S -> (1+T)^(p^c) - 1.

    Substitution is exact (no T-truncation); the T-degree grows by p^c.
    """
    if c < 1:
        raise ValueError("c must be >= 1")
    s = zpoly.shift_one_plus_t_power(M.p ** c)
    D = (M.D - 1) * M.p ** c + 1
    rows = tuple(
        tuple(zpoly_to_series(zpoly.compose(series_to_zpoly(a), s), M.p, M.N, D) for a in row)
        for row in M.P
    )
    return PresentationModule(M.p, M.N, D, rows, M.k, M.m)


def _check_same(M1, M2):
    if (M1.p, M1.N) != (M2.p, M2.N):
        raise PrecisionMismatch("modules disagree on (p, N)")


def direct_sum(M1, M2):
    _check_same(M1, M2)
    if isinstance(M1, FiniteFormModule) and isinstance(M2, FiniteFormModule):
        k1, k2 = M1.k, M2.k
        theta = [list(r) + [0] * k2 for r in M1.theta] + [[0] * k1 + list(r) for r in M2.theta]
        return FiniteFormModule(M1.p, M1.N, M1.orders + M2.orders, tuple(map(tuple, theta)))
    if isinstance(M1, PresentationModule) and isinstance(M2, PresentationModule):
        D = max(M1.D, M2.D)
        z = LambdaSeries(M1.p, M1.N, D)
        rows = [tuple(a.reduce(D=D) for a in r) + (z,) * M2.m for r in M1.P]
        rows += [(z,) * M1.m + tuple(a.reduce(D=D) for a in r) for r in M2.P]
        return PresentationModule(M1.p, M1.N, D, tuple(rows), M1.k + M2.k, M1.m + M2.m)
    raise TypeError("direct_sum needs two modules of the same form")


# --- flattening to finite Z-lattices ------------------------------------------------

def multiplication_matrix(f_asc: Sequence[int], D: int) -> List[List[int]]:
    """D x D integer matrix of multiplication by f on Z[T]/(T^D)."""
    out = [[0] * D for _ in range(D)]
    for s in range(D):
        for i, c in enumerate(f_asc):
            if s + i < D:
                out[s + i][s] = c
    return out


def flatten_series_matrix(A: Sequence[Sequence[LambdaSeries]], D: int, rows: int, cols: int):
    """(rows*D) x (cols*D) integer matrix of A acting on (Z[T]/T^D)^cols."""
    out = [[0] * (cols * D) for _ in range(rows * D)]
    for i in range(rows):
        for j in range(cols):
            blk = multiplication_matrix(A[i][j].lifts(), D)
            for a in range(D):
                for b in range(D):
                    out[i * D + a][j * D + b] = blk[a][b]
    return out


def shift_matrix(k: int, D: int) -> List[List[int]]:
    """Multiplication by T on (Z[T]/T^D)^k."""
    n = k * D
    out = [[0] * n for _ in range(n)]
    for j in range(k):
        for s in range(D - 1):
            out[j * D + s + 1][j * D + s] = 1
    return out


def truncation_lattice(M: PresentationModule, D: int):
    """(ambient dim, relation columns, T-matrix) for M / (p^N, T^D) M."""
    n = M.k * D
    rel = flatten_series_matrix(M.P, D, M.k, M.m) if M.m else [[] for _ in range(n)]
    pN = M.p ** M.N
    rel = lattice.hstack(rel, [[pN if i == j else 0 for j in range(n)] for i in range(n)])
    return n, rel, shift_matrix(M.k, D)


def truncation_size_exponent(M: PresentationModule, D: int) -> int:
    n, rel, _ = truncation_lattice(M, D)
    diag, *_ = lattice.smith(rel, n, len(rel[0]))
    total = 1
    for d in diag:
        total *= d
    e = 0
    while total % M.p == 0 and total > 1:
        total //= M.p
        e += 1
    return e


def to_finite_form(M: PresentationModule, max_degree: int = 512):
    """M / p^N M as a FiniteFormModule, when M is finitely generated over Z_p.

    Returns (finite module, D_work, generators) where generators are the ambient
    coordinates in (Z[T]/T^D_work)^k of the chosen generators.
    """
    ch = char_of_presentation(M)
    if ch.mu != 0:
        raise NotTorsionAtPrecision("mu > 0: M / p^N M is not finite")
    D = max(1, ch.lam * M.N)
    size = truncation_size_exponent(M, D)
    while True:
        nxt = truncation_size_exponent(M, D + 1)
        if nxt == size:
            break
        D, size = D + 1, nxt
        if D > max_degree:
            raise NotTorsionAtPrecision("truncations did not stabilise")
    n, rel, shift = truncation_lattice(M, D)
    basis = lattice.eye(n)
    orders, theta_q, gens = lattice.subquotient(basis, rel, shift)
    exps = [_exponent(o, M.p) for o in orders]
    return FiniteFormModule(M.p, M.N, tuple(exps), tuple(map(tuple, theta_q))), D, gens


def _exponent(order: int, p: int) -> int:
    e = 0
    while order > 1:
        if order % p:
            raise ValueError(f"order {order} is not a power of {p}")
        order //= p
        e += 1
    return e


def presentation_of_finite(M: FiniteFormModule) -> PresentationModule:
    """Non-square presentation [T - theta | diag(p^n_j)] of a finite module."""
    D = 2
    rows = []
    for i in range(M.k):
        left = [LambdaSeries(M.p, M.N, D, [-M.theta[i][j], 1 if i == j else 0]) for j in range(M.k)]
        right = [LambdaSeries(M.p, M.N, D, [M.moduli[i] if i == j else 0]) for j in range(M.k)]
        rows.append(tuple(left + right))
    return PresentationModule(M.p, M.N, D, tuple(rows), M.k, 2 * M.k)
