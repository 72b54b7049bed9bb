"""Brute-force oracle for tiny truncated modules.

Deliberately independent of the main path: its own arithmetic in
R = (Z/p^N)[T]/(T^D), literal enumeration of element tables, and trial division
for characteristic elements.  Only plain integers go in and out (plus the
shared exception types and the CharElement container).
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from itertools import combinations, product
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple


from .errors import IndistinguishableFromZero, SizeBound
from .series import CharElement

log = logging.getLogger(__name__)

TABLE_BOUND = 6561
CHAIN_BOUND = 200_000

Relt = Tuple[int, ...]  # element of R, ascending coefficients, length D


# --- arithmetic in R ------------------------------------------------------------

@dataclass(frozen=True)
class TruncRing:
    p: int
    N: int
    D: int

    @property
    def m(self) -> int:
        return self.p ** self.N

    def elt(self, coeffs: Sequence[int]) -> Relt:
        c = [int(x) % self.m for x in list(coeffs)[: self.D]]
        return tuple(c + [0] * (self.D - len(c)))

    def zero(self) -> Relt:
        return (0,) * self.D

    def add(self, a: Relt, b: Relt) -> Relt:
        return tuple((x + y) % self.m for x, y in zip(a, b))

    def sub(self, a: Relt, b: Relt) -> Relt:
        return tuple((x - y) % self.m for x, y in zip(a, b))

    def mul(self, a: Relt, b: Relt) -> Relt:
        out = [0] * self.D
        for i, x in enumerate(a):
            if x:
                for j in range(self.D - i):
                    out[i + j] += x * b[j]
        return tuple(v % self.m for v in out)

    def elements(self):
        return product(range(self.m), repeat=self.D)

    def det(self, A: List[List[Relt]]) -> Relt:
        n = len(A)
        if n == 0:
            return self.elt([1])
        if n == 1:
            return A[0][0]
        total = self.zero()
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for row in A[1:]]
            term = self.mul(A[0][j], self.det(minor))
            total = self.sub(total, term) if j % 2 else self.add(total, term)
        return total

    def divides(self, c: Relt, f: Relt) -> bool:
        """Is f = c x for some x in R?  Membership of f in the Z/p^N-span of
        c, cT, ..., cT^(D-1), via an echelon form over the chain ring."""
        span = _ChainSpan(self.p, self.N, self.D)
        for s in range(self.D):
            span.insert(self.mul(c, self.elt([0] * s + [1])))
        return span.contains(f)


class _ChainSpan:
    """Submodule of (Z/p^N)^n kept in echelon form (leading entry p-power times unit)."""

    def __init__(self, p: int, N: int, n: int):
        self.p, self.m, self.n = p, p ** N, n
        self.rows: List[Optional[List[int]]] = [None] * n

    def _val(self, x: int) -> int:
        x %= self.m
        if x == 0:
            return 10 ** 9
        v = 0
        while x % self.p == 0:
            x //= self.p
            v += 1
        return v

    def _saturate(self, w, i):
        """p^(N - v(w_i)) * w, which lies in the span and vanishes at i."""
        return [(x * (self.m // self.p ** self._val(w[i]))) % self.m for x in w]

    def insert(self, w):
        queue = [[x % self.m for x in w]]
        while queue:
            w = queue.pop()
            for i in range(self.n):
                if w[i] == 0:
                    continue
                piv = self.rows[i]
                if piv is None:
                    self.rows[i] = w
                    queue.append(self._saturate(w, i))
                    break
                if self._val(w[i]) < self._val(piv[i]):
                    self.rows[i], w = w, piv
                    queue.append(self._saturate(self.rows[i], i))
                q = self._quot(w[i], self.rows[i][i])
                w = [(a - q * b) % self.m for a, b in zip(w, self.rows[i])]

    def _quot(self, a: int, b: int) -> int:
        """q with a = q b mod p^N, given v(a) >= v(b)."""
        vb = self._val(b)
        pb = self.p ** vb
        unit = (b // pb) % self.m
        return ((a // pb) * pow(unit, -1, self.m)) % self.m

    def contains(self, v) -> bool:
        v = [x % self.m for x in v]
        for i in range(self.n):
            if v[i] == 0:
                continue
            piv = self.rows[i]
            if piv is None or self._val(v[i]) < self._val(piv[i]):
                return False
            q = self._quot(v[i], piv[i])
            v = [(a - q * b) % self.m for a, b in zip(v, piv)]
        return True


# --- tiny modules -------------------------------------------------------------------

@dataclass
class TinyModule:
    """Quotient of an ambient finite group Z/m_1 x ... x Z/m_n by a subgroup.

    ``tmat`` is T on ambient coordinates and ``actions`` are the h_i.  ``rpres``
    (optional) is a relation matrix of exact integer coefficient lists whose
    cokernel is the module, used for Fitting ideals; ``rprec`` is the starting
    p-precision for them.
    """

    p: int
    N: int
    D: int
    mods: Tuple[int, ...]
    rel_gens: List[Tuple[int, ...]]
    tmat: List[List[int]]
    actions: List[List[List[int]]] = field(default_factory=list)
    rpres: Optional[List[List[List[int]]]] = None
    rprec: Optional[int] = None

    def __post_init__(self):
        self.rprec = self.rprec or self.N
        size = 1
        for m in self.mods:
            size *= m
        if size > TABLE_BOUND:
            raise SizeBound(f"ambient table of size {size} exceeds {TABLE_BOUND}")
        self.ambient = list(product(*[range(m) for m in self.mods]))
        sub = {tuple(0 for _ in self.mods)}
        for g in self.rel_gens:
            g = self.reduce(g)
            new = set(sub)
            frontier = list(sub)
            while frontier:
                nxt = []
                for s in frontier:
                    t = self.reduce([a + b for a, b in zip(s, g)])
                    if t not in new:
                        new.add(t)
                        nxt.append(t)
                frontier = nxt
            sub = new
        self.subgroup = sub
        self.cls: Dict[Tuple[int, ...], int] = {}
        self.reps: List[Tuple[int, ...]] = []
        for x in self.ambient:
            if x in self.cls:
                continue
            cid = len(self.reps)
            self.reps.append(x)
            for s in sub:
                self.cls[self.reduce([a + b for a, b in zip(x, s)])] = cid

    @property
    def d(self) -> int:
        return len(self.actions)

    @property
    def size(self) -> int:
        return len(self.reps)

    def reduce(self, v) -> Tuple[int, ...]:
        return tuple(int(a) % m for a, m in zip(v, self.mods))

    def apply(self, A, v) -> Tuple[int, ...]:
        return self.reduce([sum(A[i][j] * v[j] for j in range(len(v))) for i in range(len(A))])

    def class_map(self, A) -> List[int]:
        return [self.cls[self.apply(A, r)] for r in self.reps]

    def add_ids(self, a: int, b: int) -> int:
        return self.cls[self.reduce([x + y for x, y in zip(self.reps[a], self.reps[b])])]

    def neg_id(self, a: int) -> int:
        return self.cls[self.reduce([-x for x in self.reps[a]])]

    def scale_id(self, a: int, n: int) -> int:
        return self.cls[self.reduce([n * x for x in self.reps[a]])]


def _poly_mult_matrix(f: Sequence[int], D: int) -> List[List[int]]:
    out = [[0] * D for _ in range(D)]
    for s in range(D):
        for i, c in enumerate(f):
            if s + i < D:
                out[s + i][s] += c
    return out


def _poly_matrix_on_ambient(A: Sequence[Sequence[Sequence[int]]], D: int) -> List[List[int]]:
    rows, cols = len(A), len(A[0]) if A else 0
    out = [[0] * (cols * D) for _ in range(rows * D)]
    for i in range(rows):
        for j in range(cols):
            blk = _poly_mult_matrix(A[i][j], D)
            for a in range(D):
                for b in range(D):
                    out[i * D + a][j * D + b] = blk[a][b]
    return out


def _lift(x: int, m: int) -> int:
    """Centred representative in (-m/2, m/2], the convention for exact lifts."""
    x %= m
    return x - m if 2 * x > m else x


def tiny_from_presentation(p: int, N: int, D: int, P, actions=(), lifted=None) -> TinyModule:
    """R^k / P R^k; P is k x m with entries as ascending integer coefficient lists.

    The element table lives in R = (Z/p^N)[T]/(T^D).  Fitting minors are taken
    from centred integer lifts of P (or from ``lifted`` if given), starting at
    p-precision N*k + 1 so products of non-units are not lost to p^N.
    """
    R = TruncRing(p, N, D)
    k = len(P)
    m = len(P[0]) if k else 0
    gens = []
    for j in range(m):
        col = [R.elt(P[i][j]) for i in range(k)]
        for s in range(D):
            shifted = [R.mul(R.elt([0] * s + [1]), c) for c in col]
            gens.append(tuple(x for c in shifted for x in c))
    tmat = _poly_matrix_on_ambient([[[0, 1] if i == j else [0] for j in range(k)] for i in range(k)], D)
    acts = [_poly_matrix_on_ambient(h, D) for h in actions]
    if lifted is None:
        lifted = [[[_lift(c, p ** N) for c in P[i][j]] for j in range(m)] for i in range(k)]
    return TinyModule(p, N, D, (p ** N,) * (k * D), gens, tmat, acts, lifted, N * max(k, 1) + 1)


def tiny_from_finite(p: int, N: int, D: int, orders: Sequence[int], theta, actions=()) -> TinyModule:
    k = len(orders)
    rpres = []
    for i in range(k):
        row = [[-theta[i][j], 1 if i == j else 0] for j in range(k)]
        row += [[p ** orders[i] if i == j else 0] for j in range(k)]
        rpres.append(row)
    mods = tuple(p ** n for n in orders)
    acts = [list(map(list, h)) for h in actions]
    # enough digits that the maximal minors (products of the p^n_j) survive
    return TinyModule(p, N, D, mods, [], [list(r) for r in theta], acts, rpres, sum(orders) + 1)


def tiny_h0_presentation(p: int, N: int, D: int, P, actions) -> TinyModule:
    """H_0 = M / sum (h_i - 1) M as R^k / [P | h_1 - 1 | ...]."""
    k = len(P)
    m = p ** N
    cols = [list(r) for r in P]
    lifted = [[[_lift(c, m) for c in e] for e in r] for r in P]
    for h in actions:
        for i in range(k):
            for j in range(k):
                e = [_lift(c, m) for c in h[i][j]] or [0]
                if i == j:
                    e = [e[0] - 1] + e[1:]
                cols[i].append(e)
                lifted[i].append(e)
    return tiny_from_presentation(p, N, D, cols, lifted=lifted)


# --- characteristic elements by trial division ------------------------------------------

def _content_val(g: Relt, p: int) -> int:
    v = None
    for c in g:
        if c:
            e = 0
            while c % p == 0:
                c //= p
                e += 1
            v = e if v is None else min(v, e)
    return v


def _candidates(R: TruncRing, a: int, lam_max: int):
    """p^a * Q for Q distinguished of degree <= lam_max, Q known mod p^(N - a)."""
    p, N = R.p, R.N
    for lam in range(lam_max + 1):
        for lower in product(range(p ** max(N - a - 1, 0)), repeat=lam):
            q = [p * t for t in lower] + [1]
            yield tuple(q), R.elt([p ** a * c for c in q])


def fitting_generators(R: TruncRing, rpres: List[List[Relt]]) -> List[Relt]:
    k = len(rpres)
    m = len(rpres[0]) if k else 0
    if k == 0:
        return [R.elt([1])]
    out = []
    for cs in combinations(range(m), k):
        out.append(R.det([[rpres[i][j] for j in cs] for i in range(k)]))
    return out


def gcd_in_truncation(R: TruncRing, gens: Sequence[Relt]):
    """(a, Q) with p^a Q the greatest common divisor of gens among p^a * distinguished.

    a is the least content valuation; the degree of Q is bounded by the
    Weierstrass degree of each generator divided by p^a.
    """
    gens = [g for g in gens if any(g)]
    if not gens:
        raise IndistinguishableFromZero("every Fitting generator vanishes in the truncation")
    p = R.p
    a = min(_content_val(g, p) for g in gens)
    lam_max = R.D - 1
    for g in gens:
        if _content_val(g, p) == a:
            lam_max = min(lam_max, next(i for i, c in enumerate(g) if (c // p ** a) % p))
    common = [(q, c) for q, c in _candidates(R, a, lam_max) if all(R.divides(c, g) for g in gens)]
    best = [x for x in common if all(R.divides(y[1], x[1]) for y in common)]
    q, _ = max(best or common, key=lambda x: len(x[0]))
    return a, q


STABLE_STEPS = 3


def _char_at(M: TinyModule, prec: int) -> CharElement:
    # minors of k x k blocks (k <= 2) of entries of degree < D have degree < 2D,
    # so in T-degree 2D they are exact polynomials
    R = TruncRing(M.p, prec, 2 * M.D)
    rpres = [[R.elt(e) for e in row] for row in M.rpres]
    a, q = gcd_in_truncation(R, fitting_generators(R, rpres))
    return CharElement(M.p, prec - a, a, q, M.D)


def brute_char(M: TinyModule) -> CharElement:
    """Trial-division gcd of the Fitting minors, at rising p-precision until two
    consecutive precisions agree.  A finite cofactor of exponent e makes every
    precision <= e report a spurious common factor, hence the climb."""
    if M.rpres is None:
        raise ValueError("module carries no presentation over the truncated ring")
    prev = _char_at(M, M.rprec)
    for prec in range(M.rprec + 1, M.rprec + 1 + STABLE_STEPS):
        cur = _char_at(M, prec)
        if cur == prev:
            return prev
        prev = cur
    raise SizeBound(f"Fitting gcd did not stabilise by p-precision {M.rprec + STABLE_STEPS}")


def same_in_truncation(f: CharElement, g: CharElement, p: int, N: int, D: int) -> bool:
    """Associates in (Z/p^N)[T]/(T^D): mutual divisibility."""
    R = TruncRing(p, N, D)
    x = R.elt([p ** f.mu * c for c in f.distinguished])
    y = R.elt([p ** g.mu * c for c in g.distinguished])
    return R.divides(x, y) and R.divides(y, x)


# --- Koszul homology by enumeration ----------------------------------------------------

@dataclass
class TinyHomology:
    """ker / im inside a chain group of a tiny module, kept as explicit sets."""

    degree: int
    kernel: List[Tuple[int, ...]]
    image: set
    scale: callable

    @property
    def size(self) -> int:
        return len(self.kernel) // len(self.image)

    def profile(self, N: int, p: int) -> List[int]:
        """log_p |H[p^e]| for e = 1..N."""
        out = []
        for e in range(1, N + 1):
            n = sum(1 for x in self.kernel if self.scale(x, p ** e) in self.image)
            count = n // len(self.image)
            out.append(_log(count, p))
        return out


def _log(n: int, p: int) -> int:
    e = 0
    while n > 1:
        n //= p
        e += 1
    return e


def brute_koszul(M: TinyModule) -> List[TinyHomology]:
    d = M.d
    if d > 2:
        raise SizeBound("the oracle handles d <= 2")
    n = M.size
    for j in range(d + 1):
        if n ** comb(d, j) > CHAIN_BOUND:
            raise SizeBound(f"chain group of size {n ** comb(d, j)}")
    hmaps = [M.class_map(h) for h in M.actions]
    zero = M.cls[tuple(0 for _ in M.mods)]

    def subsets(j):
        return list(combinations(range(d), j))

    def boundary(j, x):
        if j == 0:
            return ()
        src, dst = subsets(j), subsets(j - 1)
        out = [zero] * len(dst)
        for c, S in enumerate(src):
            v = x[c]
            for t, s in enumerate(S):
                w = M.add_ids(hmaps[s][v], M.neg_id(v))
                if t % 2:
                    w = M.neg_id(w)
                r = dst.index(S[:t] + S[t + 1:])
                out[r] = M.add_ids(out[r], w)
        return tuple(out)

    def scale(x, k):
        return tuple(M.scale_id(v, k) for v in x)

    chains = [list(product(range(n), repeat=comb(d, j))) for j in range(d + 1)]
    out = []
    for j in range(d + 1):
        zero_j = tuple([zero] * comb(d, j - 1)) if j else ()
        ker = [x for x in chains[j] if boundary(j, x) == zero_j]
        if j < d:
            im = {boundary(j + 1, y) for y in chains[j + 1]}
        else:
            im = {tuple([zero] * comb(d, j))}
        out.append(TinyHomology(j, ker, im, scale))
    return out


# --- random instances ---------------------------------------------------------------------

def random_instance(rng: random.Random):
    """An in-bounds instance: (p, N, D, kind, data, actions)."""
    while True:
        p = rng.choice([2, 3])
        N = rng.choice([1, 2])
        d = rng.choice([0, 1, 2])
        if rng.random() < 0.6:
            k = rng.choice([1, 2])
            D = 3
            deg = 2 if k == 1 else 1
            P = [[[rng.randrange(p ** N) for _ in range(deg + 1)] for _ in range(k)] for _ in range(k)]
            # commuting actions: multiplication by 1-unit polynomials u + cT
            acts = []
            for _ in range(d):
                g = [1 + p * rng.randrange(p ** N), rng.randrange(p ** N)]
                acts.append([[g if i == j else [0] for j in range(k)] for i in range(k)])
            data = P
            kind = "presentation"
            if p ** (N * k * D) > TABLE_BOUND:
                continue
        else:
            k = rng.choice([1, 2])
            D = 3
            orders = [rng.randint(1, N) for _ in range(k)]
            theta = _random_nilpotent(rng, p, orders)
            acts = []
            for _ in range(d):
                c0, c1 = 1 + p * rng.randrange(p), rng.randrange(p)
                acts.append([[((c0 if i == j else 0) + c1 * theta[i][j]) for j in range(k)] for i in range(k)])
            data = (orders, theta)
            kind = "finite"
        return p, N, D, kind, data, acts


def _random_nilpotent(rng: random.Random, p: int, orders: Sequence[int]):
    k = len(orders)
    theta = [[0] * k for _ in range(k)]
    for i in range(k):
        for j in range(k):
            # strictly upper triangular part any, diagonal divisible by p
            if j > i or i == j:
                base = p if i == j else 1
                val = base * rng.randrange(p ** orders[i])
                # well-definedness: theta_ij p^{n_j} = 0 mod p^{n_i}
                shift = max(orders[i] - orders[j], 0)
                theta[i][j] = (val * p ** shift) % p ** orders[i]
    return theta


def fuzz_seed(seed: Optional[int] = None) -> int:
    if seed is None:
        seed = random.SystemRandom().randrange(2 ** 32)
    log.info("oracle fuzz seed %d", seed)
    return seed
