"""Truncated elements of Z_p[[T]], Weierstrass preparation, characteristic elements."""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .errors import (
    IndistinguishableFromZero,
    LeadingTermBelowPrecision,
    NonIntegralAkashi,
    PrecisionError,
    PrecisionMismatch,
    TruncationTooSmall,
)
from .padic import PadicInt, centered, vp


# --- dense helpers on ascending int lists mod m ------------------------------

def _trim(a: List[int]) -> List[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _mul_trunc(a: Sequence[int], b: Sequence[int], m: int, D: Optional[int]) -> List[int]:
    if not a or not b:
        return []
    n = len(a) + len(b) - 1
    if D is not None:
        n = min(n, D)
    out = [0] * n
    for i, x in enumerate(a):
        if not x or i >= n:
            continue
        for j in range(min(len(b), n - i)):
            out[i + j] += x * b[j]
    return [c % m for c in out]


def _divmod_monic(f: Sequence[int], g: Sequence[int], m: int) -> Tuple[List[int], List[int]]:
    """Polynomial division by a monic g over Z/m."""
    f = [c % m for c in f]
    dg = len(g) - 1
    if len(f) <= dg:
        return [], _trim(f)
    q = [0] * (len(f) - dg)
    for i in range(len(f) - 1, dg - 1, -1):
        c = f[i]
        if c:
            q[i - dg] = c
            for j in range(dg + 1):
                f[i - dg + j] = (f[i - dg + j] - c * g[j]) % m
    return _trim(q), _trim(f[:dg])


def _series_inverse(a: Sequence[int], n: int, p: int, m: int) -> List[int]:
    """Inverse of a (a[0] a unit mod p) modulo (m, T^n)."""
    inv0 = pow(a[0] % m, -1, m)
    out = [0] * n
    out[0] = inv0
    for k in range(1, n):
        s = 0
        for j in range(1, min(k, len(a) - 1) + 1):
            s += a[j] * out[k - j]
        out[k] = (-s * inv0) % m
    return out


# --- LambdaSeries ------------------------------------------------------------

class LambdaSeries:
    """sum a_i T^i taken mod (p^N, T^D); coefficients stored as ints in [0, p^N)."""

    __slots__ = ("p", "N", "D", "_c")

    def __init__(self, p: int, N: int, D: int, coeffs: Sequence[int] = ()):
        if D < 1:
            raise ValueError("t_degree must be >= 1")
        if N < 1:
            raise ValueError("p_precision must be >= 1")
        m = p ** N
        c = [int(x) % m for x in list(coeffs)[:D]]
        c += [0] * (D - len(c))
        self.p, self.N, self.D = p, N, D
        self._c = tuple(c)

    @classmethod
    def from_padics(cls, coeffs: Sequence[PadicInt], D: Optional[int] = None) -> "LambdaSeries":
        p, N = coeffs[0].prime, coeffs[0].precision
        if any((c.prime, c.precision) != (p, N) for c in coeffs):
            raise PrecisionMismatch("coefficients disagree on (p, N)")
        return cls(p, N, D or len(coeffs), [c.value for c in coeffs])

    @classmethod
    def T(cls, p, N, D):
        return cls(p, N, D, [0, 1])

    @classmethod
    def constant(cls, p, N, D, c):
        return cls(p, N, D, [c])

    @property
    def modulus(self) -> int:
        return self.p ** self.N

    @property
    def ints(self) -> Tuple[int, ...]:
        return self._c

    @property
    def coeffs(self) -> List[PadicInt]:
        return [PadicInt(self.p, self.N, c) for c in self._c]

    def coeff(self, i: int) -> PadicInt:
        return PadicInt(self.p, self.N, self._c[i] if i < self.D else 0)

    def lifts(self) -> List[int]:
        """Centred integer lifts, ascending."""
        return [centered(c, self.modulus) for c in self._c]

    def degree(self) -> int:
        for i in range(self.D - 1, -1, -1):
            if self._c[i]:
                return i
        return -1

    def is_zero(self) -> bool:
        return not any(self._c)

    def _check(self, other: "LambdaSeries"):
        if (self.p, self.N, self.D) != (other.p, other.N, other.D):
            raise PrecisionMismatch(
                f"(p,N,D)=({self.p},{self.N},{self.D}) vs ({other.p},{other.N},{other.D})"
            )

    def _lift_other(self, other):
        if isinstance(other, int):
            return LambdaSeries(self.p, self.N, self.D, [other])
        if isinstance(other, PadicInt):
            if (other.prime, other.precision) != (self.p, self.N):
                raise PrecisionMismatch("scalar precision differs")
            return LambdaSeries(self.p, self.N, self.D, [other.value])
        if isinstance(other, LambdaSeries):
            self._check(other)
            return other
        return None

    def __add__(self, other):
        o = self._lift_other(other)
        if o is None:
            return NotImplemented
        return LambdaSeries(self.p, self.N, self.D, [a + b for a, b in zip(self._c, o._c)])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift_other(other)
        if o is None:
            return NotImplemented
        return LambdaSeries(self.p, self.N, self.D, [a - b for a, b in zip(self._c, o._c)])

    def __rsub__(self, other):
        o = self._lift_other(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return LambdaSeries(self.p, self.N, self.D, [-a for a in self._c])

    def __mul__(self, other):
        o = self._lift_other(other)
        if o is None:
            return NotImplemented
        return LambdaSeries(self.p, self.N, self.D, _mul_trunc(self._c, o._c, self.modulus, self.D))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = LambdaSeries(self.p, self.N, self.D, [1])
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, LambdaSeries):
            return NotImplemented
        return (self.p, self.N, self.D, self._c) == (other.p, other.N, other.D, other._c)

    def __hash__(self):
        return hash((self.p, self.N, self.D, self._c))

    def __repr__(self):
        return f"LambdaSeries({format_poly(self._c)}; p={self.p}, N={self.N}, D={self.D})"

    def reduce(self, N: Optional[int] = None, D: Optional[int] = None) -> "LambdaSeries":
        """Same element at a coarser p-precision and/or a different T-degree."""
        N = self.N if N is None else N
        D = self.D if D is None else D
        if N > self.N:
            raise PrecisionMismatch("cannot raise p-precision")
        return LambdaSeries(self.p, N, D, self._c)


def format_poly(coeffs: Sequence[int], var: str = "T") -> str:
    terms = []
    for i, c in enumerate(coeffs):
        if not c:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            mono = var if i == 1 else f"{var}^{i}"
            terms.append(mono if c == 1 else f"{c}*{mono}")
    return " + ".join(reversed(terms)) if terms else "0"


# --- Weierstrass preparation --------------------------------------------------

@dataclass(frozen=True)
class WeierstrassDecomposition:
    mu: int
    lam: int
    distinguished: Tuple[int, ...]  # ascending, monic, mod p^precision
    unit: LambdaSeries
    prime: int
    precision: int  # N - mu

    def reconstruct(self) -> LambdaSeries:
        """p^mu * distinguished * unit at the input precision."""
        p, N = self.prime, self.precision + self.mu
        D = self.unit.D
        prod = _mul_trunc(self.distinguished, self.unit.ints, p ** self.precision, D)
        return LambdaSeries(p, N, D, [p ** self.mu * c for c in prod])


def distinguished_factor(g: Sequence[int], lam: int, p: int, m: int) -> Tuple[List[int], List[int]]:
    """Split a polynomial g over Z/m (m a power of p), whose first unit coefficient
    sits at index lam, as g = P * U with P distinguished of degree lam.

    Newton iteration on P: with g = Q P + R, replace P by P + R Q^{-1} mod P.
    Returns (P, U) as ascending lists; U = g div P is a polynomial.
    """
    if lam == 0:
        return [1], [c % m for c in g]
    P = [0] * lam + [1]
    e, t = 0, 1
    while t < m:
        t *= p
        e += 1
    n_bits = e.bit_length() + 1
    for _ in range(2 * e + 8):
        Q, R = _divmod_monic(g, P, m)
        if not R:
            return P, Q
        # Q is invertible in (Z/m)[T]/(P); its reduction mod p is a unit of F_p[T]/(T^lam).
        x = _series_inverse(Q + [0] * lam, lam, p, m)
        for _ in range(n_bits):
            qx = _divmod_monic(_mul_trunc(Q, x, m, None), P, m)[1]
            two_minus = [(-c) % m for c in qx] + [0] * (lam - len(qx))
            two_minus[0] = (two_minus[0] + 2) % m
            x = _divmod_monic(_mul_trunc(x, two_minus, m, None), P, m)[1]
        delta = _divmod_monic(_mul_trunc(R, x, m, None), P, m)[1]
        delta += [0] * (lam - len(delta))
        P = [(a + b) % m for a, b in zip(P[:lam], delta)] + [1]
    raise PrecisionError("Weierstrass iteration did not converge")  # pragma: no cover


def weierstrass_prepare(f: LambdaSeries) -> WeierstrassDecomposition:
    p, N = f.p, f.N
    nonzero = [c for c in f.ints if c]
    if not nonzero:
        raise IndistinguishableFromZero(f"{f!r} is 0 mod p^{N}")
    mu = min(vp(c, p) for c in nonzero)
    Np = N - mu
    m = p ** Np
    pm = p ** mu
    g = [(c // pm) % m for c in f.ints]
    lam = next((i for i, c in enumerate(g) if c % p), None)
    if lam is None:  # pragma: no cover - mu choice guarantees a unit coefficient
        raise TruncationTooSmall("no unit coefficient")
    P, U = distinguished_factor(_trim(list(g)), lam, p, m)
    unit = LambdaSeries(p, Np, f.D, U)
    return WeierstrassDecomposition(mu, lam, tuple(P), unit, p, Np)


# --- characteristic elements --------------------------------------------------

@dataclass(frozen=True, eq=False)
class CharElement:
    """p^mu * distinguished, a class modulo units of Z_p[[T]].

    ``distinguished`` is ascending and monic with coefficients known mod
    p^precision. ``t_degree`` records the truncation it came from.
    """

    prime: int
    precision: int
    mu: int
    distinguished: Tuple[int, ...]
    t_degree: Optional[int] = None

    def __post_init__(self):
        m = self.prime ** self.precision
        d = tuple(int(c) % m for c in self.distinguished)
        if not d or d[-1] != 1 % m:
            raise ValueError("distinguished polynomial must be monic")
        if any(c % self.prime for c in d[:-1]):
            raise ValueError(f"not distinguished: {d}")
        object.__setattr__(self, "distinguished", d)

    @classmethod
    def one(cls, p: int, N: int, D: Optional[int] = None) -> "CharElement":
        return cls(p, N, 0, (1,), D)

    @classmethod
    def from_poly(cls, p: int, N: int, dist: Sequence[int], mu: int = 0, D=None) -> "CharElement":
        return cls(p, N, mu, tuple(dist), D)

    @property
    def lam(self) -> int:
        return len(self.distinguished) - 1

    def is_one(self) -> bool:
        return self.mu == 0 and self.lam == 0

    def at_precision(self, N: int) -> "CharElement":
        if N > self.precision:
            raise PrecisionMismatch("cannot raise precision")
        return CharElement(self.prime, N, self.mu, self.distinguished, self.t_degree)

    def _common(self, other: "CharElement") -> int:
        if other.prime != self.prime:
            raise PrecisionMismatch("different primes")
        return min(self.precision, other.precision)

    def __eq__(self, other):
        if not isinstance(other, CharElement):
            return NotImplemented
        if other.prime != self.prime:
            return False
        n = self._common(other)
        m = self.prime ** n
        return (
            self.mu == other.mu
            and self.lam == other.lam
            and all((a - b) % m == 0 for a, b in zip(self.distinguished, other.distinguished))
        )

    def __hash__(self):
        return hash((self.prime, self.mu, self.lam))

    def __mul__(self, other: "CharElement") -> "CharElement":
        n = self._common(other)
        m = self.prime ** n
        d = _mul_trunc(self.distinguished, other.distinguished, m, None)
        D = None
        if self.t_degree and other.t_degree:
            D = min(self.t_degree, other.t_degree)
        return CharElement(self.prime, n, self.mu + other.mu, tuple(d), D)

    def __pow__(self, e: int) -> "CharElement":
        out = CharElement.one(self.prime, self.precision, self.t_degree)
        for _ in range(e):
            out = out * self
        return out

    def divide(self, other: "CharElement") -> "CharElement":
        """Exact quotient; NonIntegralAkashi if other does not divide self."""
        n = self._common(other)
        m = self.prime ** n
        if other.mu > self.mu:
            raise NonIntegralAkashi("mu of denominator exceeds numerator", self, other)
        q, r = _divmod_monic(self.distinguished, other.distinguished, m)
        if r:
            raise NonIntegralAkashi(
                f"{format_poly(other.distinguished)} does not divide {format_poly(self.distinguished)} mod {self.prime}^{n}",
                self,
                other,
            )
        return CharElement(self.prime, n, self.mu - other.mu, tuple(q) or (1,), self.t_degree)

    def as_series(self, D: Optional[int] = None) -> LambdaSeries:
        """p^mu * distinguished as a LambdaSeries (precision mu + precision)."""
        D = D or max(self.lam + 1, self.t_degree or 1)
        N = self.mu + self.precision
        return LambdaSeries(self.prime, N, D, [self.prime ** self.mu * c for c in self.distinguished])

    def __repr__(self):
        pre = f"{self.prime}^{self.mu} * " if self.mu else ""
        return f"CharElement({pre}{format_poly(self.distinguished)}; mod {self.prime}^{self.precision})"


def normalize_mod_units(f: LambdaSeries) -> CharElement:
    w = weierstrass_prepare(f)
    return CharElement(f.p, w.precision, w.mu, w.distinguished, f.D)


def substitute_tower(f: LambdaSeries, c: int, D: Optional[int] = None) -> LambdaSeries:
    """f((1+T)^(p^c) - 1), truncated to T-degree D (default f.D).

    Exact only up to T^D: the substituted series has degree p^c times larger.
    """
    if c < 0:
        raise ValueError("c must be >= 0")
    D = f.D if D is None else D
    p, m = f.p, f.modulus
    # (1+T)^(p^c) - 1 mod (m, T^D)
    s = [1]
    base = [1, 1]
    e = p ** c
    while e:
        if e & 1:
            s = _mul_trunc(s, base, m, D)
        base = _mul_trunc(base, base, m, D)
        e >>= 1
    s = list(s) + [0] * (D - len(s))
    s[0] = (s[0] - 1) % m
    out: List[int] = []
    for a in reversed(f.ints):
        out = _mul_trunc(out, s, m, D)
        if a:
            out = out or [0]
            out[0] = (out[0] + a) % m
    return LambdaSeries(p, f.N, D, out)


def ord_at_zero(f: CharElement) -> int:
    for i, c in enumerate(f.distinguished):
        if c:
            return i
    return f.lam  # pragma: no cover - monic


def leading_term_at_zero(f: CharElement) -> int:
    """v_p of the leading Taylor coefficient at T = 0 (mu included)."""
    r = ord_at_zero(f)
    g0 = f.distinguished[r]
    v = vp(g0, f.prime)
    if v is None or v >= f.precision:
        raise LeadingTermBelowPrecision(f"g(0) of {f!r} is 0 mod p^{f.precision}")
    return f.mu + v


def char_from_integer_poly(g_desc, mu: int, p: int, N: int) -> CharElement:
    """p^mu times the distinguished part of a primitive integer polynomial (sympy
    dense form, highest degree first). The integer polynomial is exact, so the
    distinguished part is correct to the full precision N."""
    asc = [int(c) for c in reversed(g_desc)]
    if not asc:
        raise IndistinguishableFromZero("zero polynomial")
    m = p ** N
    # scale away the p-part of the content so some coefficient is a unit
    v = min(vp(c, p) for c in asc if c)
    pv = p ** v
    red = _trim([(c // pv) % m for c in asc])
    lam = next(i for i, c in enumerate(red) if c % p)
    P, _ = distinguished_factor(red, lam, p, m)
    return CharElement(p, N, mu, tuple(P), len(asc))
