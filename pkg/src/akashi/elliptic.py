"""Local data of elliptic curves over Q: point counts, Euler factors, local series."""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from sympy import isprime

from .errors import BadReduction, PlaceDividesP, PrimeTooLarge, ValuationAtPrecisionCap
from .padic import PadicInt, vp
from .series import CharElement, LambdaSeries, normalize_mod_units, substitute_tower

DEFAULT_MAX_ENUM = 10 ** 6
REDUCTIONS = ("good", "split_mult", "nonsplit_mult", "additive")
FROBENIUS_CONVENTIONS = ("arithmetic", "geometric")


def max_enum() -> int:
    return int(os.environ.get("AKASHI_MAX_ENUM", DEFAULT_MAX_ENUM))


@dataclass(frozen=True)
class CurveData:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6."""

    a1: int
    a2: int
    a3: int
    a4: int
    a6: int

    def __post_init__(self):
        if self.discriminant == 0:
            raise BadReduction("singular curve (discriminant 0)")

    @classmethod
    def from_list(cls, a: Sequence[int]) -> "CurveData":
        if len(a) == 2:  # short form [a4, a6]
            a = [0, 0, 0, a[0], a[1]]
        if len(a) != 5:
            raise ValueError("curve needs [a1, a2, a3, a4, a6]")
        return cls(*map(int, a))

    @property
    def coefficients(self) -> Tuple[int, ...]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def b_invariants(self) -> Tuple[int, int, int, int]:
        a1, a2, a3, a4, a6 = self.coefficients
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return b2, b4, b6, b8

    @property
    def discriminant(self) -> int:
        b2, b4, b6, b8 = self.b_invariants
        return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    @property
    def j_invariant(self) -> Fraction:
        b2, b4, _, _ = self.b_invariants
        c4 = b2 * b2 - 24 * b4
        return Fraction(c4 ** 3, self.discriminant)

    def has_nonintegral_j_at(self, ell: int) -> bool:
        return self.j_invariant.denominator % ell == 0


def count_points(curve: CurveData, ell: int, bound: Optional[int] = None) -> int:
    """#E(F_ell), point at infinity included."""
    bound = max_enum() if bound is None else bound
    if ell > bound:
        raise PrimeTooLarge(f"{ell} exceeds the enumeration bound {bound}")
    if not isprime(ell):
        raise ValueError(f"{ell} is not prime")
    if curve.discriminant % ell == 0:
        raise BadReduction(f"the model is singular mod {ell}")
    a1, a2, a3, a4, a6 = (c % ell for c in curve.coefficients)
    if ell == 2:
        return 1 + sum(
            1
            for x in range(2)
            for y in range(2)
            if (y * y + a1 * x * y + a3 * y - x ** 3 - a2 * x * x - a4 * x - a6) % 2 == 0
        )
    # (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
    b2, b4, b6, _ = curve.b_invariants
    half = (ell - 1) // 2
    count = 1
    for x in range(ell):
        r = (4 * x ** 3 + b2 * x * x + 2 * b4 * x + b6) % ell
        if r == 0:
            count += 1
        elif pow(r, half, ell) == 1:
            count += 2
    return count


def trace_of_frobenius(curve: CurveData, ell: int) -> int:
    return ell + 1 - count_points(curve, ell)


def hasse_ok(a: int, q: int) -> bool:
    return a * a <= 4 * q


@dataclass(frozen=True)
class LocalPlaceData:
    ell: int
    f_deg: int = 1
    reduction: str = "good"
    a_v: Optional[int] = None
    c_v: int = 0

    def __post_init__(self):
        if self.reduction not in REDUCTIONS:
            raise ValueError(f"reduction must be one of {REDUCTIONS}")
        if self.f_deg < 1 or self.c_v < 0:
            raise ValueError("need f_deg >= 1 and c_v >= 0")
        forced = {"split_mult": 1, "nonsplit_mult": -1, "additive": 0}.get(self.reduction)
        if forced is not None:
            if self.a_v is not None and self.a_v != forced:
                raise ValueError(f"a_v must be {forced} for {self.reduction} reduction")
            object.__setattr__(self, "a_v", forced)
        elif self.a_v is None:
            raise ValueError("good reduction needs a_v")
        elif not hasse_ok(self.a_v, self.q):
            raise ValueError(f"a_v = {self.a_v} violates the Hasse bound for q = {self.q}")

    @property
    def q(self) -> int:
        return self.ell ** self.f_deg

    @classmethod
    def from_curve(cls, curve: CurveData, ell: int, reduction: Optional[str] = None, c_v: int = 0) -> "LocalPlaceData":
        """Good places get a_v by point counting; bad places need their type supplied."""
        if curve.discriminant % ell:
            return cls(ell, 1, "good", trace_of_frobenius(curve, ell), c_v)
        if reduction is None or reduction == "good":
            raise BadReduction(f"bad reduction at {ell}: supply the reduction type")
        return cls(ell, 1, reduction, None, c_v)


def local_polynomial(place: LocalPlaceData) -> Tuple[int, int, int]:
    """Coefficients of P_v(X), ascending."""
    if place.reduction == "good":
        return (1, -place.a_v, place.q)
    return (1, -place.a_v, 0)


def euler_factor_at_one(place: LocalPlaceData) -> Fraction:
    """P_v(1/q_v) = L_v(E, 1)^{-1}."""
    c0, c1, c2 = local_polynomial(place)
    x = Fraction(1, place.q)
    return c0 + c1 * x + c2 * x * x


def fraction_valuation(x: Fraction, p: int) -> Optional[int]:
    if x == 0:
        return None
    return vp(x.numerator, p) - vp(x.denominator, p)


def local_correction_series(
    place: LocalPlaceData, p: int, N: int, D: int, convention: str = "arithmetic"
) -> CharElement:
    """Characteristic element of J_v over the cyclotomic line.

    g(T) = P_v(q^{-1} (1+T)) over Lambda(Gamma_x), moved to Lambda(Gamma) by
    T -> (1+T)^{p^c_v} - 1.  The geometric convention uses (1+T)^{-1}.
    Split and nonsplit labels are never changed along the tower: for p >= 5 the
    residue extensions there have odd degree, which preserves both types.
    """
    if place.ell == p:
        raise PlaceDividesP(f"place above {p}")
    if convention not in FROBENIUS_CONVENTIONS:
        raise ValueError(f"unknown Frobenius convention {convention!r}")
    m = p ** N
    D = max(D, 2 * p ** place.c_v + 1)
    qinv = pow(place.q, -1, m)
    if convention == "arithmetic":
        x = LambdaSeries(p, N, D, [qinv, qinv])
    else:
        x = LambdaSeries(p, N, D, [qinv * (-1) ** i for i in range(D)])
    c0, c1, c2 = local_polynomial(place)
    g = LambdaSeries.constant(p, N, D, c0) + x * c1 + x * x * c2
    if place.c_v:
        g = substitute_tower(g, place.c_v, D)
    return normalize_mod_units(g)


def mu_valuation(u: PadicInt) -> int:
    """v_p(u - 1) = log_p #mu_{p^infinity}(F_v) for u = chi(gamma_v)."""
    w = vp((u.value - 1) % u.modulus, u.prime)
    if w is None:
        raise ValuationAtPrecisionCap(f"{u!r} is 1 mod p^{u.precision}")
    return w
