"""Integers modulo p^N with the prime and precision carried along."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .errors import NotAUnit, PrecisionMismatch


class AtLeast:
    """Valuation of something indistinguishable from zero: ">= N"."""

    __slots__ = ("bound",)

    def __init__(self, bound: int):
        self.bound = bound

    def __eq__(self, other):
        return isinstance(other, AtLeast) and other.bound == self.bound

    def __hash__(self):
        return hash(("AtLeast", self.bound))

    def __repr__(self):
        return f">= {self.bound}"


def vp(n: int, p: int) -> Union[int, None]:
    """p-adic valuation of a nonzero integer; None for 0."""
    if n == 0:
        return None
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def centered(value: int, modulus: int) -> int:
    """Representative of value mod modulus in (-modulus/2, modulus/2]."""
    value %= modulus
    if 2 * value > modulus:
        value -= modulus
    return value


@dataclass(frozen=True)
class PadicInt:
    prime: int
    precision: int
    value: int

    def __post_init__(self):
        if self.prime < 2:
            raise ValueError("prime must be >= 2")
        if self.precision < 1:
            raise ValueError("precision must be >= 1")
        object.__setattr__(self, "value", self.value % self.prime ** self.precision)

    @property
    def modulus(self) -> int:
        return self.prime ** self.precision

    def _coerce(self, other) -> int:
        if isinstance(other, PadicInt):
            if other.prime != self.prime or other.precision != self.precision:
                raise PrecisionMismatch(
                    f"(p={self.prime}, N={self.precision}) vs (p={other.prime}, N={other.precision})"
                )
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def _make(self, v: int) -> "PadicInt":
        return PadicInt(self.prime, self.precision, v)

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._make(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._make(self.value - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._make(o - self.value)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._make(self.value * o)

    __rmul__ = __mul__

    def __neg__(self):
        return self._make(-self.value)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == other % self.modulus
        if isinstance(other, PadicInt):
            return (self.prime, self.precision, self.value) == (other.prime, other.precision, other.value)
        return NotImplemented

    def __hash__(self):
        return hash((self.prime, self.precision, self.value))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.prime}^{self.precision})"

    def is_zero(self) -> bool:
        return self.value == 0

    def is_unit(self) -> bool:
        return self.value % self.prime != 0

    def lift(self) -> int:
        """Centred integer lift."""
        return centered(self.value, self.modulus)


def valuation(x: PadicInt) -> Union[int, AtLeast]:
    if x.value == 0:
        return AtLeast(x.precision)
    return vp(x.value, x.prime)


def unit_inverse(x: PadicInt) -> PadicInt:
    if not x.is_unit():
        raise NotAUnit(f"{x!r} has positive valuation")
    return PadicInt(x.prime, x.precision, pow(x.value, -1, x.modulus))


def power_tower(u: PadicInt, c: int) -> PadicInt:
    """u^(p^c) mod p^N, by c successive p-th powers."""
    if c < 0:
        raise ValueError("c must be >= 0")
    if not u.is_unit():
        raise NotAUnit(f"{u!r} is not a unit")
    m = u.modulus
    v = u.value
    for _ in range(c):
        v = pow(v, u.prime, m)
    return PadicInt(u.prime, u.precision, v)
