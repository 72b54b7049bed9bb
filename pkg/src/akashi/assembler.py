"""Assembly of Akashi-series formulas from characteristic elements and local data."""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from .elliptic import (
    LocalPlaceData,
    euler_factor_at_one,
    fraction_valuation,
    local_correction_series,
    mu_valuation,
)
from .errors import LeadingTermBelowPrecision, PrecisionMismatch
from .modules import char_of_presentation, rank_one_twist
from .padic import PadicInt, power_tower
from .series import CharElement, leading_term_at_zero, ord_at_zero

HYPOTHESES = ("strongly-admissible", "reduction-R", "MH-sigma", "no-cm")


@dataclass(frozen=True)
class FormulaReport:
    rhs: CharElement
    r: int
    ord_at_zero: int
    leading_valuation: Optional[int]
    factors: Tuple[Tuple[str, CharElement], ...]
    assumptions: Tuple[str, ...] = ()
    notes: Tuple[str, ...] = ()

    def product_of_factors(self) -> CharElement:
        return _product([c for _, c in self.factors], self.rhs.prime, self.rhs.precision)

    def consistent(self) -> bool:
        return self.product_of_factors() == self.rhs


def _product(chars: Sequence[CharElement], p: int, N: int) -> CharElement:
    out = CharElement.one(p, N)
    for c in chars:
        out = out * c
    return out


def _leading(f: CharElement) -> Optional[int]:
    try:
        return leading_term_at_zero(f)
    except LeadingTermBelowPrecision:
        return None


def t_power(p: int, N: int, r: int) -> CharElement:
    return CharElement.from_poly(p, N, [0] * r + [1])


def _require_same(chars: Sequence[CharElement]):
    keys = {(c.prime, c.precision) for c in chars}
    if len(keys) > 1:
        raise PrecisionMismatch(f"factors disagree on (p, N): {sorted(keys)}")


def _report(factors, r, assumptions=(), notes=()) -> FormulaReport:
    chars = [c for _, c in factors]
    _require_same(chars)
    p, N = chars[0].prime, chars[0].precision
    rhs = _product(chars, p, N)
    return FormulaReport(rhs, r, ord_at_zero(rhs), _leading(rhs), tuple(factors), tuple(assumptions), tuple(notes))


def assemble_main(
    f_cyc: CharElement, local_factors: Sequence[CharElement], r: int, assumptions: Sequence[str] = ()
) -> FormulaReport:
    """T^r * f_cyc * prod(local factors)."""
    if r < 0:
        raise ValueError("r must be >= 0")
    factors = [(f"T^{r}", t_power(f_cyc.prime, f_cyc.precision, r)), ("f_cyc", f_cyc)]
    factors += [(f"J_{i}", c) for i, c in enumerate(local_factors)]
    return _report(factors, r, assumptions)


def split_factor(u: PadicInt, c: int, D: int = 2, dual_convention: str = "direct") -> CharElement:
    """char(rank_one_twist(u^(p^c))) = T + 1 - chi(gamma_v), up to a unit."""
    return char_of_presentation(rank_one_twist(power_tower(u, c), D, dual_convention))


def assemble_gl2(
    f_cyc: CharElement,
    M_places: Sequence[LocalPlaceData],
    R_places: Sequence[Tuple[PadicInt, int]],
    D: int = 4,
    frobenius_convention: str = "arithmetic",
    dual_convention: str = "direct",
    assumptions: Sequence[str] = (),
) -> FormulaReport:
    p, N = f_cyc.prime, f_cyc.precision
    notes = []
    if p < 5:
        msg = f"p = {p} < 5: the GL2 formula is only asserted for p >= 5"
        warnings.warn(msg)
        notes.append(msg)
    factors = [("f_cyc", f_cyc)]
    for place in M_places:
        ch = local_correction_series(place, p, N, D, frobenius_convention)
        factors.append((f"J_v(ell={place.ell})", ch))
    r = 0
    for u, c in R_places:
        if (u.prime, u.precision) != (p, N):
            raise PrecisionMismatch("chi(gamma_v) must share (p, N) with f_cyc")
        if (u.value - 1) % p:
            notes.append(f"chi = {u.value} is not a 1-unit; its factor is a unit")
        ch = split_factor(u, c, D, dual_convention)
        if ch.lam == 1 and ch.distinguished[0] == 0:
            r += 1
        factors.append((f"T+1-chi(gamma_v) (u={u.value}, c={c})", ch))
    return _report(factors, r, assumptions, notes)


@dataclass(frozen=True)
class EulerCorrection:
    total: int
    l_factor_part: int
    mu_part: int
    notes: Tuple[str, ...] = ()

    def __int__(self):
        return self.total


def euler_characteristic_details(
    M_places: Sequence[LocalPlaceData], R_places: Sequence[Tuple[PadicInt, int]], p: int
) -> EulerCorrection:
    lpart = 0
    for place in M_places:
        if place.ell == p:
            continue
        v = fraction_valuation(euler_factor_at_one(place), p)
        lpart += v or 0
    mpart = sum(mu_valuation(power_tower(u, c)) for u, c in R_places)
    note = "L-factor part uses v_p(P_v(1/q)) = -v_p(L_v(E,1)) (inverse normalisation)"
    return EulerCorrection(lpart + mpart, lpart, mpart, (note,) if M_places else ())


def euler_characteristic_correction(
    M_places: Sequence[LocalPlaceData], R_places: Sequence[Tuple[PadicInt, int]], p: int
) -> int:
    """sum over M of v_p(P_v(1/q_v)) plus sum over R of v_p(chi(gamma_v) - 1)."""
    return euler_characteristic_details(M_places, R_places, p).total


def cyclotomic_bookkeeping(f_sel: CharElement, locals_sprime: Sequence[CharElement]) -> CharElement:
    chars = [f_sel, *locals_sprime]
    _require_same(chars)
    return _product(chars, f_sel.prime, f_sel.precision)
