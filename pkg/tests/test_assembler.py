import pytest

from akashi.assembler import (
    assemble_gl2,
    assemble_main,
    cyclotomic_bookkeeping,
    euler_characteristic_correction,
    split_factor,
)
from akashi.elliptic import LocalPlaceData, local_correction_series
from akashi.errors import PrecisionMismatch
from akashi.padic import PadicInt
from akashi.series import CharElement, leading_term_at_zero

p, N = 5, 4


def poly(coeffs, mu=0, prec=N):
    return CharElement.from_poly(p, prec, coeffs, mu)


ONE = CharElement.one(p, N)


def test_main_trivial():
    rep = assemble_main(ONE, [], 0)
    assert rep.rhs.is_one()
    assert rep.consistent()


def test_main_extra_zero():
    rep = assemble_main(poly([p, 1]), [], 1)
    assert rep.rhs == poly([0, p, 1])
    assert (rep.ord_at_zero, rep.leading_valuation) == (1, 1)


def test_main_with_split_local():
    local = local_correction_series(LocalPlaceData(11, reduction="split_mult"), p, N, 4)
    rep = assemble_main(CharElement.one(p, local.precision), [local], 1)
    assert (rep.ord_at_zero, rep.leading_valuation) == (1, 1)


def test_main_precision_mismatch():
    with pytest.raises(PrecisionMismatch):
        assemble_main(ONE, [CharElement.one(p, 3)], 0)


def test_gl2_empty():
    f = poly([p, 1])
    assert assemble_gl2(f, [], []).rhs == f


def test_gl2_split_place():
    rep = assemble_gl2(ONE, [], [(PadicInt(p, N, 6), 0)])
    label, factor = rep.factors[-1]
    assert factor == poly([-5, 1])
    assert leading_term_at_zero(factor) == 1
    assert rep.r == 0


def test_gl2_tower_place_valuation():
    # 1 - 6^5 = -7775 = -5^2 * 311
    factor = split_factor(PadicInt(p, N, 6), 1)
    assert factor == poly([1 - 6 ** 5, 1])
    assert leading_term_at_zero(factor) == 2


def test_gl2_trivial_character_counts_extra_zero():
    rep = assemble_gl2(ONE, [], [(PadicInt(p, N, 1), 0)])
    assert rep.r == 1 and rep.ord_at_zero == 1


def test_gl2_small_prime_warns():
    with pytest.warns(UserWarning):
        rep = assemble_gl2(CharElement.one(3, 2), [], [])
    assert rep.notes


def test_euler_characteristic_examples():
    assert euler_characteristic_correction([], [], p) == 0
    assert euler_characteristic_correction([], [(PadicInt(p, N, 6), 0)], p) == 1
    assert euler_characteristic_correction([LocalPlaceData(11, reduction="split_mult")], [], p) == 1


def test_bookkeeping():
    f = poly([p, 1])
    assert cyclotomic_bookkeeping(f, []) == f
    assert cyclotomic_bookkeeping(poly([0, 1]), [ONE]) == poly([0, 1])
    local = poly([p, 1])
    prod = cyclotomic_bookkeeping(f, [local])
    assert leading_term_at_zero(prod) == leading_term_at_zero(f) + leading_term_at_zero(local)
