import pytest

from akashi.errors import NotAUnit, PrecisionMismatch
from akashi.padic import AtLeast, PadicInt, power_tower, unit_inverse, valuation, vp


@pytest.mark.parametrize(
    "p, N, value, expected",
    [(5, 3, 50, 2), (5, 3, 0, AtLeast(3)), (7, 2, 6, 0)],
)
def test_valuation_examples(p, N, value, expected):
    assert valuation(PadicInt(p, N, value)) == expected


@pytest.mark.parametrize("p, N, value, expected", [(5, 2, 2, 13), (5, 1, 4, 4)])
def test_unit_inverse_examples(p, N, value, expected):
    inv = unit_inverse(PadicInt(p, N, value))
    assert inv.value == expected
    assert (inv * value).value == 1


def test_unit_inverse_rejects_non_units():
    with pytest.raises(NotAUnit):
        unit_inverse(PadicInt(5, 2, 5))
    with pytest.raises(NotAUnit):
        unit_inverse(PadicInt(5, 2, 0))


@pytest.mark.parametrize("p, N, u, c, expected", [(5, 3, 6, 0, 6), (5, 3, 6, 1, 26), (5, 2, 1, 3, 1)])
def test_power_tower_examples(p, N, u, c, expected):
    assert power_tower(PadicInt(p, N, u), c).value == expected


def test_power_tower_matches_pow():
    for c in range(4):
        assert power_tower(PadicInt(3, 5, 4), c).value == pow(4, 3 ** c, 3 ** 5)


def test_values_are_reduced():
    x = PadicInt(3, 2, -1)
    assert x.value == 8
    assert (x + 1).is_zero()


def test_mixed_precision_is_refused():
    with pytest.raises(PrecisionMismatch):
        PadicInt(5, 2, 1) + PadicInt(5, 3, 1)


def test_vp_of_zero_is_none():
    assert vp(0, 3) is None
    assert vp(-54, 3) == 3
