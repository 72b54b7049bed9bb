from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from akashi.errors import (
    IndistinguishableFromZero,
    NonIntegralAkashi,
    PrecisionMismatch,
)
from akashi.series import (
    CharElement,
    LambdaSeries,
    leading_term_at_zero,
    normalize_mod_units,
    ord_at_zero,
    substitute_tower,
    weierstrass_prepare,
)


def S(p, N, D, coeffs):
    return LambdaSeries(p, N, D, coeffs)


def expand(*factors):
    out = [1]
    for f in factors:
        prod = [0] * (len(out) + len(f) - 1)
        for i, a in enumerate(out):
            for j, b in enumerate(f):
                prod[i + j] += a * b
        out = prod
    return out


# ring operations

def test_product_of_conjugates():
    assert S(5, 2, 3, [1, 1]) * S(5, 2, 3, [1, -1]) == S(5, 2, 3, [1, 0, -1])


def test_sum_cancels_t():
    p = 5
    assert S(p, 2, 3, [p, 1]) + S(p, 2, 3, [p, -1]) == S(p, 2, 3, [2 * p])


def test_truncation_boundary():
    D = 4
    top = S(3, 2, D, [0] * (D - 1) + [1])
    assert (top * S(3, 2, D, [0, 1])).is_zero()


def test_ring_ops_need_matching_precision():
    with pytest.raises(PrecisionMismatch):
        S(5, 2, 3, [1]) + S(5, 3, 3, [1])


# Weierstrass preparation

def test_prepare_pure_p_power():
    w = weierstrass_prepare(S(5, 3, 4, [5, 5]))
    assert (w.mu, w.lam, w.distinguished) == (1, 0, (1,))
    assert w.unit == S(5, 2, 4, [1, 1])


def test_prepare_already_distinguished():
    w = weierstrass_prepare(S(5, 3, 4, [0, 5, 1]))
    assert (w.mu, w.lam, w.distinguished) == (0, 2, (0, 5, 1))
    assert w.unit == S(5, 3, 4, [1])


def test_prepare_linear_times_unit():
    f = S(5, 3, 6, expand([-5, 1], [1, 1]))
    w = weierstrass_prepare(f)
    assert (w.mu, w.lam) == (0, 1)
    assert w.distinguished == ((-5) % 125, 1)
    assert w.unit == S(5, 3, 6, [1, 1])


def test_prepare_zero_series():
    with pytest.raises(IndistinguishableFromZero):
        weierstrass_prepare(S(3, 2, 3, [9, 18]))


@settings(max_examples=200, deadline=None)
@given(
    p=st.sampled_from([2, 3, 5]),
    N=st.integers(1, 4),
    D=st.integers(1, 12),
    data=st.data(),
)
def test_prepare_roundtrip(p, N, D, data):
    coeffs = data.draw(st.lists(st.integers(0, p ** N - 1), min_size=D, max_size=D))
    f = S(p, N, D, coeffs)
    if f.is_zero():
        return
    w = weierstrass_prepare(f)
    m = p ** w.precision
    assert w.distinguished[-1] == 1 and len(w.distinguished) == w.lam + 1
    assert all(c % p == 0 for c in w.distinguished[:-1])
    assert w.unit.ints[0] % p
    back = w.reconstruct()
    assert all((a - b) % (p ** w.mu * m) == 0 for a, b in zip(back.ints, f.ints))


# normalisation

def test_normalize_unit_multiple_of_p_squared():
    p = 5
    ch = normalize_mod_units(S(p, 4, 4, [3 * p * p] * 3))
    assert (ch.mu, ch.distinguished) == (2, (1,))


def test_normalize_t_times_unit():
    ch = normalize_mod_units(S(5, 3, 4, [0, 1, 1]))
    assert ch == CharElement.from_poly(5, 3, [0, 1])


def test_normalize_drops_unit_factor():
    p, N = 5, 4
    f = S(p, N, 6, expand([-p, 1], [-p * p, 1], [2, 1, 3]))
    assert normalize_mod_units(f) == CharElement.from_poly(p, N, expand([-p, 1], [-p * p, 1]))


# substitution

def test_substitute_tower_p_two():
    assert substitute_tower(S(2, 3, 4, [0, 1]), 1) == S(2, 3, 4, [0, 2, 1])


def test_substitute_tower_constant():
    for c in range(3):
        assert substitute_tower(S(3, 2, 5, [1]), c) == S(3, 2, 5, [1])


def test_substitute_tower_binomial():
    p, D = 5, 6
    expected = [comb(5, i) for i in range(6)]
    expected[0] = expected[0] - 1 + p
    assert substitute_tower(S(p, 3, D, [p, 1]), 1) == S(p, 3, D, expected)


# invariants at zero

def test_ord_at_zero_examples():
    p = 5
    assert ord_at_zero(CharElement.from_poly(p, 3, expand([0, 1], [0, 1], [-p, 1]))) == 2
    assert ord_at_zero(CharElement(p, 3, 3, (1,))) == 0
    u = 6
    assert ord_at_zero(CharElement.from_poly(p, 3, expand([0, 1], [1 - u, 1]))) == 1


def test_leading_term_examples():
    p = 5
    assert leading_term_at_zero(CharElement(p, 3, 1, (0, 1))) == 1
    assert leading_term_at_zero(CharElement.from_poly(p, 3, [1 - 6, 1])) == 1
    assert leading_term_at_zero(CharElement.one(p, 3)) == 0


# characteristic element algebra

def test_char_multiply_and_divide():
    a = CharElement.from_poly(3, 3, [3, 1])
    b = CharElement(3, 3, 1, (0, 1))
    assert (a * b).divide(b) == a
    with pytest.raises(NonIntegralAkashi):
        a.divide(b)


def test_char_rejects_non_distinguished():
    with pytest.raises(ValueError):
        CharElement.from_poly(3, 2, [1, 1])
