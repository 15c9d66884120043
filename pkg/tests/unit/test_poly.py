import pytest
from hypothesis import given, strategies as st

from edgeideal.errors import PolynomialError, PolynomialOverflowError
from edgeideal.poly import (
    INT64_MAX,
    ONE,
    ONE_MINUS_T,
    T,
    ZERO,
    IntPolynomial,
    RationalSeries,
    add,
    eval_at_one,
    mul,
    normalize,
    series_mul,
)

polys = st.lists(st.integers(min_value=-50, max_value=50), max_size=5).map(IntPolynomial)


def P(*coeffs):
    return IntPolynomial(coeffs)


def test_trailing_zeros_are_dropped():
    assert P(1, 2, 0, 0).coeffs == (1, 2)
    assert P(0, 0).is_zero()
    assert ZERO.degree == -1


def test_mul_known_values():
    assert mul(P(1, 1), P(1, 1)) == P(1, 2, 1)
    assert mul(P(1, 3), P(1, 1)) == P(1, 4, 3)
    assert add(P(2, 5), ZERO) == P(2, 5)


def test_integer_coercion():
    assert 2 - ONE_MINUS_T ** 2 == P(1, 2, -1)
    assert ONE + T == P(1, 1)
    assert P(4) == 4


def test_overflow_is_reported():
    big = P(INT64_MAX)
    with pytest.raises(PolynomialOverflowError):
        big + 1
    with pytest.raises(PolynomialOverflowError):
        big * P(2)
    with pytest.raises(PolynomialOverflowError):
        IntPolynomial([1 << 64])


def test_expansion_overflow_is_reported():
    with pytest.raises(PolynomialOverflowError):
        RationalSeries(P(1 << 62), 3).expand(10)
    assert RationalSeries(P(1 << 62), 0).expand(2) == [1 << 62, 0]


def test_eval_at_one():
    assert eval_at_one(P(1, 3)) == 4
    assert eval_at_one(P(1, 2, -1)) == 2
    assert eval_at_one(ZERO) == 0
    assert P(1, 2, 1)(2) == 9


def test_divide_by_one_minus_t():
    assert P(1, 0, -1).divide_by_one_minus_t() == P(1, 1)
    with pytest.raises(PolynomialError):
        P(1, 1).divide_by_one_minus_t()


def test_render():
    assert P(1, 3, -1).render() == "1 + 3*t - 1*t^2"
    assert P(0, -2).render() == "-2*t"
    assert ZERO.render() == "0"
    assert str(RationalSeries(P(1, 3), 2)) == "(1 + 3*t)/(1-t)^2"


def test_normalize_known_values():
    assert normalize(RationalSeries(P(1, 0, -1), 2)) == RationalSeries(P(1, 1), 1)
    kdd = RationalSeries(P(1, 2, -1), 2)
    assert normalize(kdd) == kdd
    assert normalize(RationalSeries(ZERO, 3)) == RationalSeries(ZERO, 0)


def test_normalize_floors_exponent_at_zero():
    s = normalize(RationalSeries(ONE_MINUS_T ** 3, 1))
    assert s == RationalSeries(ONE_MINUS_T ** 2, 0)
    assert s.is_canonical


@given(polys, st.integers(min_value=0, max_value=4))
def test_normalize_is_idempotent_and_canonical(num, e):
    once = normalize(RationalSeries(num, e))
    assert normalize(once) == once
    assert once.is_canonical


def test_series_mul_known_values():
    ribbon = RationalSeries(P(1, 3), 2)
    edge = RationalSeries(P(1, 1), 1)
    assert series_mul(ribbon, edge) == RationalSeries(P(1, 4, 3), 3)
    assert ribbon * RationalSeries(ONE, 0) == ribbon


@pytest.mark.parametrize("m", [2, 3])
def test_series_power_of_one_edge(m):
    edge = RationalSeries(P(1, 1), 1)
    product = RationalSeries(ONE, 0)
    for _ in range(m):
        product = product * edge
    assert product == RationalSeries((ONE + T) ** m, m)
    # an independent set of m disjoint edges picks at most one end of each
    assert product.expand(4)[:2] == [1, 2 * m]


@given(polys, st.integers(0, 3), polys, st.integers(0, 3))
def test_series_mul_matches_truncated_expansion(p, e, q, f):
    a, b = normalize(RationalSeries(p, e)), normalize(RationalSeries(q, f))
    order = 10
    ea, eb = a.expand(order), b.expand(order)
    expected = [sum(ea[i] * eb[k - i] for i in range(k + 1)) for k in range(order)]
    product = series_mul(a, b)
    assert product.is_canonical
    assert product.expand(order) == expected


def test_series_add_uses_common_denominator():
    total = RationalSeries(ONE, 1) + RationalSeries(ONE, 0)
    assert total == RationalSeries(P(2, -1), 1)
    assert total.expand(3) == [2, 1, 1]


def test_negative_exponent_is_rejected():
    with pytest.raises(ValueError):
        RationalSeries(ONE, -1)
