from math import isqrt, log, pi, sin, sqrt

import pytest
from hypothesis import given, strategies as st

from quarticgenus.arith import is_square, legendre, primes_up_to
from quarticgenus.errors import MixedField, NotIntegral
from quarticgenus.quadfield import (
    Mod4Tag,
    QuadElem,
    class_number,
    fundamental_unit,
    is_square_element,
    mod4_class,
    norm,
    quad_mul,
)

FIELDS = [2] + [p for p in primes_up_to(300) if p % 4 == 1]


def brute_unit(p):
    """Smallest unit > 1 by scanning v: u^2 - p v^2 = +-1 (p = 2) or +-4 (p = 1 mod 4)."""
    k = 1 if p == 2 else 4
    v = 1
    while True:
        for sign in (-1, 1):
            u2 = p * v * v + sign * k
            if u2 > 0 and is_square(u2):
                u = isqrt(u2)
                return QuadElem(u, v, 1, p) if p == 2 else QuadElem(u, v, 2, p)
        v += 1


def analytic_class_number(p):
    """h from h*log(eps) = -1/2 * sum chi(a) log sin(pi a / D), rounded."""
    D = 8 if p == 2 else p
    if p == 2:
        chi = [0 if a % 2 == 0 else (1 if a % 8 in (1, 7) else -1) for a in range(D)]
    else:
        chi = [legendre(a, p) for a in range(D)]
    total = -0.5 * sum(chi[a] * log(sin(pi * a / D)) for a in range(1, D))
    eps = fundamental_unit(p)
    return round(total / log(eps.u / eps.den + eps.v / eps.den * sqrt(p)))


def test_mul_examples():
    assert quad_mul(QuadElem(1, 1, 1, 2), QuadElem(1, -1, 1, 2)) == QuadElem.of(-1, 2)
    w = QuadElem(1, 1, 2, 5)
    assert w * w == QuadElem(3, 1, 2, 5)
    x = QuadElem(3, 1, 1, 17)
    assert x * QuadElem.of(1, 17) == x


def test_integrality_guard():
    with pytest.raises(NotIntegral):
        QuadElem(1, 2, 2, 5)
    with pytest.raises(NotIntegral):
        QuadElem(1, 1, 2, 2)
    with pytest.raises(MixedField):
        QuadElem(1, 1, 1, 5) * QuadElem(1, 1, 1, 13)


@pytest.mark.parametrize(
    "x, n",
    [(QuadElem(44, 11, 1, 5), 1331), (QuadElem(1, 1, 2, 5), -1), (QuadElem.of(1, 7), 1)],
)
def test_norm_examples(x, n):
    assert norm(x) == n


@given(
    st.sampled_from(FIELDS),
    st.integers(-200, 200),
    st.integers(-200, 200),
    st.integers(-200, 200),
    st.integers(-200, 200),
)
def test_norm_multiplicative(p, a, b, c, d):
    x, y = QuadElem(a, b, 1, p), QuadElem(c, d, 1, p)
    assert norm(x * y) == norm(x) * norm(y)


@pytest.mark.parametrize(
    "p, unit",
    [(2, QuadElem(1, 1, 1, 2)), (5, QuadElem(1, 1, 2, 5)), (13, QuadElem(3, 1, 2, 13)), (17, QuadElem(4, 1, 1, 17))],
)
def test_fundamental_unit_examples(p, unit):
    assert fundamental_unit(p) == unit


@pytest.mark.parametrize("p", [p for p in FIELDS if p < 200])
def test_fundamental_unit_matches_scan(p):
    assert fundamental_unit(p) == brute_unit(p)


@pytest.mark.parametrize("p, h", [(5, 1), (2, 1), (17, 1)])
def test_class_number_examples(p, h):
    assert class_number(p) == h


@pytest.mark.parametrize("p", FIELDS)
def test_class_number_matches_analytic_formula(p):
    assert class_number(p) == analytic_class_number(p)


def test_class_number_229():
    assert class_number(229) == 3


@pytest.mark.parametrize(
    "x, tag",
    [
        (QuadElem(9, 2, 1, 17), Mod4Tag.MINUS_ONE),
        (QuadElem(55, 44, 1, 5), Mod4Tag.MINUS_ONE),
        (QuadElem(5, 2, 1, 2), Mod4Tag.MINUS_UNIT_SQUARE),
        (QuadElem(3, 2, 1, 2), Mod4Tag.UNIT_SQUARE),
        (QuadElem(5, 4, 1, 2), Mod4Tag.PLUS_ONE),
        (QuadElem(3, 1, 1, 2), Mod4Tag.OTHER),
    ],
)
def test_mod4_class(x, tag):
    assert mod4_class(x).tag is tag


@given(st.sampled_from(FIELDS), st.integers(-300, 300), st.integers(-300, 300))
def test_mod4_class_shift_invariant(p, s, t):
    x = QuadElem.from_basis(s, t, p)
    y = x + QuadElem.from_basis(4 * (s % 3), 4, p)
    assert mod4_class(x).tag is mod4_class(y).tag


@given(st.sampled_from(FIELDS), st.integers(-100, 100), st.integers(-100, 100))
def test_squares_are_squares(p, s, t):
    x = QuadElem.from_basis(s, t, p)
    assert is_square_element(x * x)


@pytest.mark.parametrize("p", [2, 5, 13, 17])
def test_nonsquares(p):
    assert not is_square_element(QuadElem.of(-1, p))
    assert not is_square_element(fundamental_unit(p))
    assert not is_square_element(QuadElem.sqrt_p(p))
    assert is_square_element(QuadElem.of(p, p))
