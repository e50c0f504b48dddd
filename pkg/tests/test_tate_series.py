from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from padic_sen import DomainError, FieldDesc
from padic_sen.padic_fields import exp, log1p
from padic_sen.tate_series import (TateSeries, add, evaluate, exp_theta_series, monomial, mul,
                                   polynomial, pullback, sup_norm, theta_t_series, translate)
from padic_sen.weight_space import QuotientPoint, WeightPoint, level_radius, theta

from conftest import elements

Q3 = FieldDesc(3, 0, 24)


@st.composite
def polys(draw, p=3, level=None, max_deg=6):
    level = draw(st.integers(0, 2)) if level is None else level
    F = FieldDesc(p, 0, 24)
    deg = draw(st.integers(0, max_deg))
    return polynomial([draw(elements(F)) for _ in range(deg + 1)], level)


def test_sup_norm_examples():
    assert sup_norm(polynomial([1], 0)) == 0
    for n in range(4):
        assert sup_norm(monomial(1, n)) == level_radius(n, 3)
    # max(2 * (-1/2), -1 - 1/2)
    expected = max(2 * Fraction(-1, 2), -1 + Fraction(-1, 2))
    assert expected == -1
    assert sup_norm(polynomial([0, 3, 1], 0)) == expected


@given(polys(level=1), polys(level=1))
def test_sup_norm_submultiplicative(f, g):
    assert sup_norm(mul(f, g)) <= sup_norm(f) + sup_norm(g)


@given(st.integers(0, 10), st.integers(0, 10), st.integers(0, 3))
def test_sup_norm_multiplicative_on_monomials(a, b, n):
    assert sup_norm(mul(monomial(a, n), monomial(b, n))) == sup_norm(monomial(a, n)) + sup_norm(monomial(b, n))


def test_mul_identities():
    f = polynomial([1, 2, 3], 1)
    one = polynomial([1], 1)
    assert all(x == y for x, y in zip(mul(f, one).coeffs, f.coeffs))
    sq = mul(monomial(1, 0), monomial(1, 0))
    assert sq.coeffs[2] == 1 and sq.coeffs[0].is_zero() and sq.coeffs[1].is_zero()


def test_level_mismatch():
    with pytest.raises(DomainError) as err:
        add(monomial(1, 0), monomial(1, 1))
    assert err.value.code == "LEVEL_MISMATCH"


def test_exp_theta_zero_is_one():
    E = exp_theta_series(Q3.zero(), 1, 16)
    assert E.coeffs[0] == 1 and all(c.is_zero() for c in E.coeffs[1:])


def test_exp_theta_tail_bound_is_honest():
    c = Q3(3 * 7)
    short, long = exp_theta_series(c, 1, 12), exp_theta_series(c, 1, 40)
    r = level_radius(1, 3)
    for k in range(13, 41):
        assert k * r - long.coeffs[k].val_bound() <= short.tail_exp


def test_exp_theta_needs_small_c():
    with pytest.raises(DomainError) as err:
        exp_theta_series(Q3(3), 2)
    assert err.value.code == "LEVEL_VIOLATION"


def test_exp_theta_evaluates_to_exp():
    c = Q3(9)
    E = exp_theta_series(c, 1, 40)
    x = Q3(6)
    assert evaluate(E, QuotientPoint(x, 1)) == exp(c * x)


def test_translate_identity_and_linear():
    f = polynomial([5, 1, 2], 1)
    t0 = translate(f, QuotientPoint(Q3.zero(), 1))
    assert all(a == b for a, b in zip(t0.coeffs, f.coeffs))
    x = Q3(6)
    t1 = translate(monomial(1, 1), QuotientPoint(x, 1))
    assert t1.coeffs[0] == x and t1.coeffs[1] == 1


@given(polys(level=1), st.integers(0, 50), st.integers(0, 50))
def test_translate_is_shift_of_argument(f, a, b):
    # f(theta + x) at y equals f at x + y
    x, y = Q3(3 * a), Q3(3 * b)
    assert evaluate(translate(f, QuotientPoint(x, 1)), QuotientPoint(y, 1)) == evaluate(f, QuotientPoint(x + y, 1))


@given(polys(level=1))
def test_translate_keeps_norm_bounded(f):
    x = Q3(3)
    assert sup_norm(translate(f, QuotientPoint(x, 1))) <= sup_norm(f)


def test_evaluate_examples():
    c = Q3(11)
    assert evaluate(polynomial([c], 0), QuotientPoint(Q3(3), 0)) == c
    psi = WeightPoint(0, Q3(12))
    x = theta(psi)
    assert evaluate(monomial(1, 1), QuotientPoint(x, 1)) == x


def test_theta_t_series_coefficients_decay():
    for n in (1, 2):
        s = theta_t_series(n, 40)
        w = s.weights()
        assert max(w[20:]) < max(w[:5])
        assert s.tail_exp < max(w)


def test_pullback_of_theta_is_theta_t():
    f = monomial(1, 1)
    pb = pullback(f, 20)
    s = theta_t_series(1, 20)
    assert all(a == b for a, b in zip(pb.coeffs, s.coeffs))


def test_quotient_structure_identity_small():
    # exp(p^n log(gamma) theta(1 + t)) = (1 + t)^(p^n), through degree 20
    p, n, D = 3, 1, 20
    F = FieldDesc(p, 0, 24)
    s = theta_t_series(n, D, "1+p", F)
    u = [c * (log1p(F(p)) * p ** n) for c in s.coeffs]
    E = [F.one()] + [F.zero()] * D
    power = [F.one()] + [F.zero()] * D
    fact = 1
    for k in range(1, D + 1):
        power = [sum((power[i] * u[j - i] for i in range(j + 1)), F.zero()) for j in range(D + 1)]
        fact *= k
        E = [E[j] + power[j] / fact for j in range(D + 1)]
    assert all(E[d] == comb(p ** n, d) for d in range(D + 1))


def test_dict_round_trip():
    f = polynomial([1, 3, 9], 2)
    g = TateSeries.from_dict(f.to_dict())
    assert g.to_dict() == f.to_dict()
