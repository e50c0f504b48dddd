from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from padic_sen import DomainError, FieldDesc
from padic_sen.padic_fields import exp, log1p
from padic_sen.weight_space import (WeightPoint, classify, disk_threshold, eval_char, inverse_theta,
                                    level_radius, minimal_level, mul_points, parse_gamma, reparametrize,
                                    theta, torsion_char)

from conftest import elements, pi

Q3 = FieldDesc(3, 0, 24)


@st.composite
def points(draw, p=None, max_level=2):
    p = p or draw(st.sampled_from([3, 5]))
    n = draw(st.integers(0, max_level if p == 3 else 1))
    field = FieldDesc(p, n, 24)
    t = draw(elements(field, disk_threshold(n, p)))
    return WeightPoint(draw(st.integers(0, p - 2)), t)


# -- classify ---------------------------------------------------------------

def test_classify_by_direct_inequality():
    # 2 >= 3/2 puts t = 9 in W^0_0; 1 < 3/2 but 1 >= 1/2 puts t = 3 in W^0_1
    assert Fraction(2) >= Fraction(3, 2) and classify(WeightPoint(0, Q3(9))).level == 0
    assert Fraction(1) < Fraction(3, 2) and classify(WeightPoint(0, Q3(3))).level == 1


def test_classify_torsion_zeta9():
    K = FieldDesc(3, 2)
    c = classify(WeightPoint(0, K.zeta() - 1))
    assert c.level == 2 and c.torsion


def test_classify_non_torsion():
    assert not classify(WeightPoint(0, Q3(3))).torsion


# -- theta ------------------------------------------------------------------

def test_theta_trivial_and_torsion():
    assert theta(WeightPoint.trivial()).is_zero()
    assert theta(WeightPoint(0, FieldDesc(3, 1).zeta() - 1)).is_zero()


def test_theta_of_gamma_point():
    assert theta(WeightPoint(0, Q3(3))) == 1


@given(points(), points())
def test_theta_additive(a, b):
    assume(a.p == b.p)
    assert theta(mul_points(a, b)) == theta(a) + theta(b)


@given(points())
def test_theta_independent_of_gamma(psi):
    assert theta(reparametrize(psi, "1+p+p^2")) == theta(psi)


@given(points(max_level=3))
def test_theta_bound(psi):
    n = classify(psi).level
    assert theta(psi).val_bound() >= -level_radius(n, psi.p)


@given(points(p=3), st.integers(1, 2), st.sampled_from([1, 2, 4, 5]))
def test_theta_constant_on_torsion_cosets(psi, n, j):
    field = psi.t.field.with_level(max(n, psi.t.field.m))
    z = torsion_char(n, j, field)
    assert theta(mul_points(psi, z)) == theta(psi)


def test_theta_separates_non_torsion_ratio():
    a, b = WeightPoint(0, Q3(3)), WeightPoint(0, Q3(9))
    assert not theta(a) == theta(b)


# -- group law --------------------------------------------------------------

def test_mul_points_identity_and_value():
    psi = WeightPoint(0, Q3(3))
    assert mul_points(psi, WeightPoint.trivial()).t == psi.t
    assert mul_points(psi, psi).t.residue_int() == 15


def test_torsion_points_multiply_to_trivial():
    K = FieldDesc(3, 1)
    z1, z2 = torsion_char(1, 1, K), torsion_char(1, 2, K)
    assert z1.t == K.zeta() - 1
    assert classify(z1).level == 1
    assert mul_points(z1, z2).t.is_zero()


# -- characters -------------------------------------------------------------

def test_eval_char_values():
    assert eval_char(WeightPoint.trivial(), Q3(7)) == 1
    psi = WeightPoint(0, Q3(6))
    assert eval_char(psi, Q3(4)) == 7
    assert eval_char(WeightPoint(1, Q3.zero()), Q3(2)) == -1


@given(points(), st.integers(1, 10 ** 6), st.integers(1, 10 ** 6))
def test_eval_char_multiplicative(psi, x, y):
    p = psi.p
    assume(x % p and y % p)
    F = FieldDesc(p, 0, 24)
    assert eval_char(psi, F(x * y)) == eval_char(psi, F(x)) * eval_char(psi, F(y))


def test_torsion_char_errors():
    with pytest.raises(DomainError) as err:
        torsion_char(2, 1, FieldDesc(3, 1))
    assert err.value.code == "FIELD_TOO_SMALL"


# -- inverse theta ----------------------------------------------------------

def test_inverse_theta_values():
    assert inverse_theta(Q3.zero(), 0).t.is_zero()
    assert inverse_theta(Q3(1), 1).t == 3


@given(st.sampled_from([FieldDesc(3, 0), FieldDesc(3, 2), FieldDesc(5, 1)]), st.data())
def test_inverse_theta_round_trip(field, data):
    r = Fraction(1, field.p - 1)
    x = data.draw(elements(field, r - 1 + Fraction(1, field.e)))
    n = minimal_level(x)
    psi = inverse_theta(x, n)
    assert classify(psi).level <= n
    assert theta(psi) == x


def test_inverse_theta_outside_ball():
    x = FieldDesc(3, 2)(1) / (pi(FieldDesc(3, 2)) ** 6)
    with pytest.raises(DomainError) as err:
        inverse_theta(x, 0)
    assert err.value.code == "LEVEL_VIOLATION"


def test_gamma_parsing():
    assert parse_gamma("1+p", 3) == 4
    assert parse_gamma("1+p+p^2", 3) == 13
    with pytest.raises(DomainError):
        parse_gamma("1+p^2", 3)
    with pytest.raises(ValueError):
        parse_gamma("x", 3)


def test_radius_helpers():
    assert level_radius(0, 3) == Fraction(-1, 2)
    assert disk_threshold(0, 3) == Fraction(3, 2)
    assert disk_threshold(2, 3) == Fraction(1, 6)
    assert exp(log1p(Q3(3))) == 4
