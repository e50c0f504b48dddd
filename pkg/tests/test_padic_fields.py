from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from padic_sen import DomainError, FieldDesc, PrecisionZero
from padic_sen.padic_fields import (PadicElement, angle, binom_pow, exp, ext_automorphism, log1p,
                                    norm, teichmuller, val, vp_factorial, vp_int)

from conftest import elements, field_and_two, pi

Q3 = FieldDesc(3, 0, 24)
K9 = FieldDesc(3, 2, 24)


def residue(q, p, N):
    """Least nonnegative residue of a p-integral rational mod p^N."""
    return q.numerator * pow(q.denominator, -1, p ** N) % p ** N


# -- oracles for derived values ----------------------------------------------

def oracle_log1p_int(x, p, N):
    """Partial sum of sum (-1)^(j+1) x^j / j over the rationals, for p | x.

    Every term with j > 2N + 10 has valuation >= j - log_p j > N.
    """
    total = sum(Fraction((-1) ** (j + 1) * x ** j, j) for j in range(1, 2 * N + 11))
    return residue(total, p, N)


def oracle_teichmuller(a, p, N):
    y = a % p ** N
    while pow(y, p, p ** N) != y:
        y = pow(y, p, p ** N)
    return y


def reduce_mod_phi(coeffs, p, m):
    """Long division by Phi_{p^m}(x) = sum_{j<p} x^(j p^(m-1)), integer coefficients."""
    q = p ** (m - 1)
    d = (p - 1) * q
    c = list(coeffs)
    for top in range(len(c) - 1, d - 1, -1):
        lead = c[top]
        if lead:
            for j in range(p):
                c[top - d + j * q] -= lead
    return c[:d] + [0] * max(0, d - len(c))


# -- valuation --------------------------------------------------------------

def test_val_p_is_one():
    assert val(Q3(3)) == 1


def test_val_zeta9_minus_one():
    # Norm(zeta_9 - 1) = +-Phi_9(1) = +-3 over a degree-6 extension
    phi9_at_1 = sum(1 ** (3 * j) for j in range(3))
    expected = Fraction(vp_int(phi9_at_1, 3), K9.degree)
    x = K9.zeta() - 1
    assert val(x) == expected == Fraction(1, 6)
    assert val(norm(x)) == 1


def test_val_precision_zero():
    z = Q3.zero(8)
    assert val(z) == PrecisionZero(8)
    assert str(val(z)) == ">= 8"


@given(field_and_two())
def test_valuation_multiplicative_and_ultrametric(data):
    field, x, y = data
    assume(not x.is_zero() and not y.is_zero())
    xy = x * y
    assert xy.valuation() == x.valuation() + y.valuation()
    s = x + y
    if not s.is_zero():
        assert s.valuation() >= min(x.valuation(), y.valuation())


@given(elements(nonzero=True))
def test_valuation_matches_norm(x):
    assume(not x.is_zero())
    f = x.field
    assert x.valuation() * f.degree == norm(x).valuation()


# -- arithmetic -------------------------------------------------------------

@given(st.integers(-10 ** 9, 10 ** 9), st.integers(-10 ** 9, 10 ** 9))
def test_qp_arithmetic_matches_integers(a, b):
    N = 24
    mod = 3 ** N
    assert (Q3(a) + Q3(b)).residue_int() % mod == (a + b) % mod
    assert (Q3(a) * Q3(b)).residue_int() % mod == (a * b) % mod


@given(elements(nonzero=True))
def test_inverse_round_trip(x):
    assume(not x.is_zero())
    assert x * x.inverse() == 1


def test_rational_division_shifts_precision():
    x = Q3(1) / 9
    assert x.shift == -2 and x.prec == 22


@given(elements())
def test_dict_round_trip(x):
    y = PadicElement.from_dict(x.to_dict())
    assert y.to_dict() == x.to_dict()


# -- teichmuller and angle ----------------------------------------------------

def test_teichmuller_trivial_values():
    assert teichmuller(Q3(1)) == 1
    assert teichmuller(Q3(2)).residue_int() == 3 ** 24 - 1


def test_teichmuller_2_mod_5_6():
    F = FieldDesc(5, 0, 6)
    expected = oracle_teichmuller(2, 5, 6)
    assert expected == 14557
    assert teichmuller(F(2)).residue_int() == expected


def test_angle_values():
    assert angle(Q3(4)) == 4
    assert angle(Q3(-1)) == 1
    F = FieldDesc(5, 0, 6)
    expected = 2 * pow(oracle_teichmuller(2, 5, 6), -1, 5 ** 6) % 5 ** 6
    assert expected == 2136
    assert angle(F(2)).residue_int() == expected


@given(st.sampled_from([3, 5, 7]), st.integers(1, 10 ** 12))
def test_teichmuller_root_of_unity(p, a):
    assume(a % p)
    F = FieldDesc(p, 0, 20)
    w = teichmuller(F(a))
    assert w ** (p - 1) == 1
    assert (w - a).val_bound() >= 1


def test_teichmuller_requires_unit():
    with pytest.raises(DomainError) as err:
        teichmuller(Q3(3))
    assert err.value.code == "NOT_A_UNIT"


# -- log and exp --------------------------------------------------------------

def test_log1p_zero():
    assert log1p(Q3.zero()).is_zero()


@pytest.mark.parametrize("p,m", [(3, 1), (3, 2), (3, 3), (5, 1), (5, 2)])
def test_log_of_roots_of_unity(p, m):
    F = FieldDesc(p, m, 24)
    for k in (1, 2, p + 1):
        assert log1p(F.zeta(k) - 1).is_zero()


def test_log1p_3_mod_3_6():
    F = FieldDesc(3, 0, 6)
    expected = oracle_log1p_int(3, 3, 6)
    assert expected == 534
    assert log1p(F(3)).residue_int() == expected
    assert log1p(F(3), accelerate=False).residue_int() == expected


@given(elements(min_val=Fraction(1, 100)))
def test_accelerated_log_matches_series(x):
    assume(not x.is_zero())
    a, b = log1p(x), log1p(x, accelerate=False)
    assert (a - b).val_bound() >= min(a.prec, b.prec)


@given(field_and_two(min_val=Fraction(1, 100)))
def test_log_additive(data):
    field, x, y = data
    assume(not x.is_zero() and not y.is_zero())
    u, v = 1 + x, 1 + y
    assert log1p(u * v - 1) == log1p(x) + log1p(y)


def test_exp_zero():
    assert exp(Q3.zero()) == 1


@given(st.data())
def test_exp_log_round_trip(data):
    field = data.draw(st.sampled_from([Q3, FieldDesc(3, 1), K9, FieldDesc(5, 0), FieldDesc(5, 1)]))
    r = Fraction(1, field.p - 1)
    x = data.draw(elements(field, r + Fraction(1, field.e)))
    assert exp(log1p(x)) == 1 + x
    assert log1p(exp(x) - 1) == x


def test_exp_diverges_on_boundary():
    x = FieldDesc(3, 1).zeta() - 1
    with pytest.raises(DomainError) as err:
        exp(x)
    assert err.value.code == "EXP_DIVERGES"


def test_log_diverges_outside_disk():
    with pytest.raises(DomainError) as err:
        log1p(Q3(1))
    assert err.value.code == "LOG_DIVERGES"


# -- binomial powers ----------------------------------------------------------

def test_binom_pow_zero_exponent():
    assert binom_pow(Q3(3), 0) == 1


@pytest.mark.parametrize("field", [Q3, K9, FieldDesc(5, 1)])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_binom_pow_p_power(field, n):
    t = pi(field) * 2 + field.p
    assert binom_pow(t, field.p ** n) == (1 + t) ** (field.p ** n)


def test_binom_pow_exact_integer_oracle():
    # (1 + 3)^9 = 262144 over the integers
    assert binom_pow(Q3(3), 9).residue_int() == 4 ** 9 % 3 ** 24


def test_binom_pow_rejects_non_integral_exponent():
    with pytest.raises(DomainError) as err:
        binom_pow(Q3(3), Fraction(1, 3))
    assert err.value.code == "NOT_IN_ZP"


@given(elements(min_val=Fraction(1, 10)), st.integers(-50, 50), st.integers(-50, 50))
def test_binom_pow_additive_in_exponent(t, s1, s2):
    assume(not t.is_zero())
    f = t.field.with_level(0)
    lhs = binom_pow(t, f(s1 + s2))
    assert lhs == binom_pow(t, f(s1)) * binom_pow(t, f(s2))


# -- automorphisms ----------------------------------------------------------

def test_automorphism_identity():
    x = K9.from_coeffs([1, 2, 3, 4, 5, 6])
    assert ext_automorphism(x, 1) == x


def test_automorphism_zeta9_oracle():
    # 1 + 2 z + z^5 under z -> z^4, reduced by Phi_9 with plain integer long division
    coeffs = [0] * 21
    coeffs[0] += 1
    coeffs[4] += 2
    coeffs[20] += 1
    expected = reduce_mod_phi(coeffs, 3, 2)
    x = K9.from_coeffs([1, 2, 0, 0, 0, 1])
    y = ext_automorphism(x, 4)
    assert y == K9.from_coeffs(expected)
    assert ext_automorphism(K9.zeta(), 4) == K9.zeta() ** 4


@given(field_and_two(), st.integers(1, 200), st.integers(1, 200))
def test_automorphism_ring_hom_and_group_law(data, a, b):
    field, x, y = data
    assume(a % field.p and b % field.p)
    s = ext_automorphism
    assert s(x * y, a) == s(x, a) * s(y, a)
    assert s(x + y, a) == s(x, a) + s(y, a)
    assert s(s(x, a), b) == s(x, a * b)
    c = field(7)
    assert s(c, a) == c


def test_vp_helpers():
    assert vp_factorial(9, 3) == 4
    for q in (3, 5, 7):
        for k in range(60):
            f, count = factorial(k), 0
            while f % q == 0:
                f //= q
                count += 1
            assert vp_factorial(k, q) == count
    assert vp_int(-54, 3) == 3
    assert comb(9, 3) == 84
