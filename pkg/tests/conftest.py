from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from padic_sen import FieldDesc

settings.register_profile(
    "default", max_examples=40, deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")

FIELDS = [FieldDesc(3, 0, 24), FieldDesc(3, 1, 24), FieldDesc(3, 2, 24), FieldDesc(5, 0, 24), FieldDesc(5, 1, 24)]


def pi(field):
    return field(field.p) if field.m == 0 else field.zeta() - 1


@st.composite
def elements(draw, field=None, min_val=0, nonzero=False):
    """pi^j * u with random coefficients; val >= min_val."""
    field = field or draw(st.sampled_from(FIELDS))
    mod = field.p ** field.N
    coeffs = draw(st.lists(st.integers(0, mod - 1), min_size=field.degree, max_size=field.degree))
    if nonzero and coeffs[0] % field.p == 0:
        coeffs[0] += 1
    j = -(-Fraction(min_val) * field.e // 1) + draw(st.integers(0, 3))
    return pi(field) ** int(j) * field.from_coeffs(coeffs)


@st.composite
def field_and_two(draw, min_val=0):
    field = draw(st.sampled_from(FIELDS))
    return field, draw(elements(field, min_val)), draw(elements(field, min_val))
