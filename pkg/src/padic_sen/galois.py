"""Galois elements, represented by their cyclotomic character value chi(g).

g acts on Q_p(zeta_{p^m}) by zeta -> zeta^(chi mod p^m), on points through
their coefficients, on theta-expansions coefficientwise, and on
distributions by

    (g mu)(f) = g( mu( f^(g^-1) * exp(theta * log chi(g)) ) ).

For distributions on X_n with n >= 1 this needs g in G_n, i.e. chi = 1 mod p^n.
On X_0 every g acts once log is extended to Z_p^x by killing the
(p-1)-st roots of unity: log chi is read as log(chi / tau(chi)).
"""

from dataclasses import dataclass
from math import floor

from . import distributions as dist
from . import errors
from .errors import DomainError
from .padic_fields import FieldDesc, PadicElement, angle, ext_automorphism, log1p
from .tate_series import act_coefficients, exp_theta_series
from .weight_space import WeightPoint


@dataclass(frozen=True, eq=False)
class GaloisElement:
    chi: PadicElement
    scope_m: int = 3

    def __post_init__(self):
        chi = self.chi
        if chi.field.m != 0:
            raise DomainError(errors.FIELD_MISMATCH, "chi(g) must lie in Z_p")
        if chi.is_zero() or chi.valuation() != 0:
            raise DomainError(errors.NOT_A_UNIT, "chi(g) must be a unit of Z_p")
        if chi.prec < self.scope_m:
            raise DomainError(errors.PRECISION_LOST, "chi(g) is not known mod p^scope_m")

    @classmethod
    def from_int(cls, chi, scope_m=3, field=None):
        field = field or FieldDesc()
        return cls(field(chi), scope_m)

    @property
    def level_floor(self):
        """Largest n with g in G_n."""
        d = self.chi - 1
        return floor(d.val_bound())

    @property
    def exponent(self):
        """chi mod p^scope_m, the exponent of the action on zeta_{p^scope_m}."""
        p = self.chi.field.p
        return self.chi.coeffs[0] % p ** max(self.scope_m, 1)

    def log_chi(self):
        """log chi(g), extended so that roots of unity map to 0."""
        return log1p(angle(self.chi) - 1)

    def to_dict(self):
        return {"chi": self.chi.to_dict(), "scope_m": self.scope_m}

    @classmethod
    def from_dict(cls, d):
        return cls(PadicElement.from_dict(d["chi"]), int(d.get("scope_m", 3)))


def compose(g, h):
    return GaloisElement(g.chi * h.chi, min(g.scope_m, h.scope_m))


def inverse(g):
    return GaloisElement(g.chi.inverse(), g.scope_m)


def _check_scope(g, field):
    if field.m > g.scope_m:
        raise DomainError(errors.OUT_OF_SCOPE,
                          f"coefficients of level {field.m} exceed the scope m = {g.scope_m}")


def act_on_element(g, x):
    _check_scope(g, x.field)
    return ext_automorphism(x, g.exponent)


def act_on_point(g, psi):
    """The class of g o psi: t -> g(t), component index unchanged."""
    return WeightPoint(psi.i, act_on_element(g, psi.t), psi.gamma)


def act_on_function(g, f):
    """f^g, acting on the coefficients of the theta-expansion."""
    for a in f.coeffs:
        _check_scope(g, a.field)
    return act_coefficients(f, g.exponent)


def _check_level(g, n):
    if n >= 1 and g.level_floor < n:
        raise DomainError(errors.LEVEL_VIOLATION,
                          f"g lies in G_{g.level_floor} only; D(X_{n}) needs g in G_{n}")


def act_on_distribution(g, mu):
    _check_level(g, mu.level)
    for x in mu.moments:
        _check_scope(g, x.field)
    E = exp_theta_series(g.log_chi(), mu.level, D=mu.M)
    # theta^k has Q_p coefficients, so (theta^k)^(g^-1) = theta^k
    return dist.act_coefficients(dist.scale_by_function(E, mu), g.exponent)


def act_level0_full(g, mu):
    """The action of the whole Galois group on D(X_0)."""
    if mu.level != 0:
        raise DomainError(errors.LEVEL_MISMATCH, "the full-group action is defined on level 0 only")
    return act_on_distribution(g, mu)
