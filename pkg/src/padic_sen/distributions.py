"""Bounded distributions on X_n, stored by their moments mu(theta^k).

A bounded distribution is determined by its moments, and a moment sequence
defines one exactly when |x_k| p^(-k(n - 1/(p-1))) stays bounded.  Each
``BoundedDistribution`` carries a certificate ``(c_exp, rho)`` meaning

    |x_k| <= p^(c_exp + k * rho)   for every k >= 0 (stored or not),

with rho <= n - 1/(p-1).  Using rho below the level radius lets truncated
sums against bounded (non-decaying) functions still come with a finite
error bound.  Operations propagate the certificate; sums that had to be
truncated cap the precision of the affected moments.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from . import errors
from ._series import NEG_INF, frac_or_none
from .errors import DomainError
from .padic_fields import FieldDesc, PadicElement, ext_automorphism
from .weight_space import QuotientPoint, WeightPoint, classify, level_radius, minimal_level, theta

DEFAULT_M = 64


@dataclass(frozen=True, eq=False)
class BoundedDistribution:
    level: int
    moments: tuple
    c_exp: object
    rho: Fraction

    def __post_init__(self):
        object.__setattr__(self, "moments", tuple(self.moments))

    @property
    def p(self):
        return self.moments[0].field.p

    @property
    def M(self):
        return len(self.moments) - 1

    @property
    def radius(self):
        return level_radius(self.level, self.p)

    def __getitem__(self, k):
        return self.moments[k]

    def to_dict(self):
        return {
            "level": self.level,
            "moments": [x.to_dict() for x in self.moments],
            "C_exp": frac_or_none(self.c_exp),
            "rho": str(self.rho),
        }

    @classmethod
    def from_dict(cls, d):
        moments = [PadicElement.from_dict(x) for x in d["moments"]]
        c = d.get("C_exp")
        rho = Fraction(d["rho"]) if d.get("rho") is not None else None
        return from_moments(moments, int(d["level"]), None if c is None else Fraction(c), rho)


def _needed_constant(moments, rho):
    return max(-x.val_bound() - k * rho for k, x in enumerate(moments))


def from_moments(xs, n, c_exp=None, rho=None, field=None):
    """The unique bounded distribution on X_n with mu(theta^k) = xs[k].

    ``c_exp`` is log_p of the bound C; when omitted the least constant that
    fits the supplied moments is used.
    """
    field = field or next((x.field for x in xs if isinstance(x, PadicElement)), FieldDesc())
    xs = [x if isinstance(x, PadicElement) else field(x) for x in xs]
    r = level_radius(n, field.p)
    rho = r if rho is None else Fraction(rho)
    if rho > r:
        raise DomainError(errors.CERT_VIOLATION, f"decay rate {rho} exceeds the level radius {r}")
    needed = _needed_constant(xs, rho)
    if c_exp is None:
        c_exp = needed
    elif needed > c_exp:
        k = max(range(len(xs)), key=lambda k: -xs[k].val_bound() - k * rho)
        raise DomainError(errors.CERT_VIOLATION,
                          f"|x_{k}| p^(-{k}*{rho}) = p^{needed} exceeds C = p^{c_exp}")
    return BoundedDistribution(n, xs, c_exp, rho)


def zero_distribution(n, M=DEFAULT_M, field=None):
    field = field or FieldDesc()
    return BoundedDistribution(n, [field.zero()] * (M + 1), NEG_INF, level_radius(n, field.p))


def dirac(psi, level=None, M=DEFAULT_M):
    """mu_psi(f) = f(psi): moments theta(psi)^k with C = 1."""
    if isinstance(psi, WeightPoint):
        x, need = theta(psi), classify(psi).level
    elif isinstance(psi, QuotientPoint):
        x, need = psi.theta_value, minimal_level(psi.theta_value)
    else:
        x, need = psi, minimal_level(psi)
    if level is None:
        level = need
    elif level < need:
        raise DomainError(errors.LEVEL_VIOLATION, f"point needs level >= {need}, got {level}")
    moments = [x.field.one(max(x.prec, x.field.N))]
    for _ in range(M):
        moments.append(moments[-1] * x)
    r = level_radius(level, x.field.p)
    return BoundedDistribution(level, moments, Fraction(0), min(-x.val_bound(), r))


def identity(level=0, M=DEFAULT_M, field=None):
    """mu_1, the Dirac distribution at the trivial character."""
    field = field or FieldDesc()
    return dirac(field.zero(), level, M)


def _check_level(a, b):
    if a != b:
        raise DomainError(errors.LEVEL_MISMATCH, f"level {a} vs level {b}")


def _omitted_weights(f, rho, r):
    """S[j] = max over omitted i >= j of log_p(|a_i| p^(i rho)), for j = 0..D+1."""
    w = f.weights()
    out = [f.tail_exp + (f.D + 1) * (rho - r)]
    for j in range(f.D, -1, -1):
        out.append(max(out[-1], w[j] + j * (rho - r)))
    return out[::-1]


def eval(mu, f):
    """mu(f) = sum a_k x_k, with the precision of the result capped by the certified truncation error."""
    _check_level(mu.level, f.level)
    K = min(mu.M, f.D)
    acc = mu.moments[0] * f.coeffs[0]
    for k in range(1, K + 1):
        acc = acc + mu.moments[k] * f.coeffs[k]
    err = mu.c_exp + _omitted_weights(f, mu.rho, mu.radius)[K + 1]
    if err != NEG_INF:
        acc = acc.add_bigoh(-err)
    return acc


def error_exp(x):
    """log_p of the certified absolute error of a computed value."""
    return -x.prec


def convolve(mu, nu):
    """Moments of mu * nu: the binomial convolution sum C(k, m) x_m y_(k-m)."""
    _check_level(mu.level, nu.level)
    M = min(mu.M, nu.M)
    x, y = mu.moments, nu.moments
    out = []
    for k in range(M + 1):
        acc = x[0] * y[k]
        for m in range(1, k + 1):
            acc = acc + x[m] * y[k - m] * comb(k, m)
        out.append(acc)
    return BoundedDistribution(mu.level, out, mu.c_exp + nu.c_exp, max(mu.rho, nu.rho))


def scale(mu, c):
    """The scalar multiple c * mu."""
    if not isinstance(c, PadicElement):
        c = mu.moments[0].field(c)
    return BoundedDistribution(mu.level, [x * c for x in mu.moments], mu.c_exp - c.val_bound(), mu.rho)


def add(mu, nu):
    _check_level(mu.level, nu.level)
    M = min(mu.M, nu.M)
    return BoundedDistribution(mu.level, [mu[k] + nu[k] for k in range(M + 1)],
                               max(mu.c_exp, nu.c_exp), max(mu.rho, nu.rho))


def scale_by_function(f, mu):
    """The distribution h -> mu(f h); moments sum_j a_j x_(j+k)."""
    _check_level(mu.level, f.level)
    r, rho, M = mu.radius, mu.rho, mu.M
    x = mu.moments
    omitted = _omitted_weights(f, rho, r)
    out = []
    for k in range(M + 1):
        J = min(f.D, M - k)
        acc = f.coeffs[0] * x[k]
        for j in range(1, J + 1):
            acc = acc + f.coeffs[j] * x[j + k]
        err = mu.c_exp + k * rho + omitted[J + 1]
        if err != NEG_INF:
            acc = acc.add_bigoh(-err)
        out.append(acc)
    # |mu(f theta^k)| <= C |f|_rho p^(k rho), with |f|_rho the sup-norm on the smaller ball
    return BoundedDistribution(mu.level, out, mu.c_exp + omitted[0], rho)


def theta_op(mu):
    """(Theta mu)(f) = mu(f theta): the moment shift."""
    return BoundedDistribution(mu.level, mu.moments[1:], mu.c_exp + mu.rho, mu.rho)


def include_level(mu, n2):
    """The image of mu under D(X_n) -> D(X_n2); the moments do not change."""
    if n2 < mu.level:
        raise DomainError(errors.LEVEL_MISMATCH, f"cannot include level {mu.level} into level {n2}")
    return BoundedDistribution(n2, mu.moments, mu.c_exp, mu.rho)


def act_coefficients(mu, a):
    return BoundedDistribution(mu.level, [ext_automorphism(x, a) for x in mu.moments], mu.c_exp, mu.rho)


def moments_equal(mu, nu):
    """Agreement of all common moments at their tracked precision."""
    M = min(mu.M, nu.M)
    return all(mu[k] == nu[k] for k in range(M + 1))
