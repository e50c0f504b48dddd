"""The Fourier transform mu -> mu(exp(T theta)) = sum mu(theta^k)/k! T^k.

Its values are power series of positive radius of convergence.  A
``BSenElement`` stores b_0..b_D, the filtration level n (radius >= p^-n) and
a certificate ``(bound_exp, sigma)`` with |b_k| <= p^(bound_exp + k sigma)
for every k, sigma <= n.

Galois acts on coefficients and by T -> T + log chi(g).  The derivative
d/dT corresponds to the Theta operator on distributions; it is the negative
of the operator Colmez calls Theta.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, floor

from . import errors
from ._series import NEG_INF, cauchy, frac_or_none
from .distributions import BoundedDistribution
from .errors import DomainError
from .galois import _check_level, _check_scope
from .padic_fields import FieldDesc, PadicElement, ext_automorphism
from .weight_space import level_radius


@dataclass(frozen=True, eq=False)
class BSenElement:
    coeffs: tuple
    filtration: int
    bound_exp: object
    sigma: Fraction

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    @property
    def p(self):
        return self.coeffs[0].field.p

    @property
    def D(self):
        return len(self.coeffs) - 1

    def to_dict(self):
        return {
            "coeffs": [b.to_dict() for b in self.coeffs],
            "filtration": self.filtration,
            "bound_exp": frac_or_none(self.bound_exp),
            "sigma": str(self.sigma),
        }

    @classmethod
    def from_dict(cls, d):
        coeffs = [PadicElement.from_dict(b) for b in d["coeffs"]]
        sigma = d.get("sigma")
        bound = d.get("bound_exp")
        return certified_series(coeffs, int(d["filtration"]),
                                None if bound is None else Fraction(bound),
                                None if sigma is None else Fraction(sigma))


def certified_series(coeffs, n, bound_exp=None, sigma=None, field=None):
    """A power series in B_Sen^n; checks the stored coefficients against the certificate."""
    field = field or next((b.field for b in coeffs if isinstance(b, PadicElement)), FieldDesc())
    coeffs = [b if isinstance(b, PadicElement) else field(b) for b in coeffs]
    sigma = Fraction(n) if sigma is None else Fraction(sigma)
    if sigma > n:
        raise DomainError(errors.CERT_VIOLATION, f"decay rate {sigma} exceeds the filtration level {n}")
    needed = max(-b.val_bound() - k * sigma for k, b in enumerate(coeffs))
    if bound_exp is None:
        bound_exp = needed
    elif needed > bound_exp:
        raise DomainError(errors.CERT_VIOLATION, f"coefficients need bound p^{needed} > p^{bound_exp}")
    return BSenElement(coeffs, n, bound_exp, sigma)


def fourier(mu):
    """F_n(mu) = sum mu(theta^k)/k! T^k; lands in B_Sen^n."""
    p = mu.p
    coeffs = [x / factorial(k) for k, x in enumerate(mu.moments)]
    # |x_k / k!| <= p^(c + k rho + v(k!)) and v(k!) <= k/(p-1)
    return BSenElement(coeffs, mu.level, mu.c_exp, mu.rho + Fraction(1, p - 1))


def minimal_level(P):
    """Least level whose distributions are certified to contain the inverse transform of P."""
    return floor(P.sigma) + 1


def inverse_fourier(P):
    """The distribution on X_(n+1) with moments k! a_k, n the filtration of P."""
    n = P.filtration
    moments = [b * factorial(k) for k, b in enumerate(P.coeffs)]
    # |k! a_k| <= |a_k| <= p^(bound + k sigma), and sigma <= n <= radius of X_(n+1)
    rho = min(P.sigma, level_radius(n + 1, P.p))
    return BoundedDistribution(n + 1, moments, P.bound_exp, rho)


def multiply(P, Q):
    D = min(P.D, Q.D)
    return BSenElement(cauchy(P.coeffs, Q.coeffs, D), max(P.filtration, Q.filtration),
                       P.bound_exp + Q.bound_exp, max(P.sigma, Q.sigma))


def derivative(P):
    coeffs = [P.coeffs[k] * k for k in range(1, P.D + 1)] or [P.coeffs[0] * 0]
    return BSenElement(coeffs, P.filtration, P.bound_exp + P.sigma, P.sigma)


def substitute_shift(P, L):
    """P(T + L), truncated to the stored degrees, with the omitted-term error folded into precision."""
    D = P.D
    vL = L.val_bound()
    if P.sigma > vL:
        raise DomainError(errors.LEVEL_VIOLATION, "shift leaves the disk of convergence")
    powers = [L.field.one(max(L.prec, L.field.N))]
    for _ in range(D):
        powers.append(powers[-1] * L)
    out = []
    for j in range(D + 1):
        acc = P.coeffs[j]
        for k in range(j + 1, D + 1):
            acc = acc + P.coeffs[k] * powers[k - j] * comb(k, j)
        if P.bound_exp != NEG_INF:
            # omitted k > D: |a_k C(k,j) L^(k-j)| <= p^(bound + j sigma + (k-j)(sigma - vL))
            err = P.bound_exp + j * P.sigma + (D + 1 - j) * (P.sigma - vL)
            acc = acc.add_bigoh(-err)
        out.append(acc)
    return BSenElement(out, P.filtration, P.bound_exp, P.sigma)


def colmez_action(g, P):
    """g . P: coefficients under g, then T -> T + log chi(g)."""
    _check_level(g, P.filtration)
    for b in P.coeffs:
        _check_scope(g, b.field)
    acted = BSenElement([ext_automorphism(b, g.exponent) for b in P.coeffs],
                        P.filtration, P.bound_exp, P.sigma)
    return substitute_shift(acted, g.log_chi())


def series_equal(P, Q):
    D = min(P.D, Q.D)
    return all(P.coeffs[k] == Q.coeffs[k] for k in range(D + 1))


def exp_series(c, n, D=64):
    """exp(cT) as an element of B_Sen^n."""
    # |c^k / k!| <= p^(k(1/(p-1) - val c))
    sigma = Fraction(1, c.field.p - 1) - c.val_bound()
    if sigma > n:
        raise DomainError(errors.CERT_VIOLATION, f"exp(cT) has radius below p^-{n}")
    coeffs = [c.field.one(max(c.prec, c.field.N))]
    for k in range(1, D + 1):
        coeffs.append(coeffs[-1] * c / k)
    return certified_series(coeffs, n, Fraction(0), sigma)
