"""Analytic functions on X_n, as truncated expansions sum a_k theta^k.

A function on X_n is determined by coefficients with |a_k| p^(k(n - 1/(p-1))) -> 0,
and its sup-norm is the largest of those weighted magnitudes (read as a sup
over k).  A ``TateSeries`` stores a_0..a_D plus a certified bound ``tail_exp``
on log_p of the weighted magnitudes of every omitted coefficient; polynomials
carry NEG_INF.  Magnitudes are reported as log_p exponents throughout.

The same type also carries series in the disk coordinate t of W^0_n
(``coordinate="t"``), used to pull theta-expansions back along theta(1 + t).
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from . import errors
from ._series import NEG_INF, cauchy, frac_or_none, sup_decreasing_log, weights
from .errors import DomainError
from .padic_fields import FieldDesc, PadicElement, ext_automorphism, log1p
from .weight_space import QuotientPoint, disk_threshold, level_radius, parse_gamma

DEFAULT_D = 64


@dataclass(frozen=True, eq=False)
class TateSeries:
    level: int
    coeffs: tuple
    tail_exp: object = NEG_INF
    coordinate: str = "theta"

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if not self.coeffs:
            raise ValueError("a series needs at least one coefficient")

    @property
    def p(self):
        return self.coeffs[0].field.p

    @property
    def D(self):
        return len(self.coeffs) - 1

    @property
    def radius(self):
        if self.coordinate == "theta":
            return level_radius(self.level, self.p)
        return -disk_threshold(self.level, self.p)

    def weights(self):
        return weights(self.coeffs, self.radius)

    def to_dict(self):
        return {
            "level": self.level,
            "coeffs": [a.to_dict() for a in self.coeffs],
            "tail_bound_exp": frac_or_none(self.tail_exp),
        }

    @classmethod
    def from_dict(cls, d):
        coeffs = [PadicElement.from_dict(a) for a in d["coeffs"]]
        tail = d.get("tail_bound_exp")
        return cls(int(d["level"]), coeffs, NEG_INF if tail is None else Fraction(tail))


def polynomial(coeffs, level, field=None):
    """A polynomial in theta; entries may be ints, Fractions or PadicElements."""
    field = field or next((c.field for c in coeffs if isinstance(c, PadicElement)), FieldDesc())
    return TateSeries(level, [c if isinstance(c, PadicElement) else field(c) for c in coeffs])


def monomial(k, level, field=None):
    return polynomial([0] * k + [1], level, field)


def _check_same_level(f, g):
    if f.level != g.level or f.coordinate != g.coordinate:
        raise DomainError(errors.LEVEL_MISMATCH, f"level {f.level} vs level {g.level}")


def sup_norm(f):
    """log_p of the sup-norm: max of the weighted coefficient magnitudes and the tail bound."""
    return max(max(f.weights()), f.tail_exp)


def add(f, g):
    _check_same_level(f, g)
    D = max(f.D, g.D)
    a = list(f.coeffs) + [f.coeffs[0].field.zero()] * (D - f.D)
    b = list(g.coeffs) + [g.coeffs[0].field.zero()] * (D - g.D)
    return TateSeries(f.level, [x + y for x, y in zip(a, b)], max(f.tail_exp, g.tail_exp), f.coordinate)


def scale(f, c):
    if not isinstance(c, PadicElement):
        c = f.coeffs[0].field(c)
    return TateSeries(f.level, [a * c for a in f.coeffs], f.tail_exp - c.val_bound(), f.coordinate)


def mul(f, g, D=None):
    """Cauchy product truncated at D, with the tail bound of the discarded terms."""
    _check_same_level(f, g)
    if D is None:
        D = min(f.D + g.D, max(DEFAULT_D, f.D, g.D))
    coeffs = cauchy(f.coeffs, g.coeffs, D)
    wf, wg = f.weights(), g.weights()
    tail = max(f.tail_exp + sup_norm(g), sup_norm(f) + g.tail_exp)
    for i, x in enumerate(wf):
        for j, y in enumerate(wg):
            if i + j > D:
                tail = max(tail, x + y)
    return TateSeries(f.level, coeffs, tail, f.coordinate)


def exp_theta_series(c, n, D=DEFAULT_D):
    """exp(c * theta) = sum c^k/k! theta^k on X_n, which needs val(c) >= n."""
    p = c.field.p
    vc = c.val_bound()
    if vc < n:
        raise DomainError(errors.LEVEL_VIOLATION, f"exp(c theta) needs val(c) >= {n}, got {vc}")
    coeffs = [c.field.one(max(c.field.N, c.prec))]
    for k in range(1, D + 1):
        coeffs.append(coeffs[-1] * c / k)
    # weight of c^k/k! is at most k(n - val c) - s_p(k)/(p-1), and s_p(k) >= 1
    tail = (D + 1) * (n - vc) - Fraction(1, p - 1)
    return TateSeries(n, coeffs, tail)


def _point_radius(phi, n):
    x = phi.theta_value if isinstance(phi, QuotientPoint) else phi
    rho = -x.val_bound()
    if rho > level_radius(n, x.field.p):
        raise DomainError(errors.LEVEL_VIOLATION, f"point lies outside X_{n}")
    return x, rho


def translate(f, phi):
    """T_phi f: the expansion of f(phi * psi), i.e. theta -> theta + theta(phi)."""
    if f.coordinate != "theta":
        raise DomainError(errors.LEVEL_MISMATCH, "translation acts on theta-expansions")
    x, rho = _point_radius(phi, f.level)
    r = f.radius
    D = f.D
    powers = [x.field.one(max(x.prec, x.field.N))]
    for _ in range(D):
        powers.append(powers[-1] * x)
    out = []
    for m in range(D + 1):
        acc = f.coeffs[m]
        for k in range(m + 1, D + 1):
            acc = acc + f.coeffs[k] * powers[k - m] * comb(k, m)
        if f.tail_exp != NEG_INF:
            err = f.tail_exp - m * rho - (D + 1) * (r - rho)
            acc = acc.add_bigoh(-err)
        out.append(acc)
    return TateSeries(f.level, out, f.tail_exp)


def evaluate(f, psi):
    """f at a point of X_n; the tail bound caps the precision of the result."""
    x, rho = _point_radius(psi, f.level) if f.coordinate == "theta" else (psi, -psi.val_bound())
    r = f.radius
    acc = f.coeffs[-1]
    for a in reversed(f.coeffs[:-1]):
        acc = acc * x + a
    if f.tail_exp != NEG_INF:
        if rho >= r:
            raise DomainError(errors.LEVEL_VIOLATION, "cannot bound the tail on the boundary")
        acc = acc.add_bigoh(-(f.tail_exp - (f.D + 1) * (r - rho)))
    return acc


def act_coefficients(f, a):
    return TateSeries(f.level, [ext_automorphism(c, a) for c in f.coeffs], f.tail_exp, f.coordinate)


def theta_t_series(n, D=DEFAULT_D, gamma="1+p", field=None):
    """theta(1 + t) = log(1 + t)/log(gamma) as a function on the disk W^0_n."""
    field = field or FieldDesc()
    p = field.p
    gamma = parse_gamma(gamma, p, field.N)
    inv_lg = log1p(gamma - 1).inverse()
    coeffs = [field.zero()]
    for k in range(1, D + 1):
        coeffs.append(inv_lg / k if k % 2 else -inv_lg / k)
    r = -disk_threshold(n, p)
    # weight of the k-th term is k r + val_p(k) + val(log gamma)
    tail = sup_decreasing_log(D, r, -inv_lg.val_bound(), p)
    return TateSeries(n, coeffs, tail, coordinate="t")


def pullback(f, D=None, gamma="1+p"):
    """f(theta(1 + t)) as a t-expansion on W^0_n, truncated at degree D."""
    if f.coordinate != "theta":
        raise DomainError(errors.LEVEL_MISMATCH, "pullback expects a theta-expansion")
    D = f.D if D is None else D
    s = theta_t_series(f.level, D, gamma, f.coeffs[0].field.with_level(0))
    # Horner in s; s has no constant term, so degrees <= D only see a_0..a_D
    coeffs = list(f.coeffs[:D + 1])
    acc = [coeffs[-1]]
    for a in reversed(coeffs[:-1]):
        acc = cauchy(acc, s.coeffs, D)
        acc[0] = acc[0] + a
    acc += [acc[0].field.zero()] * (D + 1 - len(acc))
    # theta maps W^0_n onto the ball, so the Gauss norm is preserved
    return TateSeries(f.level, acc[:D + 1], sup_norm(f), coordinate="t")
