"""Points of p-adic weight space, the function theta, and torsion.

A point psi = tau^i psi_t is stored as the pair (i, t) with psi(gamma) = 1 + t
for a fixed topological generator gamma of 1 + pZ_p.  The quotient of the
identity component by its torsion is described through

    theta(psi) = log_p(psi(gamma)) / log_p(gamma),

which does not depend on gamma and is additive in psi.
"""

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import ceil
from typing import NamedTuple

from . import errors
from .errors import DomainError
from .padic_fields import (FieldDesc, PadicElement, angle, binom_pow, exp, log1p,
                           teichmuller)


def level_radius(n, p):
    """log_p of the radius of the ball theta(W^0_n): n - 1/(p-1)."""
    return n - Fraction(1, p - 1)


def disk_threshold(n, p):
    """Minimal val(t) on W^0_n: 1/(p^(n-1)(p-1)), i.e. p/(p-1) at n = 0."""
    return Fraction(p, p - 1) if n == 0 else Fraction(1, p ** (n - 1) * (p - 1))


def parse_gamma(text, p, N=24):
    """Parse a generator written like "1+p", "1+p+p^2" or a decimal integer."""
    if isinstance(text, PadicElement):
        return text
    text = str(text).replace(" ", "").replace("**", "^")
    if not re.fullmatch(r"[0-9p^+]+", text):
        raise ValueError(f"cannot parse generator {text!r}")
    total = 0
    for term in text.split("+"):
        base, _, power = term.partition("^")
        value = p if base == "p" else int(base)
        total += value ** (int(power) if power else 1)
    gamma = FieldDesc(p, 0, N)(total)
    if (gamma - 1).is_zero() or (gamma - 1).valuation() != 1:
        raise DomainError(errors.OUT_OF_RANGE, f"{text} does not generate 1 + pZ_p")
    return gamma


def gamma_label(gamma):
    p = gamma.field.p
    n = gamma.residue_int()
    return "1+p" if (gamma - (1 + p)).is_zero() else str(n)


@dataclass(frozen=True, eq=False)
class WeightPoint:
    i: int
    t: PadicElement
    gamma: PadicElement = dc_field(default=None)

    def __post_init__(self):
        p = self.t.field.p
        if self.gamma is None:
            object.__setattr__(self, "gamma", parse_gamma("1+p", p, self.t.field.N))
        object.__setattr__(self, "i", self.i % (p - 1))
        if self.t.val_bound() <= 0:
            raise DomainError(errors.OUT_OF_RANGE, "the disk parameter t must satisfy val(t) > 0")

    @property
    def p(self):
        return self.t.field.p

    @classmethod
    def trivial(cls, field=None, gamma=None):
        field = field or FieldDesc()
        return cls(0, field.zero(), gamma)

    def to_dict(self):
        return {"i": self.i, "t": self.t.to_dict(), "gamma": gamma_label(self.gamma)}

    @classmethod
    def from_dict(cls, d):
        t = PadicElement.from_dict(d["t"])
        gamma = parse_gamma(d.get("gamma", "1+p"), t.field.p, t.field.N)
        return cls(int(d.get("i", 0)), t, gamma)


class QuotientPoint(NamedTuple):
    """A point of X_n given by its theta value."""

    theta_value: PadicElement
    level: int

    @classmethod
    def from_value(cls, x, level=None):
        n = minimal_level(x)
        if level is None:
            level = n
        elif level < n:
            raise DomainError(errors.LEVEL_VIOLATION, f"theta value needs level >= {n}")
        return cls(x, level)

    def to_dict(self):
        return {"theta": self.theta_value.to_dict(), "level": self.level}


def minimal_level(x):
    """Least n with val(x) >= 1/(p-1) - n."""
    p = x.field.p
    return max(0, ceil(Fraction(1, p - 1) - x.val_bound()))


class Classification(NamedTuple):
    level: int
    torsion: bool


def classify(psi):
    p = psi.p
    t = psi.t
    if t.is_zero():
        return Classification(0, True)
    v = t.valuation()
    n = 0
    while v < disk_threshold(n, p):
        n += 1
    torsion = log1p(t).is_zero() and (binom_pow(t, p ** n) - 1).is_zero()
    return Classification(n, torsion)


def theta(psi):
    return log1p(psi.t) / log1p(psi.gamma - 1)


def quotient_point(psi):
    return QuotientPoint(theta(psi), classify(psi).level)


def reparametrize(psi, gamma):
    """The same character, described through the generator ``gamma``."""
    gamma = parse_gamma(gamma, psi.p, psi.t.field.N)
    s = log1p(gamma - 1) / log1p(psi.gamma - 1)
    return WeightPoint(psi.i, binom_pow(psi.t, s) - 1, gamma)


def mul_points(psi, psi2):
    if psi.p != psi2.p:
        raise DomainError(errors.FIELD_MISMATCH, "points over different primes")
    if not (psi.gamma - psi2.gamma).is_zero():
        psi2 = reparametrize(psi2, psi.gamma)
    t, u = psi.t, psi2.t
    return WeightPoint(psi.i + psi2.i, t + u + t * u, psi.gamma)


def eval_char(psi, x):
    """psi(x) = tau(x)^i (1 + t)^s with s = log<x> / log(gamma)."""
    if isinstance(x, int):
        x = FieldDesc(psi.p, 0, psi.t.field.N)(x)
    s = log1p(angle(x) - 1) / log1p(psi.gamma - 1)
    return teichmuller(x) ** psi.i * binom_pow(psi.t, s)


def torsion_char(n, j, field, gamma=None):
    """The point with psi(gamma) = zeta_{p^n}^j."""
    if n < 1:
        raise ValueError("torsion level must be >= 1")
    if j % field.p == 0:
        raise DomainError(errors.NOT_A_UNIT, f"j = {j} must be prime to p")
    if field.m < n:
        raise DomainError(errors.FIELD_TOO_SMALL, f"level-{n} torsion needs m >= {n}, have m = {field.m}")
    return WeightPoint(0, field.zeta(j, level=n) - 1, gamma)


def inverse_theta(x, n, gamma=None):
    """A point psi of W^0_n with theta(psi) = x, through psi(gamma) = exp(log(gamma) x).

    Every other preimage in W^0_n is psi * torsion_char(n, j).
    """
    p = x.field.p
    r = Fraction(1, p - 1)
    v = x.val_bound()
    if v < r - n:
        raise DomainError(errors.LEVEL_VIOLATION, f"val(x) = {v} is outside the level-{n} ball")
    if v <= r - 1:
        raise DomainError(errors.OUT_OF_RANGE,
                          "preimages with val(x) <= 1/(p-1) - 1 need p-power roots outside the cyclotomic tower")
    gamma = parse_gamma("1+p" if gamma is None else gamma, p, x.field.N)
    return WeightPoint(0, exp(log1p(gamma - 1) * x) - 1, gamma)
