"""Capped-precision arithmetic in Q_p and the cyclotomic fields Q_p(zeta_{p^m}).

An element is stored as ``p**shift * sum(coeffs[i] * zeta**i)`` together with
an absolute precision ``prec``: the true value is known up to an error of
valuation >= prec.  Valuations are normalized so that val(p) = 1; in the
totally ramified field of level m they are rationals with denominator
e = (p-1) p^(m-1), and so are precisions.

Coefficients are kept reduced mod p^(ceil(prec) - shift).  Every operation
derives the precision of its result from the precisions and valuations of
its inputs, so a result never claims more than the inputs justify.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, comb
from typing import NamedTuple

from . import errors
from .errors import DomainError
from .kernels import poly_mulmod, poly_taylor_shift, reduce_cyclotomic


def _is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def vp_int(n, p):
    """p-adic valuation of a nonzero integer."""
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp_factorial(k, p):
    """val_p(k!) by Legendre's formula."""
    v, q = 0, p
    while q <= k:
        v += k // q
        q *= p
    return v


def digit_sum(k, p):
    s = 0
    while k:
        s += k % p
        k //= p
    return s


class PrecisionZero(NamedTuple):
    """Valuation of an element indistinguishable from 0: only a floor is known."""

    floor: Fraction

    def __str__(self):
        return f">= {self.floor}"


@dataclass(frozen=True)
class FieldDesc:
    """Q_p (m = 0) or Q_p(zeta_{p^m}), with default absolute precision N."""

    p: int = 3
    m: int = 0
    N: int = 24

    def __post_init__(self):
        if self.p < 3 or not _is_prime(self.p):
            raise ValueError(f"p must be an odd prime, got {self.p}")
        if self.m < 0:
            raise ValueError("cyclotomic level m must be >= 0")
        if self.N < 1:
            raise ValueError("precision N must be >= 1")

    @property
    def degree(self):
        if self.m == 0:
            return 1
        return (self.p - 1) * self.p ** (self.m - 1)

    # totally ramified, so the ramification index equals the degree
    e = degree

    def with_level(self, m):
        return FieldDesc(self.p, m, self.N)

    def join(self, other):
        if other.p != self.p:
            raise DomainError(errors.FIELD_MISMATCH, f"cannot combine p={self.p} with p={other.p}")
        if other == self:
            return self
        return FieldDesc(self.p, max(self.m, other.m), max(self.N, other.N))

    def __call__(self, value, prec=None):
        if isinstance(value, PadicElement):
            x = embed(value, self.join(value.field))
            return x if prec is None else x.add_bigoh(prec)
        prec = Fraction(self.N if prec is None else prec)
        if isinstance(value, int):
            value = Fraction(value)
        if not isinstance(value, Fraction):
            raise TypeError(f"cannot build a p-adic number from {type(value).__name__}")
        if value == 0:
            return self.zero(prec)
        p = self.p
        num, den = value.numerator, value.denominator
        v = vp_int(num, p) - vp_int(den, p)
        top = ceil(prec)
        if v >= top:
            return self.zero(prec)
        mod = p ** (top - v)
        num //= p ** max(0, v)
        den //= p ** max(0, -v)
        unit = num * pow(den, -1, mod) % mod
        return _make(self, [unit] + [0] * (self.degree - 1), v, prec)

    def zero(self, prec=None):
        prec = Fraction(self.N if prec is None else prec)
        return _make(self, [0] * self.degree, ceil(prec), prec)

    def one(self, prec=None):
        return self(1, prec)

    def zeta(self, k=1, level=None, prec=None):
        """zeta_{p^level}^k, as an element of this field."""
        level = self.m if level is None else level
        if level > self.m:
            raise DomainError(errors.FIELD_TOO_SMALL,
                              f"zeta_{{p^{level}}} is not in the field of level {self.m}")
        if level == 0:
            return self.one(prec)
        exponent = (k * self.p ** (self.m - level)) % self.p ** self.m
        c = [0] * (self.p ** self.m)
        c[exponent] = 1
        prec = Fraction(self.N if prec is None else prec)
        mod = self.p ** ceil(prec)
        return _make(self, reduce_cyclotomic(c, self.p, self.m, mod), 0, prec)

    def from_coeffs(self, coeffs, shift=0, prec=None):
        coeffs = list(coeffs)
        if len(coeffs) > self.degree:
            raise ValueError(f"at most {self.degree} coefficients expected")
        coeffs += [0] * (self.degree - len(coeffs))
        prec = Fraction(self.N if prec is None else prec)
        return _make(self, coeffs, shift, prec)


def _make(field, coeffs, shift, prec):
    p = field.p
    top = ceil(prec)
    if shift < top:
        mod = p ** (top - shift)
        cs = [c % mod for c in coeffs]
        if any(cs):
            while all(c % p == 0 for c in cs):
                cs = [c // p for c in cs]
                shift += 1
                mod //= p
            x = _raw(field, tuple(cs), shift, prec)
            # only a representative in the top p-adic digit can sit below prec
            if shift + 1 < prec or field.m == 0 or x._rep_val() < prec:
                return x
    return _raw(field, (0,) * field.degree, top, prec)


def _raw(field, coeffs, shift, prec):
    x = object.__new__(PadicElement)
    x.field = field
    x.coeffs = coeffs
    x.shift = shift
    x.prec = prec
    x._v = None
    return x


class PadicElement:
    __slots__ = ("field", "coeffs", "shift", "prec", "_v")

    def __init__(self, field, coeffs, shift=0, prec=None):
        y = field.from_coeffs(coeffs, shift, prec)
        self.field, self.coeffs, self.shift, self.prec, self._v = (
            y.field, y.coeffs, y.shift, y.prec, None)

    # -- valuation -------------------------------------------------------

    def is_zero(self):
        return not any(self.coeffs)

    def _rep_val(self):
        """Exact valuation of the stored representative (assumed nonzero)."""
        if self._v is None:
            if self.field.m == 0:
                self._v = Fraction(self.shift)
            else:
                p, e = self.field.p, self.field.e
                rel = ceil(self.prec) - self.shift
                # in the basis pi^i, pi = zeta - 1, the terms have distinct valuations mod 1/e
                b = poly_taylor_shift(list(self.coeffs), p ** rel)
                best = min(vp_int(bi, p) * e + i for i, bi in enumerate(b) if bi)
                self._v = self.shift + Fraction(best, e)
        return self._v

    def valuation(self):
        """Exact valuation; raises if the element is zero at its precision."""
        if self.is_zero():
            raise DomainError(errors.PRECISION_LOST, "valuation of an element that is 0 at its precision")
        return self._rep_val()

    def val_bound(self):
        """A certified lower bound on the valuation of the true value."""
        if self.is_zero():
            return self.prec
        return self._rep_val()

    # -- precision -------------------------------------------------------

    def add_bigoh(self, prec):
        prec = Fraction(prec)
        if prec >= self.prec:
            return self
        return _make(self.field, self.coeffs, self.shift, prec)

    def lift_to(self, field):
        return embed(self, field)

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, PadicElement):
            if other.field == self.field:
                return self, other
            field = self.field.join(other.field)
            return embed(self, field), embed(other, field)
        if isinstance(other, (int, Fraction)):
            return self, self.field(other, self.prec)
        return None

    def __add__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        p = x.field.p
        s = min(x.shift, y.shift)
        cx = p ** (x.shift - s)
        cy = p ** (y.shift - s)
        coeffs = [a * cx + b * cy for a, b in zip(x.coeffs, y.coeffs)]
        return _make(x.field, coeffs, s, min(x.prec, y.prec))

    __radd__ = __add__

    def __neg__(self):
        return _make(self.field, [-c for c in self.coeffs], self.shift, self.prec)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, PadicElement)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def _scale(self, q):
        """Multiplication by an exact nonzero rational: shifts precision by val_p(q)."""
        p = self.field.p
        num, den = q.numerator, q.denominator
        v = vp_int(num, p) - vp_int(den, p)
        num //= p ** max(0, v)
        den //= p ** max(0, -v)
        prec = self.prec + v
        shift = self.shift + v
        rel = ceil(prec) - shift
        if rel <= 0 or self.is_zero():
            return self.field.zero(prec)
        mod = p ** rel
        u = num * pow(den, -1, mod) % mod
        return _make(self.field, [c * u for c in self.coeffs], shift, prec)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return self.field.zero(max(self.prec, self.field.N))
            return self._scale(Fraction(other))
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        prec = min(x.prec + y.val_bound(), y.prec + x.val_bound())
        if x.is_zero() or y.is_zero():
            return x.field.zero(prec)
        shift = x.shift + y.shift
        rel = ceil(prec) - shift
        if rel <= 0:
            return x.field.zero(prec)
        f = x.field
        mod = f.p ** rel
        if f.m == 0:
            coeffs = [x.coeffs[0] * y.coeffs[0]]
        else:
            coeffs = poly_mulmod(list(x.coeffs), list(y.coeffs), f.p, f.m, mod)
        return _make(f, coeffs, shift, prec)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("element is 0 at its precision")
        f = self.field
        v = self._rep_val()
        prec = self.prec - 2 * v
        if f.m == 0:
            rel = ceil(prec) + self.shift
            mod = f.p ** rel
            return _make(f, [pow(self.coeffs[0], -1, mod)], -self.shift, prec)
        # x^{-1} = (product of the other conjugates) / Norm(x)
        others = f.one(max(f.N, self.prec))
        for a in _unit_residues(f.p, f.m):
            if a != 1:
                others = others * ext_automorphism(self, a)
        nrm = _constant_part(others * self)
        return (others * nrm.inverse()).add_bigoh(prec)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._scale(1 / Fraction(other))
        if isinstance(other, PadicElement):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one(max(self.field.N, self.prec))
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, PadicElement)):
            return (self - other).is_zero()
        return NotImplemented

    __hash__ = None

    def __repr__(self):
        f = self.field
        prec = self.prec
        if self.is_zero():
            return f"O({f.p}^{prec})"
        if f.m == 0:
            body = f"{self.coeffs[0]}"
        else:
            terms = [f"{c}*z^{i}" if i else f"{c}" for i, c in enumerate(self.coeffs) if c]
            body = "(" + " + ".join(terms) + ")"
        if self.shift:
            body += f"*{f.p}^{self.shift}"
        return f"{body} + O({f.p}^{prec})"

    # -- encoding ----------------------------------------------------------

    def residue_int(self):
        """The integer p^shift * c_0 (Q_p elements of nonnegative shift)."""
        if self.field.m != 0 or self.shift < 0:
            raise ValueError("residue_int needs an element of Z_p")
        return self.coeffs[0] * self.field.p ** self.shift if not self.is_zero() else 0

    def to_dict(self):
        f = self.field
        return {
            "p": f.p, "m": f.m, "N": f.N,
            "coeffs": [str(c) for c in self.coeffs],
            "shift": self.shift,
            "prec": str(self.prec),
        }

    @classmethod
    def from_dict(cls, d):
        f = FieldDesc(int(d["p"]), int(d.get("m", 0)), int(d.get("N", 24)))
        prec = Fraction(d["prec"]) if "prec" in d else Fraction(f.N)
        return f.from_coeffs([int(c) for c in d["coeffs"]], int(d.get("shift", 0)), prec)


def _unit_residues(p, m):
    return [a for a in range(1, p ** m) if a % p]


def Qp_part(x):
    """View an element of a cyclotomic field that lies in Q_p (at its precision) as an element of Q_p."""
    f = x.field
    if f.m == 0 or x.is_zero():
        return _constant_part(x)
    rel = ceil(x.prec) - x.shift
    b = poly_taylor_shift(list(x.coeffs), f.p ** rel)
    # in the orthogonal basis pi^i every higher term must vanish at precision
    if any(bi and x.shift + vp_int(bi, f.p) + Fraction(i, f.e) < x.prec for i, bi in enumerate(b) if i):
        raise DomainError(errors.FIELD_MISMATCH, "element is not Q_p-rational")
    return _constant_part(x)


def _constant_part(x):
    """The pi^0 coordinate a(1) = sum of the zeta-coefficients, as an element of Q_p."""
    g = x.field.with_level(0)
    if x.is_zero():
        return g.zero(x.prec)
    return _make(g, [sum(x.coeffs)], x.shift, x.prec)


def embed(x, field):
    """Image of x under Q_p(zeta_{p^m}) -> Q_p(zeta_{p^M}), zeta_{p^m} = zeta_{p^M}^{p^(M-m)}."""
    f = x.field
    if field == f:
        return x
    if field.p != f.p or field.m < f.m:
        raise DomainError(errors.FIELD_MISMATCH, f"cannot embed level {f.m} into level {field.m}")
    coeffs = [0] * field.degree
    step = f.p ** (field.m - f.m) if f.m else 0
    for i, c in enumerate(x.coeffs):
        coeffs[i * step] = c
    y = _raw(field, tuple(coeffs), x.shift, x.prec)
    if x._v is not None:
        y._v = x._v
    return y


# ---------------------------------------------------------------------------
# operations


def val(x):
    """Valuation normalized by val(p) = 1, or PrecisionZero for elements that are 0 at precision."""
    if x.is_zero():
        return PrecisionZero(x.prec)
    return x.valuation()


def norm(x):
    """Norm to Q_p, as the product of all Galois conjugates."""
    f = x.field
    if f.m == 0:
        return x
    total = f.one(max(f.N, x.prec))
    for a in _unit_residues(f.p, f.m):
        total = total * ext_automorphism(x, a)
    return _constant_part(total)


def ext_automorphism(x, a):
    """The automorphism zeta_{p^m} -> zeta_{p^m}^a."""
    f = x.field
    if a % f.p == 0:
        raise DomainError(errors.NOT_A_UNIT, f"{a} is not a unit mod {f.p}")
    if f.m == 0 or x.is_zero():
        return x
    n = f.p ** f.m
    a %= n
    if a == 1:
        return x
    c = [0] * n
    for i, ci in enumerate(x.coeffs):
        if ci:
            c[i * a % n] += ci
    mod = f.p ** (ceil(x.prec) - x.shift)
    y = _raw(f, tuple(reduce_cyclotomic(c, f.p, f.m, mod)), x.shift, x.prec)
    y._v = x._v
    return y


def _require_zp_unit(x):
    if x.field.m != 0:
        raise DomainError(errors.FIELD_MISMATCH, "the Teichmuller lift is only defined on Z_p^x")
    if x.is_zero() or x.valuation() != 0:
        raise DomainError(errors.NOT_A_UNIT, "expected a unit of Z_p")


def teichmuller(x):
    """The (p-1)-st root of unity congruent to x mod p, to precision N."""
    if isinstance(x, int):
        x = FieldDesc()(x)
    _require_zp_unit(x)
    f = x.field
    mod = f.p ** f.N
    y = x.coeffs[0] % mod
    while True:
        z = pow(y, f.p, mod)
        if z == y:
            break
        y = z
    return f(y)


def angle(x):
    """<x> = x / teichmuller(x), an element of 1 + pZ_p."""
    _require_zp_unit(x)
    return x * teichmuller(x).inverse()


def _log_tail_min(j0, v, p):
    """min over j >= j0 of j*v - floor(log_p j): a lower bound on val(y^j / j)."""
    s = 0
    while p ** (s + 1) <= j0:
        s += 1
    best = j0 * v - s
    while True:
        s += 1
        cand = p ** s * v - s
        best = min(best, cand)
        if p ** s * (p - 1) * v >= 1:
            return best


def _log_series(y):
    p = y.field.p
    if y.is_zero():
        return y
    v = y.valuation()
    total = y
    power = y
    j = 1
    while _log_tail_min(j + 1, v, p) < total.prec:
        j += 1
        power = power * y
        term = power / j
        total = total + term if j % 2 else total - term
    return total


def _pth_power_minus_one(y):
    p = y.field.p
    total = y * p
    power = y
    for j in range(2, p + 1):
        power = power * y
        total = total + power * comb(p, j)
    return total


def log1p(x, accelerate=True):
    """log_p(1 + x) for val(x) > 0.

    With ``accelerate`` (default), 1 + x is first raised to p-th powers until
    val(x) > 1/(p-1), and the result divided by the matching power of p;
    otherwise the defining series is summed directly.
    """
    p = x.field.p
    if x.is_zero():
        if x.prec <= 0:
            raise DomainError(errors.LOG_DIVERGES, "argument not certified inside the unit disk")
        return x
    if x.valuation() <= 0:
        raise DomainError(errors.LOG_DIVERGES, f"log1p needs val(x) > 0, got {x.valuation()}")
    if not accelerate:
        return _log_series(x)
    k = 0
    threshold = Fraction(1, p - 1)
    while not x.is_zero() and x.valuation() <= threshold:
        x = _pth_power_minus_one(x)
        k += 1
    return _log_series(x) / p ** k


def exp(x):
    """exp_p(x) for val(x) > 1/(p-1)."""
    f = x.field
    p = f.p
    r = Fraction(1, p - 1)
    v = x.val_bound()
    if v <= r:
        raise DomainError(errors.EXP_DIVERGES,
                          f"exp needs val(x) > 1/(p-1) = {r}, got {'>= ' if x.is_zero() else ''}{v}")
    total = f.one(max(f.N, x.prec))
    if x.is_zero():
        return total.add_bigoh(x.prec)
    term = total
    k = 0
    # val(x^k/k!) >= k*v - (k-1)/(p-1)
    while (k + 1) * (v - r) + r < total.prec:
        k += 1
        term = term * x / k
        total = total + term
    return total


def _as_zp(s, field):
    if isinstance(s, PadicElement):
        if s.field.m != 0:
            raise DomainError(errors.NOT_IN_ZP, "exponent must lie in Q_p")
        if s.val_bound() < 0:
            raise DomainError(errors.NOT_IN_ZP, "exponent has negative valuation")
        return s
    s = Fraction(s)
    if s.denominator % field.p == 0:
        raise DomainError(errors.NOT_IN_ZP, f"{s} is not in Z_p")
    return field.with_level(0)(s)


def binom_pow(t, s):
    """(1 + t)^s = sum_k C(s, k) t^k for val(t) > 0 and s in Z_p."""
    f = t.field
    vt = t.val_bound()
    if vt <= 0:
        raise DomainError(errors.OUT_OF_RANGE, "binom_pow needs t in the open unit disk")
    if isinstance(s, int) and s >= 0:
        total = f.one(max(f.N, t.prec))
        power = total
        for k in range(1, s + 1):
            if k * vt >= total.prec:
                break
            power = power * t
            total = total + power * comb(s, k)
        return total
    s = _as_zp(s, f)
    total = f.one(max(f.N, t.prec, s.prec))
    coef = f.with_level(0).one(total.prec)
    power = total
    k = 0
    while (k + 1) * vt < total.prec:
        k += 1
        coef = coef * (s - (k - 1)) / k
        power = power * t
        total = total + coef * power
    return total
