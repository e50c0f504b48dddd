"""Coefficient-list helpers shared by the analytic-function and B_Sen modules."""

from fractions import Fraction

NEG_INF = float("-inf")


def weights(coeffs, radius):
    """log_p of |a_k| * p^(k * radius), each an upper bound."""
    return [k * radius - a.val_bound() for k, a in enumerate(coeffs)]


def cauchy(a, b, D):
    """Coefficients 0..D of the product of two truncated series."""
    out = []
    for k in range(D + 1):
        acc = None
        for i in range(max(0, k - len(b) + 1), min(k, len(a) - 1) + 1):
            term = a[i] * b[k - i]
            acc = term if acc is None else acc + term
        if acc is None:
            acc = a[0].field.zero()
        out.append(acc)
    return out


def sup_decreasing_log(D, slope, offset, p):
    """sup over k > D of k*slope + floor(log_p k) + offset, for slope < 0."""
    s = 0
    while p ** (s + 1) <= D + 1:
        s += 1
    best = NEG_INF
    while True:
        k = max(D + 1, p ** s)
        best = max(best, k * slope + s + offset)
        if p ** s * (p - 1) * (-slope) >= 1 and p ** s >= D + 1:
            return best
        s += 1


def frac_or_none(x):
    return None if x == NEG_INF else str(Fraction(x))
