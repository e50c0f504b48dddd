"""Pure-Python polynomial kernels over Z/(modulus) modulo the p^m-th cyclotomic polynomial.

These are the reference implementations; ``_ckernels`` mirrors them for
moduli below 2**62.
"""


def reduce_cyclotomic(c, p, m, modulus):
    """Reduce a coefficient list of length <= 2 p^m modulo Phi_{p^m} and ``modulus``."""
    q = p ** (m - 1)
    n = p * q
    d = n - q
    folded = [0] * n
    for i, ci in enumerate(c):
        if ci:
            folded[i % n] += ci
    # x^{d + r} = -sum_{j < p-1} x^{j q + r}
    for r in range(q):
        top = folded[d + r]
        if top:
            for j in range(p - 1):
                folded[j * q + r] -= top
    return [ci % modulus for ci in folded[:d]]


def poly_mulmod(a, b, p, m, modulus):
    d = len(a)
    prod = [0] * (2 * d - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    return reduce_cyclotomic(prod, p, m, modulus)


def poly_taylor_shift(a, modulus):
    """Coefficients of a(1 + x), reduced mod ``modulus``."""
    c = list(a)
    d = len(c)
    for i in range(d - 1):
        for j in range(d - 2, i - 1, -1):
            c[j] += c[j + 1]
    return [ci % modulus for ci in c]
