"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``PADIC_SEN_PURE=1`` to force the fallback.
"""

import os

from . import _kernels_py

_LIMIT = 1 << 62

try:
    if os.environ.get("PADIC_SEN_PURE"):
        raise ImportError("pure-Python kernels requested")
    from . import _ckernels
except ImportError:
    _ckernels = None

BACKEND = "cython" if _ckernels is not None else "python"

reduce_cyclotomic = _kernels_py.reduce_cyclotomic


def poly_mulmod(a, b, p, m, modulus):
    if _ckernels is not None and modulus < _LIMIT:
        return _ckernels.poly_mulmod(a, b, p, m, modulus)
    return _kernels_py.poly_mulmod(a, b, p, m, modulus)


def poly_taylor_shift(a, modulus):
    if _ckernels is not None and modulus < _LIMIT:
        return _ckernels.poly_taylor_shift(a, modulus)
    return _kernels_py.poly_taylor_shift(a, modulus)
