import os
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from padic_sen import _kernels_py as py
from padic_sen import kernels

ck = pytest.importorskip("padic_sen._ckernels")

SHAPES = [(3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1)]


@st.composite
def operands(draw):
    p, m = draw(st.sampled_from(SHAPES))
    d = (p - 1) * p ** (m - 1)
    modulus = p ** draw(st.integers(1, 26 if p == 3 else 18))
    vec = st.lists(st.integers(0, modulus - 1), min_size=d, max_size=d)
    return p, m, modulus, draw(vec), draw(vec)


@given(operands())
def test_mulmod_backends_agree(data):
    p, m, modulus, a, b = data
    assert ck.poly_mulmod(a, b, p, m, modulus) == py.poly_mulmod(a, b, p, m, modulus)


@given(operands())
def test_taylor_shift_backends_agree(data):
    _, _, modulus, a, _ = data
    assert ck.poly_taylor_shift(a, modulus) == py.poly_taylor_shift(a, modulus)


def test_mulmod_matches_schoolbook_reduction():
    # zeta_9^5 * zeta_9^4 = zeta_9^9 = 1
    a = [0, 0, 0, 0, 0, 1]
    b = [0, 0, 0, 0, 1, 0]
    assert py.poly_mulmod(a, b, 3, 2, 3 ** 10) == [1, 0, 0, 0, 0, 0]


def test_large_modulus_falls_back():
    a = [1, 2]
    big = 3 ** 60
    assert kernels.poly_mulmod(a, a, 3, 1, big) == py.poly_mulmod(a, a, 3, 1, big)


def test_pure_backend_selected_by_environment():
    code = ("import padic_sen; from padic_sen import FieldDesc, log1p; "
            "print(padic_sen.BACKEND, log1p(FieldDesc(3, 2).zeta() * 4 - 1).to_dict())")
    outs = {}
    for flag in ("", "1"):
        env = dict(os.environ)
        env.pop("PADIC_SEN_PURE", None)
        if flag:
            env["PADIC_SEN_PURE"] = flag
        outs[flag] = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True,
                                    env=env, check=True).stdout.split(" ", 1)
    assert outs[""][0] == "cython" and outs["1"][0] == "python"
    assert outs[""][1] == outs["1"][1]
