"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Kernel timings call both implementations directly.  The end-to-end rows run
the same workload in two subprocesses, one with PADIC_SEN_PURE=1.
"""

import argparse
import json
import os
import random
import subprocess
import sys
import timeit

from padic_sen import _kernels_py as py

try:
    from padic_sen import _ckernels as ck
except ImportError:
    ck = None

SHAPES = [(3, 2), (3, 3), (5, 2), (7, 2)]

WORKLOAD = """
import json, time
from padic_sen import FieldDesc, log1p
from padic_sen import distributions as dist
from padic_sen.weight_space import WeightPoint
t0 = time.perf_counter()
K = FieldDesc(3, 3, 24)
x = K.zeta() * 4 - 1
for _ in range(20):
    log1p(x)
t1 = time.perf_counter()
psi = WeightPoint(0, FieldDesc(3, 2).zeta() * 2 - 2 + 3)
a = dist.dirac(psi, 2, 32)
for _ in range(3):
    dist.convolve(a, a)
t2 = time.perf_counter()
print(json.dumps({"log1p in Q_3(zeta_27) x20": t1 - t0, "convolve level 2, M=32 x3": t2 - t1}))
"""


def kernel_rows(repeat):
    rng = random.Random(0)
    rows = []
    for p, m in SHAPES:
        d = (p - 1) * p ** (m - 1)
        mod = p ** 24 if p ** 24 < 1 << 62 else p ** 20
        a = [rng.randrange(mod) for _ in range(d)]
        b = [rng.randrange(mod) for _ in range(d)]
        for name, fn in (("poly_mulmod", lambda k: k.poly_mulmod(a, b, p, m, mod)),
                         ("poly_taylor_shift", lambda k: k.poly_taylor_shift(a, mod))):
            n = 200
            tp = min(timeit.repeat(lambda: fn(py), number=n, repeat=repeat)) / n
            tc = min(timeit.repeat(lambda: fn(ck), number=n, repeat=repeat)) / n if ck else float("nan")
            rows.append((f"{name} p={p} m={m} (deg {d})", tp, tc))
    return rows


def end_to_end():
    out = {}
    for label, flag in (("python", "1"), ("cython", "")):
        env = dict(os.environ)
        env.pop("PADIC_SEN_PURE", None)
        if flag:
            env["PADIC_SEN_PURE"] = flag
        res = subprocess.run([sys.executable, "-c", WORKLOAD], env=env, capture_output=True, text=True, check=True)
        out[label] = json.loads(res.stdout)
    return [(k, out["python"][k], out["cython"][k]) for k in out["python"]]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if ck is None:
        print("compiled kernels not built; only the fallback can be timed")
    print(f"{'case':42s} {'python':>12s} {'cython':>12s} {'speedup':>8s}")
    for name, tp, tc in kernel_rows(args.repeat) + end_to_end():
        print(f"{name:42s} {tp * 1e3:10.3f}ms {tc * 1e3:10.3f}ms {tp / tc:7.1f}x")


if __name__ == "__main__":
    main()
