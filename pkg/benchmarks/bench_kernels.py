#!/usr/bin/env python3
"""Compare the numba kernels against the numpy fallbacks.

Each backend runs in its own interpreter, because the choice is made once
at import time from ROOTCLUSTER_KERNELS::

    python3 benchmarks/bench_kernels.py --repeat 20
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
import numpy as np
from rootcluster import kernels
from rootcluster.kernels import dd, fp
from rootcluster.geometry import Disc
from rootcluster.numeric import Dyadic
from rootcluster.pellet import counting_test
from rootcluster.polynomial import make_family

repeat = int(sys.argv[1])
rng = np.random.default_rng(5)
out = {"backend": kernels.BACKEND, "rows": []}


def best(fn):
    fn()  # warm up (and compile)
    ts = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        ts.append(time.perf_counter() - t)
    return min(ts)


for n in (65, 129, 257):
    m = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    rad = np.abs(rng.standard_normal(n)) * 1e-16
    c = complex(0.3, -0.2)
    hi = rng.standard_normal(n)
    lo = hi * 1e-17
    z = np.zeros(n)
    out["rows"].append(["f64 graeffe", n, best(lambda: fp.enclose_graeffe(m, rad))])
    out["rows"].append(["f64 shift", n, best(lambda: fp.shift_complex(m, c))])
    out["rows"].append(["dd graeffe", n, best(lambda: dd.graeffe(hi, lo, hi, lo))])
    out["rows"].append(["dd shift", n, best(lambda: dd.shift(hi, lo, hi, lo, 0.3, 0.0, -0.2, 0.0))])

f = make_family("bernoulli", 64)
disc = Disc(Dyadic(3, -2), Dyadic(1, -3), Dyadic(1, -2))
out["rows"].append(["counting_test Ber64", 65, best(lambda: counting_test(f, disc, 64))])
print(json.dumps(out))
"""


def run_backend(name: str, repeat: int) -> dict:
    env = dict(os.environ, ROOTCLUSTER_KERNELS=name)
    res = subprocess.run([sys.executable, "-c", WORKER, str(repeat)], env=env,
                         capture_output=True, text=True)
    if res.returncode:
        sys.exit(f"{name} worker failed:\n{res.stderr}")
    return json.loads(res.stdout)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=20)
    args = ap.parse_args(argv)
    jit = run_backend("numba", args.repeat)
    ref = run_backend("numpy", args.repeat)
    if jit["backend"] != "numba":
        print("numba is not importable; only the numpy backend was measured")
    print(f"{'kernel':<22}{'n':>5}{'numba us':>12}{'numpy us':>12}{'speedup':>9}")
    for (name, n, tj), (_, _, tn) in zip(jit["rows"], ref["rows"]):
        print(f"{name:<22}{n:>5}{tj * 1e6:>12.1f}{tn * 1e6:>12.1f}{tn / tj:>8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
