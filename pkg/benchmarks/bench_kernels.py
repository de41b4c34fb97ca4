"""Compare the compiled and pure-Python coefficient kernels.

Each backend runs in its own interpreter because the kernel is chosen at
import time. Usage::

    python3 benchmarks/bench_kernels.py            # both backends, table
    python3 benchmarks/bench_kernels.py --quick    # smaller repetition counts
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import timeit

WORKLOADS = {
    "mul 16x16": "mul(a16, b16)",
    "mul 200x200": "mul(a200, b200)",
    "mul 2000x2000": "mul(a2000, b2000)",
    "divmod 400/100": "divmod_monic(p400, m100)",
    "divmod 3000/600": "divmod_monic(p3000, m600)",
    "qbinomial(60,30)": "clear_caches(); q_binomial(60, 30)",
    "thm1 m=3 n<=3": "clear_caches(); sweep_thm1()",
}

SETUP = """
import random
from qcong._backend import mul, divmod_monic
from qcong.qkit import q_binomial, clear_caches
from qcong.families.theorems import SumSpec, theorem1_sum, theorem1_modulus
from qcong.congruence import divides
import itertools
rng = random.Random(20261019)
def poly(n, lo=-50, hi=50):
    return [rng.randint(lo, hi) for _ in range(n)]
a16, b16 = poly(16), poly(16)
a200, b200 = poly(200), poly(200)
a2000, b2000 = poly(2000), poly(2000)
m100 = poly(99) + [1]
m600 = poly(599) + [1]
p400 = mul(m100, poly(301))
p3000 = mul(m600, poly(2401))
def sweep_thm1():
    for n in itertools.product(range(1, 4), repeat=3):
        for j in range(4):
            s = SumSpec(n, j, 1)
            assert divides(theorem1_modulus(s), theorem1_sum(s), "expanded").holds
"""


def _child(quick: bool) -> dict:
    from qcong._backend import NAME

    out = {"backend": NAME}
    for name, stmt in WORKLOADS.items():
        timer = timeit.Timer(stmt, setup=SETUP)
        number, _ = timer.autorange()
        if quick:
            number = max(1, number // 4)
        best = min(timer.repeat(repeat=3, number=number)) / number
        out[name] = best
    return out


def _run(pure: bool, quick: bool) -> dict:
    env = dict(os.environ)
    env.pop("QCONG_PURE_PYTHON", None)
    if pure:
        env["QCONG_PURE_PYTHON"] = "1"
    cmd = [sys.executable, __file__, "--child"] + (["--quick"] if quick else [])
    res = subprocess.run(cmd, env=env, capture_output=True, text=True, check=True)
    return json.loads(res.stdout)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--child", action="store_true", help=argparse.SUPPRESS)
    parser.add_argument("--quick", action="store_true")
    args = parser.parse_args(argv)
    if args.child:
        print(json.dumps(_child(args.quick)))
        return 0
    fast = _run(False, args.quick)
    slow = _run(True, args.quick)
    if fast["backend"] != "cython":
        print("compiled kernels are not built; both columns use pure Python", file=sys.stderr)
    print(f"{'workload':<20} {'cython':>12} {'python':>12} {'speedup':>8}")
    for name in WORKLOADS:
        f, s = fast[name], slow[name]
        print(f"{name:<20} {f * 1e3:>10.3f}ms {s * 1e3:>10.3f}ms {s / f:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
