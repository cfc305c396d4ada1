"""Compare the compiled and pure-Python polynomial kernels.

    python benchmarks/bench_kernels.py [--repeat N]

Both kernels run the same workloads on the same inputs; results are checked
for equality before timings are reported.
"""

import argparse
import random
import statistics
import time
from itertools import combinations

from weightedproj import _kernels, _kernels_py
from weightedproj.bundle import chern_factors, pullback_fan
from weightedproj.fan import fan_from_weights
from weightedproj.piecewise import courant
from weightedproj.polynomial import Polynomial

try:
    from weightedproj import _speedups
except ImportError:
    _speedups = None


def courant_products(fans):
    out = []
    for fan in fans:
        a = [courant(fan, i) for i in range(fan.size)]
        for k in range(2, fan.size + 1):
            for s in combinations(range(fan.size), k):
                prod = a[s[0]]
                for i in s[1:]:
                    prod = prod * a[i]
                out.append(prod.content())
    return out


def chern_products(pfans):
    out = []
    for factors in pfans:
        prod = factors[0]
        for f in factors[1:]:
            prod = prod * f
        out.append(prod.is_zero())
    return out


def dense_powers(polys):
    return [(p ** 8).terms for p in polys]


def use(kernel):
    _kernels.mul_terms = kernel.mul_terms
    _kernels.add_terms = kernel.add_terms


def timed(fn, arg, repeat):
    runs = []
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn(arg)
        runs.append(time.perf_counter() - start)
    return statistics.median(runs), result


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if _speedups is None:
        raise SystemExit("compiled extension not built; run `pip install -e . --no-build-isolation`")

    rng = random.Random(1)
    chis = [tuple(rng.randint(1, 40) for _ in range(rng.randint(5, 7))) for _ in range(30)]
    fans = [fan_from_weights(c) for c in chis]
    pfans = [chern_factors(pullback_fan(f)) for f in fans]
    polys = [
        sum((Polynomial.variable(i, 4) * rng.randint(-9, 9) for i in range(4)), Polynomial.constant(1, 4))
        for _ in range(20)
    ]
    workloads = [
        ("courant products", courant_products, fans),
        ("chern products", chern_products, pfans),
        ("dense 8th powers", dense_powers, polys),
    ]

    print(f"{'workload':<20}{'python (s)':>12}{'cython (s)':>12}{'speed-up':>10}")
    for name, fn, arg in workloads:
        use(_kernels_py)
        t_py, r_py = timed(fn, arg, args.repeat)
        use(_speedups)
        t_cy, r_cy = timed(fn, arg, args.repeat)
        assert r_py == r_cy, name
        print(f"{name:<20}{t_py:>12.4f}{t_cy:>12.4f}{t_py / t_cy:>9.2f}x")


if __name__ == "__main__":
    main()
