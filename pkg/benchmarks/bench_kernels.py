"""Compare the compiled and pure-Python subset valuation kernels.

Tables come from a real lifted design so the valuation patterns are
representative.  Usage: ``python benchmarks/bench_kernels.py [--repeat 3]``.
"""

import argparse
import time

from intfact import kernels
from intfact.arith import primes_up_to
from intfact.design import LengthSpec, build_design, choose_parameters, split_polys
from intfact.lift import lift
from intfact.subsets import valuation_table


def family(ms):
    spec = LengthSpec(ms)
    fs = split_polys(build_design(spec, choose_parameters(spec)))
    lifted, _ = lift(fs)
    return fs, lifted


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    impls = kernels.backends()
    if "cython" not in impls:
        print("compiled extension not built; only the python backend is available")
    print(f"{'case':<40}{'parts':>6}{'points':>8}" + "".join(f"{k:>12}" for k in impls) + f"{'speedup':>10}")
    for ms in [(1, 1, 1, 1), (1, 1, 1, 2), (1, 1, 1, 1, 1), (1, 1, 1, 1, 2), (1, 1, 1, 1, 1, 1)]:
        fs, lifted = family(ms)
        n = len(fs)
        npts = sum(f.degree for f in fs) + 1
        q = primes_up_to(npts - 1)[0]
        t_o = valuation_table(fs, q, npts)
        t_l = valuation_table(lifted, q, npts)
        cases = [
            ("subset_min_sums", lambda m: m.subset_min_sums(t_o, n, npts)),
            ("mixed_mismatches", lambda m: m.mixed_mismatches(t_o, t_l, n, npts)),
        ]
        for name, call in cases:
            timings = {k: best_of(lambda: call(m), args.repeat) for k, m in impls.items()}
            speed = f"{timings['python'] / timings['cython']:.1f}x" if "cython" in timings else "-"
            label = f"{name} ms={list(ms)}"
            print(f"{label:<40}{n:>6}{npts:>8}" + "".join(f"{t * 1e3:>10.2f}ms" for t in timings.values()) + f"{speed:>10}")


if __name__ == "__main__":
    main()
