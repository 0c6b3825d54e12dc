#!/usr/bin/env python3
"""Timing comparison of the compiled and pure-Python enumeration kernels.

Run from a checkout after `pip install -e .`:

    python3 benchmarks/kernel_bench.py --qubits 3 4 --repeat 3
"""

import argparse
import statistics
import time

from doily import kernels


def _time(fn, repeat):
    best = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best.append(time.perf_counter() - t0)
    return min(best), statistics.median(best)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--qubits", nargs="+", type=int, default=[3, 4])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()

    names = ["fast", "pure"]
    impls = {}
    for name in names:
        try:
            impls[name] = kernels.get_kernel(name)
        except Exception as exc:  # compiled module may be absent
            print("%-5s unavailable (%s)" % (name, exc))
    if "fast" not in impls:
        names.remove("fast")

    print("%-7s %-6s %-9s %12s %12s %8s" % ("task", "qubits", "kernel", "best", "median", "ratio"))
    for n in args.qubits:
        for task, call in (
            ("ovoids", lambda k, n=n: kernels.count_ovoids(n, threads=args.threads, kernel=k)),
            ("census", lambda k, n=n: kernels.run(n, threads=args.threads, classify=True, kernel=k)),
        ):
            base = None
            for name in names:
                k = impls[name]
                best, med = _time(lambda: call(k), args.repeat)
                if base is None:
                    base = best
                print(
                    "%-7s %-6d %-9s %10.4fs %10.4fs %7.1fx"
                    % (task, n, name, best, med, best / base)
                )


if __name__ == "__main__":
    main()
