"""Time the compiled kernels against the pure-Python fallback.

Run with ``python3 benchmarks/bench_kernels.py [--repeat N]``.
"""

import argparse
import sys
import timeit

import numpy as np

from gstar import kernels
from gstar.search import candidate_families, permutation_maps


def cases(r_scan: int):
    fams = candidate_families(r_scan)
    dtable = kernels.disjoint_table(r_scan)
    pmaps = permutation_maps(r_scan)
    rng = np.random.default_rng(0)
    cells = rng.integers(1, 5, size=(64, 64)).tolist()
    return {
        f"scan_pairs r={r_scan}": lambda b: kernels.scan_pairs(r_scan, fams, fams, dtable, pmaps, True, backend=b),
        "brute_force_min n=4 r=2": lambda b: kernels.brute_force_min(4, 2, backend=b),
        "brute_force_min n=3 r=3": lambda b: kernels.brute_force_min(3, 3, backend=b),
        "touched 64x64 r=4": lambda b: kernels.touched(cells, 4, backend=b),
    }


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--r", type=int, default=3, help="color count for the pair scan")
    args = ap.parse_args(argv)

    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled extension not built; timing the Python backend only", file=sys.stderr)

    print(f"{'kernel':<26}" + "".join(f"{b:>12}" for b in backends) + ("     speedup" if len(backends) > 1 else ""))
    for name, fn in cases(args.r).items():
        results = {b: fn(b) for b in backends}
        if len(set(map(repr, results.values()))) != 1:
            print(f"{name}: backends disagree", file=sys.stderr)
            return 1
        times = {b: min(timeit.repeat(lambda: fn(b), number=1, repeat=args.repeat)) for b in backends}
        row = f"{name:<26}" + "".join(f"{times[b] * 1e3:>10.2f}ms" for b in backends)
        if len(backends) > 1:
            row += f"{times['python'] / times['cython']:>11.1f}x"
        print(row)
    return 0


if __name__ == "__main__":
    sys.exit(main())
