"""Compare the compiled kernels against the NumPy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Prints one CSV row per (kernel, size, backend) with the best wall time over
``--repeat`` runs and the max abs difference between backends.
"""

import argparse
import sys
import timeit

import numpy as np

from orliczlab import _kernels_py

try:
    from orliczlab import _kernels as _kernels_c
except ImportError:
    _kernels_c = None


def legendre_case(n, m, rng):
    x = np.linspace(0.0, 10.0, n)
    phi = np.ascontiguousarray(x ** 2.5)
    y = np.sort(rng.uniform(0, 20, m))
    return (x, phi, y)


def fourier_case(segments, freqs, rng):
    bps = np.sort(rng.uniform(-50, 50, segments + 1))
    mid = 0.5 * (bps[1:] + bps[:-1])
    half = 0.5 * np.diff(bps)
    zeta = rng.uniform(-40, 40, freqs)
    return (mid, half, rng.normal(size=segments), rng.normal(size=segments), zeta)


CASES = [
    ("legendre_sorted", legendre_case, [(10_000, 1_000), (200_001, 2_001), (1_000_001, 10_001)]),
    ("piecewise_fourier", fourier_case, [(10, 1_000), (200, 2_000), (2_000, 10_000)]),
]


def best_time(fn, args, repeat):
    return min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    rng = np.random.default_rng(args.seed)

    print("kernel,size,backend,seconds,speedup,max_abs_diff")
    for name, make, sizes in CASES:
        py_fn = getattr(_kernels_py, name)
        c_fn = getattr(_kernels_c, name) if _kernels_c else None
        for size in sizes:
            case = make(*size, rng)
            t_py = best_time(py_fn, case, args.repeat)
            label = "x".join(str(s) for s in size)
            print(f"{name},{label},python,{t_py:.6f},1.00,")
            if c_fn is None:
                continue
            t_c = best_time(c_fn, case, args.repeat)
            a, b = py_fn(*case), c_fn(*case)
            if name == "legendre_sorted":
                a, b = a[0], b[0]
            diff = float(np.max(np.abs(a - b)))
            print(f"{name},{label},cython,{t_c:.6f},{t_py / t_c:.2f},{diff:.3g}")
    if _kernels_c is None:
        print("# compiled extension not built; only the fallback was timed", file=sys.stderr)


if __name__ == "__main__":
    main()
