import sys

import numpy as np
from hypothesis import strategies as st

from orliczlab.piecewise import PiecewiseFunction


@st.composite
def piecewise_functions(draw, max_segments=6, linear=True, lo=-5.0, hi=5.0):
    k = draw(st.integers(1, max_segments))
    pts = draw(st.lists(st.floats(lo, hi, allow_nan=False), min_size=k + 1, max_size=k + 1, unique=True))
    pts = sorted(pts)
    if min(np.diff(pts)) < 1e-3:
        pts = [lo + (hi - lo) * i / k for i in range(k + 1)]
    vals = st.floats(-3, 3, allow_nan=False).map(lambda v: round(v, 3))
    ends = [(draw(vals), draw(vals) if linear else None) for _ in range(k)]
    slopes, icepts = [], []
    for (a, b), u, v in zip(ends, pts[:-1], pts[1:]):
        if b is None:
            slopes.append(0.0)
            icepts.append(a)
        else:
            s = (b - a) / (v - u)
            slopes.append(s)
            icepts.append(a - s * u)
    return PiecewiseFunction(pts, slopes, icepts)


def random_piecewise(rng, max_segments=6, linear=True):
    k = int(rng.integers(1, max_segments + 1))
    pts = np.sort(rng.uniform(-5, 5, k + 1))
    while np.min(np.diff(pts)) < 1e-2:
        pts = np.sort(rng.uniform(-5, 5, k + 1))
    a = rng.uniform(-3, 3, k)
    b = rng.uniform(-3, 3, k) if linear else a
    s = (b - a) / np.diff(pts)
    return PiecewiseFunction(pts, s, a - s * pts[:-1])


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for k in sorted(results):
            terminalreporter.write_line(results[k])
