import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from orliczlab import _kernels_py, kernels

try:
    from orliczlab import _kernels as _kernels_c
except ImportError:  # extension not built
    _kernels_c = None

needs_ext = pytest.mark.skipif(_kernels_c is None, reason="compiled extension not built")


def convex_samples(rng, n):
    x = np.sort(rng.uniform(0, 10, n))
    x[0] = 0.0
    slopes = np.sort(rng.uniform(0, 5, n - 1))
    phi = np.concatenate([[0.0], np.cumsum(slopes * np.diff(x))])
    return x, phi


def test_backend_name():
    assert kernels.BACKEND in ("cython", "python")
    if _kernels_c is not None and not os.environ.get("ORLICZLAB_PURE_PYTHON"):
        assert kernels.BACKEND == "cython"


@pytest.mark.parametrize("seed", range(10))
def test_legendre_matches_brute_force(seed):
    rng = np.random.default_rng(seed)
    x, phi = convex_samples(rng, int(rng.integers(2, 300)))
    y = np.sort(rng.uniform(0, 6, 200))
    brute = np.max(x[None, :] * y[:, None] - phi[None, :], axis=1)
    psi, arg = _kernels_py.legendre_sorted(x, phi, y)
    assert np.allclose(psi, brute, rtol=0, atol=1e-12)
    assert np.allclose(x[arg] * y - phi[arg], psi)


@needs_ext
@pytest.mark.parametrize("seed", range(10))
def test_legendre_backends_agree(seed):
    rng = np.random.default_rng(100 + seed)
    x, phi = convex_samples(rng, int(rng.integers(1, 400)))
    y = np.sort(np.concatenate([rng.uniform(0, 6, 300), np.diff(phi)[:5] / np.diff(x)[:5]]))
    a = _kernels_py.legendre_sorted(x, phi, y)
    b = _kernels_c.legendre_sorted(x, phi, y)
    assert np.array_equal(a[1], b[1])
    assert np.array_equal(a[0], b[0])


def segment_arrays(rng, n):
    bps = np.sort(rng.uniform(-20, 20, n + 1))
    mid = 0.5 * (bps[1:] + bps[:-1])
    half = 0.5 * np.diff(bps)
    return mid, half, rng.normal(size=n), rng.normal(size=n)


@needs_ext
@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2 ** 32 - 1), st.integers(1, 30))
def test_fourier_backends_agree(seed, n):
    rng = np.random.default_rng(seed)
    args = segment_arrays(rng, n)
    zeta = np.concatenate([[0.0, 1e-9, -1e-3], rng.uniform(-50, 50, 100)])
    a = _kernels_py.piecewise_fourier(*args, zeta)
    b = _kernels_c.piecewise_fourier(*args, zeta)
    scale = np.sum(2 * args[1] * (np.abs(args[2]) + np.abs(args[3]) * args[1]))
    assert np.max(np.abs(a - b)) <= 1e-13 * scale


def test_fourier_single_segment():
    # ∫_{-h}^{h} (v + s t) e^{i(m+t)z} dt in closed form
    m, h, v, s, z = 0.7, 1.3, 0.4, -2.0, 2.9
    exact = np.exp(1j * m * z) * (2 * v * np.sin(h * z) / z
                                  + 2j * s * (np.sin(h * z) - h * z * np.cos(h * z)) / z ** 2)
    got = _kernels_py.piecewise_fourier([m], [h], [v], [s], [z])[0]
    assert got == pytest.approx(exact, rel=1e-14)


def test_bessel_helpers_continuous():
    z = np.array([0.1 - 1e-12, 0.1 + 1e-12, -0.1 + 1e-12, -0.1 - 1e-12])
    assert np.ptp(kernels.j0(z[:2])) < 1e-12 and np.ptp(kernels.j0(z[2:])) < 1e-12
    assert np.ptp(kernels.j1(z[:2])) < 1e-12
    assert kernels.j0(0.0) == 1.0 and kernels.j1(0.0) == 0.0


def test_pure_python_switch():
    env = dict(os.environ, ORLICZLAB_PURE_PYTHON="1")
    code = ("from orliczlab import kernels, piecewise; "
            "f = piecewise.make_step(0, 1, 1); "
            "print(kernels.BACKEND, repr(complex(piecewise.fourier_eval(f, 3.0))))")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    backend, value = out.stdout.split()
    assert backend == "python"
    assert complex(value) == pytest.approx((np.exp(3j) - 1) / 3j, abs=1e-15)
