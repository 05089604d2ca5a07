"""Reference NumPy implementations of the kernels in ``_kernels.pyx``."""

import numpy as np


def _j0(z):
    z = np.asarray(z, dtype=float)
    z2 = z * z
    small = np.abs(z) < 0.1
    with np.errstate(invalid="ignore", divide="ignore"):
        direct = np.sin(z) / z
    series = 1.0 - z2 / 6.0 * (1.0 - z2 / 20.0 * (1.0 - z2 / 42.0 * (1.0 - z2 / 72.0)))
    return np.where(small, series, direct)


def _j1(z):
    z = np.asarray(z, dtype=float)
    z2 = z * z
    small = np.abs(z) < 0.1
    with np.errstate(invalid="ignore", divide="ignore"):
        direct = (np.sin(z) - z * np.cos(z)) / z2
    series = z / 3.0 * (1.0 - z2 / 10.0 * (1.0 - z2 / 28.0 * (1.0 - z2 / 54.0 * (1.0 - z2 / 88.0))))
    return np.where(small, series, direct)


def legendre_sorted(x, phi, y):
    x = np.ascontiguousarray(x, dtype=float)
    phi = np.ascontiguousarray(phi, dtype=float)
    y = np.ascontiguousarray(y, dtype=float)
    if x.size > 1:
        slope = np.maximum.accumulate(np.diff(phi) / np.diff(x))
    else:
        slope = np.empty(0)
    arg = np.searchsorted(slope, y, side="right").astype(np.intp)
    return x[arg] * y - phi[arg], arg


def piecewise_fourier(mid, half, value_mid, slope, zeta, chunk=4096):
    mid, half, value_mid, slope = (np.asarray(v, dtype=float) for v in (mid, half, value_mid, slope))
    zeta = np.asarray(zeta, dtype=float)
    out = np.zeros(zeta.shape, dtype=complex)
    for start in range(0, zeta.size, chunk):
        z = zeta[start:start + chunk, None]
        hz = half[None, :] * z
        a = 2.0 * half * value_mid * _j0(hz)
        b = 2.0 * slope * half * half * _j1(hz)
        out[start:start + chunk] = np.sum(np.exp(1j * mid * z) * (a + 1j * b), axis=1)
    return out
