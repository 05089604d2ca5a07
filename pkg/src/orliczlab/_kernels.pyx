# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops. Semantics mirror ``_kernels_py`` exactly."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sin, cos, fabs

cnp.import_array()


cdef inline double _j0(double z) nogil:
    cdef double z2
    if fabs(z) < 0.1:
        z2 = z * z
        return 1.0 - z2 / 6.0 * (1.0 - z2 / 20.0 * (1.0 - z2 / 42.0 * (1.0 - z2 / 72.0)))
    return sin(z) / z


cdef inline double _j1(double z) nogil:
    cdef double z2
    if fabs(z) < 0.1:
        z2 = z * z
        return z / 3.0 * (1.0 - z2 / 10.0 * (1.0 - z2 / 28.0 * (1.0 - z2 / 54.0 * (1.0 - z2 / 88.0))))
    return (sin(z) - z * cos(z)) / (z * z)


def legendre_sorted(const double[::1] x, const double[::1] phi, const double[::1] y):
    """Discrete conjugate max_j (x_j*y_i - phi_j) for nondecreasing ``y``."""
    cdef Py_ssize_t n = x.shape[0], m = y.shape[0], i, j = 0
    cdef double run = -np.inf, s
    slope_arr = np.empty(max(n - 1, 0), dtype=np.float64)
    cdef double[::1] slope = slope_arr
    for i in range(n - 1):
        s = (phi[i + 1] - phi[i]) / (x[i + 1] - x[i])
        if s > run:
            run = s
        slope[i] = run
    psi_arr = np.empty(m, dtype=np.float64)
    arg_arr = np.empty(m, dtype=np.intp)
    cdef double[::1] psi = psi_arr
    cdef Py_ssize_t[::1] arg = arg_arr
    with nogil:
        for i in range(m):
            while j < n - 1 and slope[j] <= y[i]:
                j += 1
            psi[i] = x[j] * y[i] - phi[j]
            arg[i] = j
    return psi_arr, arg_arr


def piecewise_fourier(const double[::1] mid, const double[::1] half, const double[::1] value_mid,
                      const double[::1] slope, const double[::1] zeta):
    """Sum over segments of the exact transform of ``slope*(x-mid)+value_mid``."""
    cdef Py_ssize_t ns = mid.shape[0], nz = zeta.shape[0], i, k
    out_re = np.zeros(nz, dtype=np.float64)
    out_im = np.zeros(nz, dtype=np.float64)
    cdef double[::1] re = out_re
    cdef double[::1] im = out_im
    cdef double z, ph, a, b, c, s_
    with nogil:
        for i in range(nz):
            z = zeta[i]
            for k in range(ns):
                a = 2.0 * half[k] * value_mid[k] * _j0(half[k] * z)
                b = 2.0 * slope[k] * half[k] * half[k] * _j1(half[k] * z)
                ph = mid[k] * z
                c = cos(ph)
                s_ = sin(ph)
                # e^{i ph} (a + i b)
                re[i] += c * a - s_ * b
                im[i] += s_ * a + c * b
    return out_re + 1j * out_im
