"""Backend selection for the hot loops.

The compiled extension ``orliczlab._kernels`` is used when it was built and
``ORLICZLAB_PURE_PYTHON`` is unset; otherwise the NumPy reference versions in
``orliczlab._kernels_py`` are used. ``BACKEND`` names the active one.
"""

import os

from . import _kernels_py

if os.environ.get("ORLICZLAB_PURE_PYTHON"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

legendre_sorted = _impl.legendre_sorted
piecewise_fourier = _impl.piecewise_fourier
j0 = _kernels_py._j0
j1 = _kernels_py._j1

__all__ = ["BACKEND", "legendre_sorted", "piecewise_fourier", "j0", "j1"]
