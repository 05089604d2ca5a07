"""Golden-section search for unimodal objectives that may take the value inf."""

import math

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section(fun, lo, hi, xtol=1e-12, maxiter=500, inf_side="right"):
    """Minimiser of a unimodal ``fun`` on ``[lo, hi]``.

    Where both probes are ``inf`` the objective is assumed infinite on one
    contiguous end of the interval; ``inf_side`` names that end so the
    search moves away from it.
    """
    a, b = float(lo), float(hi)
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = fun(c), fun(d)
    for _ in range(maxiter):
        if abs(b - a) <= xtol:
            break
        if math.isinf(fc) and math.isinf(fd):
            move_right = inf_side == "left"
        else:
            move_right = fd < fc
        if move_right:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = fun(d)
        else:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = fun(c)
    return c if fc <= fd else d
