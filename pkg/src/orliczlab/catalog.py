"""Analytic functions with closed-form Fourier transforms.

All transforms use ``f̂(ζ) = ∫ f(x) e^{ixζ} dx``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import NonPositiveParameter
from .kernels import j0


class AnalyticCatalogFunction:
    kind = "abstract"
    #: statement that f̂ > 0 on all of ℝ, when one is known in closed form
    positivity_certificate: Optional[str] = None

    def fourier(self, zeta):
        raise NotImplementedError

    def known_zeros(self) -> tuple:
        return ()

    def descriptor(self) -> str:
        raise NotImplementedError

    def _check(self, *vals):
        if not all(v > 0 and math.isfinite(v) for v in vals):
            raise NonPositiveParameter(f"{self.kind} parameters must be positive")


def _ret(arr, like):
    return float(arr) if np.ndim(like) == 0 else arr


@dataclass(frozen=True)
class TwoSidedExponential(AnalyticCatalogFunction):
    """e^{−α|x|}, with f̂(ζ) = 2α/(α² + ζ²)."""

    alpha: float = 1.0
    kind = "exp2"
    positivity_certificate = "f̂(ζ) = 2α/(α²+ζ²) > 0 for all real ζ"

    def __post_init__(self):
        self._check(self.alpha)

    def __call__(self, x):
        return _ret(np.exp(-self.alpha * np.abs(np.asarray(x, dtype=float))), x)

    def fourier(self, zeta):
        z = np.asarray(zeta, dtype=float)
        return _ret(2.0 * self.alpha / (self.alpha ** 2 + z * z), zeta)

    def descriptor(self):
        return f"exp2:{self.alpha!r}"


@dataclass(frozen=True)
class Gaussian(AnalyticCatalogFunction):
    """e^{−x²/(2σ²)}, with f̂(ζ) = σ√(2π)·e^{−σ²ζ²/2}."""

    sigma: float = 1.0
    kind = "gauss"
    positivity_certificate = "f̂(ζ) = σ√(2π)·exp(−σ²ζ²/2) > 0 for all real ζ"

    def __post_init__(self):
        self._check(self.sigma)

    def __call__(self, x):
        x_ = np.asarray(x, dtype=float)
        return _ret(np.exp(-0.5 * (x_ / self.sigma) ** 2), x)

    def fourier(self, zeta):
        z = np.asarray(zeta, dtype=float)
        return _ret(self.sigma * math.sqrt(2 * math.pi) * np.exp(-0.5 * (self.sigma * z) ** 2), zeta)

    def descriptor(self):
        return f"gauss:{self.sigma!r}"


@dataclass(frozen=True)
class SineTimesSincSquared(AnalyticCatalogFunction):
    """h(x) = sin(ωx)·(sin(wx/2)/(wx/2))².

    The squared sinc transforms to the triangle (2π/w)·max(0, 1 − |ζ|/w);
    the sine factor splits it into copies at ±ω, so
    ĥ(ζ) = (T(ζ+ω) − T(ζ−ω)) / (2i), supported in [−ω−w, −ω+w] ∪ [ω−w, ω+w].
    With ω = π/β, h vanishes on βℤ.
    """

    omega: float
    w: float
    kind = "sinsinc"

    def __post_init__(self):
        self._check(self.omega, self.w)

    def __call__(self, x):
        x_ = np.asarray(x, dtype=float)
        return _ret(np.sin(self.omega * x_) * j0(0.5 * self.w * x_) ** 2, x)

    def _triangle(self, z):
        return (2 * math.pi / self.w) * np.maximum(0.0, 1.0 - np.abs(z) / self.w)

    def fourier(self, zeta):
        z = np.asarray(zeta, dtype=float)
        out = (self._triangle(z + self.omega) - self._triangle(z - self.omega)) / 2j
        return complex(out) if np.ndim(zeta) == 0 else out

    def support(self) -> tuple:
        """Closed intervals carrying ĥ, as (lo, hi) pairs."""
        o, w = self.omega, self.w
        if w >= o:
            return ((-o - w, o + w),)
        return ((-o - w, -o + w), (o - w, o + w))

    def kinks(self) -> list:
        o, w = self.omega, self.w
        return sorted({-o - w, -o, -o + w, o - w, o, o + w})

    def known_zeros(self):
        return (0.0,)

    def descriptor(self):
        return f"sinsinc:{self.omega!r},{self.w!r}"
