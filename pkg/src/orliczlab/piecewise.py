"""Compactly supported piecewise-linear functions on ℝ.

A function is stored as strictly increasing ``breakpoints`` and, per interval
``[b_i, b_{i+1})``, a pair ``(slope, intercept)`` so that
``f(x) = slope * x + intercept``. Outside ``[b_0, b_last)`` it is zero.
Instances are always in canonical form: equal neighbouring segments are
merged and zero segments at either end are trimmed.

Fourier convention: ``f̂(ζ) = ∫ f(x) e^{ixζ} dx``, no normalisation.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy import integrate

from . import kernels
from .errors import EmptyCombination, EmptyInterval, EmptyRange, NonPositiveParameter
from .orlicz import OrliczFunction, PowerScaled
from .optimize import golden_section

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(8)


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=float)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class PiecewiseFunction:
    breakpoints: np.ndarray
    slopes: np.ndarray
    intercepts: np.ndarray
    label: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        b = np.asarray(self.breakpoints, dtype=float)
        s = np.asarray(self.slopes, dtype=float)
        c = np.asarray(self.intercepts, dtype=float)
        if b.size == 0 or b.size == 1:
            b, s, c = np.empty(0), np.empty(0), np.empty(0)
        if s.size != max(b.size - 1, 0) or c.size != s.size:
            raise ValueError("need one (slope, intercept) pair per interval")
        if not (np.all(np.isfinite(b)) and np.all(np.isfinite(s)) and np.all(np.isfinite(c))):
            raise ValueError("piecewise data must be finite")
        if np.any(np.diff(b) <= 0):
            raise ValueError("breakpoints must be strictly increasing")
        b, s, c = _canonical(b, s, c)
        object.__setattr__(self, "breakpoints", _frozen(b))
        object.__setattr__(self, "slopes", _frozen(s))
        object.__setattr__(self, "intercepts", _frozen(c))

    # -- basic queries --------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return self.slopes.size == 0

    @property
    def support(self) -> tuple:
        if self.is_zero:
            return (0.0, 0.0)
        return (float(self.breakpoints[0]), float(self.breakpoints[-1]))

    @property
    def is_constant_pieces(self) -> bool:
        return bool(np.all(self.slopes == 0))

    def __len__(self):
        return self.slopes.size

    def __eq__(self, other):
        if not isinstance(other, PiecewiseFunction):
            return NotImplemented
        return (np.array_equal(self.breakpoints, other.breakpoints)
                and np.array_equal(self.slopes, other.slopes)
                and np.array_equal(self.intercepts, other.intercepts))

    __hash__ = None

    def __repr__(self):
        if self.label:
            return f"PiecewiseFunction<{self.label}>"
        return f"PiecewiseFunction({len(self)} segments on {self.support})"

    def __call__(self, x):
        xa = np.asarray(x, dtype=float)
        out = np.zeros(xa.shape)
        if not self.is_zero:
            idx = np.searchsorted(self.breakpoints, xa, side="right") - 1
            inside = (idx >= 0) & (idx < self.slopes.size)
            j = idx[inside]
            out[inside] = self.slopes[j] * xa[inside] + self.intercepts[j]
        return float(out) if np.ndim(x) == 0 else out

    def segment_ends(self):
        """Values at the left and right end of each segment."""
        u, v = self.breakpoints[:-1], self.breakpoints[1:]
        return self.slopes * u + self.intercepts, self.slopes * v + self.intercepts

    def max_abs(self) -> float:
        if self.is_zero:
            return 0.0
        left, right = self.segment_ends()
        return float(max(np.max(np.abs(left)), np.max(np.abs(right))))

    def integral(self) -> float:
        """Exact ∫ f dx."""
        if self.is_zero:
            return 0.0
        left, right = self.segment_ends()
        return float(np.sum(0.5 * (left + right) * np.diff(self.breakpoints)))

    # -- algebra --------------------------------------------------------
    def __mul__(self, k):
        k = float(k)
        return PiecewiseFunction(self.breakpoints, k * self.slopes, k * self.intercepts)

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0

    def __add__(self, other):
        return linear_combine([(1.0, self), (1.0, other)])

    def __sub__(self, other):
        return linear_combine([(1.0, self), (-1.0, other)])

    def abs(self) -> "PiecewiseFunction":
        """|f|, splitting linear segments at their roots."""
        if self.is_zero:
            return self
        pts, sl, ic = [float(self.breakpoints[0])], [], []
        for u, v, s, c in zip(self.breakpoints[:-1], self.breakpoints[1:], self.slopes, self.intercepts):
            r = _interior_root(u, v, s, c)
            cuts = [u, v] if r is None else [u, r, v]
            for a, b in zip(cuts[:-1], cuts[1:]):
                mid = s * 0.5 * (a + b) + c
                sign = -1.0 if mid < 0 else 1.0
                pts.append(float(b))
                sl.append(sign * s)
                ic.append(sign * c)
        return PiecewiseFunction(pts, sl, ic)

    def translate(self, lam: float) -> "PiecewiseFunction":
        return translate(self, lam)

    # -- serialisation --------------------------------------------------
    def to_rows(self) -> list:
        """Rows ``(breakpoint, slope, intercept)``; the last row closes the support."""
        rows = [(float(b), float(s), float(c)) for b, s, c in
                zip(self.breakpoints[:-1], self.slopes, self.intercepts)]
        if not self.is_zero:
            rows.append((float(self.breakpoints[-1]), 0.0, 0.0))
        return rows

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[float]]) -> "PiecewiseFunction":
        rows = [tuple(map(float, r)) for r in rows]
        if not rows:
            return ZERO
        b = [r[0] for r in rows]
        return cls(b, [r[1] for r in rows[:-1]], [r[2] for r in rows[:-1]])

    def write_csv(self, path_or_file):
        own = isinstance(path_or_file, str)
        fh = open(path_or_file, "w", newline="") if own else path_or_file
        try:
            w = csv.writer(fh)
            w.writerow(["breakpoint", "slope", "intercept"])
            w.writerows((repr(b), repr(s), repr(c)) for b, s, c in self.to_rows())
        finally:
            if own:
                fh.close()

    @classmethod
    def read_csv(cls, path: str) -> "PiecewiseFunction":
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
        if rows and rows[0] and rows[0][0].strip() == "breakpoint":
            rows = rows[1:]
        return cls.from_rows([r for r in rows if r])

    def with_label(self, label: Optional[str]) -> "PiecewiseFunction":
        return PiecewiseFunction(self.breakpoints, self.slopes, self.intercepts, label=label)


def _canonical(b, s, c):
    if s.size == 0:
        return np.empty(0), np.empty(0), np.empty(0)
    keep = np.ones(s.size, dtype=bool)
    keep[1:] = (s[1:] != s[:-1]) | (c[1:] != c[:-1])
    starts = np.nonzero(keep)[0]
    b = np.concatenate([b[:-1][starts], b[-1:]])
    s, c = s[starts], c[starts]
    nz = np.nonzero((s != 0) | (c != 0))[0]
    if nz.size == 0:
        return np.empty(0), np.empty(0), np.empty(0)
    i, j = nz[0], nz[-1]
    return b[i:j + 2], s[i:j + 1], c[i:j + 1]


ZERO = PiecewiseFunction([], [], [])


def _interior_root(u, v, s, c):
    """Root of s·x + c strictly inside (u, v), ignoring rounding slivers at the ends."""
    if s == 0:
        return None
    r = -c / s
    tol = 1e-12 * (v - u)
    return float(r) if u + tol < r < v - tol else None


# --------------------------------------------------------------------------
# constructors and algebra


def make_step(left: float, right: float, height: float) -> PiecewiseFunction:
    """height · χ_[left, right)."""
    if not left < right:
        raise EmptyInterval(f"step needs left < right, got [{left}, {right})")
    return PiecewiseFunction([left, right], [0.0], [height],
                             label=f"step:{left!r},{right!r},{height!r}")


def make_tent(a: float, b: float) -> PiecewiseFunction:
    """a·(b − |x|) on [−b, b]."""
    if not (a > 0 and b > 0):
        raise NonPositiveParameter(f"tent needs a, b > 0, got a={a}, b={b}")
    return PiecewiseFunction([-b, 0.0, b], [a, -a], [a * b, a * b], label=f"tent:{a!r},{b!r}")


def translate(f: PiecewiseFunction, lam: float) -> PiecewiseFunction:
    """(τ_λ f)(x) = f(x − λ)."""
    if f.is_zero or lam == 0:
        return f
    return PiecewiseFunction(f.breakpoints + lam, f.slopes, f.intercepts - f.slopes * lam)


def linear_combine(terms: Sequence[tuple]) -> PiecewiseFunction:
    """Σ coef·f over ``terms`` given as ``(coef, f)`` pairs, summed per interval in order."""
    terms = list(terms)
    if not terms:
        raise EmptyCombination("linear_combine needs at least one term")
    live = [(float(k), f) for k, f in terms if not f.is_zero and k != 0]
    if not live:
        return ZERO
    pts = np.unique(np.concatenate([f.breakpoints for _, f in live]))
    s = np.zeros(pts.size - 1)
    c = np.zeros(pts.size - 1)
    for k, f in live:
        i0 = int(np.searchsorted(pts, f.breakpoints[0]))
        i1 = int(np.searchsorted(pts, f.breakpoints[-1]))
        seg = np.searchsorted(f.breakpoints, pts[i0:i1], side="right") - 1
        s[i0:i1] += k * f.slopes[seg]
        c[i0:i1] += k * f.intercepts[seg]
    return PiecewiseFunction(pts, s, c)


def step_sum(lefts, rights, heights, denominator: float = 1.0, absolute: bool = False) -> PiecewiseFunction:
    """Σ heights_i · χ_[lefts_i, rights_i), divided by ``denominator``.

    Uses a difference array, so the sum is exact whenever the heights are
    integers below 2**53. ``absolute`` takes |·| before the single final
    division, which then rounds each value correctly.
    """
    lefts = np.asarray(lefts, dtype=float)
    rights = np.asarray(rights, dtype=float)
    heights = np.asarray(heights, dtype=float)
    if lefts.size == 0:
        raise EmptyCombination("step_sum needs at least one step")
    if np.any(rights <= lefts):
        raise EmptyInterval("every step needs left < right")
    pts = np.unique(np.concatenate([lefts, rights]))
    il = np.searchsorted(pts, lefts)
    ir = np.searchsorted(pts, rights)
    delta = (np.bincount(il, weights=heights, minlength=pts.size)
             - np.bincount(ir, weights=heights, minlength=pts.size))
    values = np.cumsum(delta)[:-1]
    if absolute:
        values = np.abs(values)
    if denominator != 1.0:
        values = values / denominator
    return PiecewiseFunction(pts, np.zeros(values.size), values)


# --------------------------------------------------------------------------
# integrals


def _power_piece(phi: PowerScaled, lo_val, hi_val, length, scale):
    """∫ Φ(|f|/scale) over a piece where |f| runs linearly from lo_val to hi_val."""
    A, B = lo_val / scale, hi_val / scale
    top = max(A, B)
    if abs(B - A) > 1e-3 * top:
        p1 = phi.p + 1.0
        return phi.c * length * (B ** p1 - A ** p1) / (p1 * (B - A))
    t = 0.5 * (_GL_NODES + 1.0)
    vals = phi.c * np.power(A + (B - A) * t, phi.p)
    return 0.5 * length * float(np.dot(_GL_WEIGHTS, vals))


def _pieces(f: PiecewiseFunction):
    """Yield (u, v, s, c) over sub-intervals on which f has constant sign."""
    for u, v, s, c in zip(f.breakpoints[:-1], f.breakpoints[1:], f.slopes, f.intercepts):
        r = _interior_root(u, v, s, c)
        if r is not None:
            yield float(u), r, float(s), float(c)
            yield r, float(v), float(s), float(c)
            continue
        yield float(u), float(v), float(s), float(c)


def integrate_abs_phi(phi: OrliczFunction, f: PiecewiseFunction, scale: float = 1.0) -> float:
    """The modular ∫ Φ(|f(x)|/scale) dx, in [0, ∞]."""
    if not scale > 0:
        raise ValueError(f"scale must be positive, got {scale}")
    total = 0.0
    bound = phi.finite_bound
    for u, v, s, c in _pieces(f):
        A, B = abs(s * u + c), abs(s * v + c)
        length = v - u
        if s == 0:
            val = phi(abs(c) / scale)
            if math.isinf(val):
                return math.inf
            total += length * val
            continue
        if max(A, B) / scale > bound:
            return math.inf
        if isinstance(phi, PowerScaled):
            total += _power_piece(phi, A, B, length, scale)
        else:
            val, _ = integrate.quad(lambda x: phi(abs(s * x + c) / scale), u, v,
                                    epsabs=1e-10, epsrel=1e-12, limit=200)
            total += val
        if math.isinf(total):
            return math.inf
    return total


def integrate_abs_product(f: PiecewiseFunction, g: PiecewiseFunction) -> float:
    """Exact ∫ |f·g| dx."""
    if f.is_zero or g.is_zero:
        return 0.0
    lo = max(f.breakpoints[0], g.breakpoints[0])
    hi = min(f.breakpoints[-1], g.breakpoints[-1])
    if not lo < hi:
        return 0.0
    pts = np.unique(np.concatenate([f.breakpoints, g.breakpoints]))
    pts = pts[(pts >= lo) & (pts <= hi)]
    total = 0.0
    for u, v in zip(pts[:-1], pts[1:]):
        m = 0.5 * (u + v)
        i = int(np.searchsorted(f.breakpoints, m) - 1)
        j = int(np.searchsorted(g.breakpoints, m) - 1)
        s1, c1 = f.slopes[i], f.intercepts[i]
        s2, c2 = g.slopes[j], g.intercepts[j]
        cuts = [u, v]
        for s, c in ((s1, c1), (s2, c2)):
            r = _interior_root(u, v, s, c)
            if r is not None:
                cuts.append(r)
        cuts.sort()
        for a, b in zip(cuts[:-1], cuts[1:]):
            q = lambda x: (s1 * x + c1) * (s2 * x + c2)
            # Simpson is exact for the quadratic product
            total += abs((b - a) / 6.0 * (q(a) + 4.0 * q(0.5 * (a + b)) + q(b)))
    return float(total)


# --------------------------------------------------------------------------
# Fourier transform


def _segment_arrays(f: PiecewiseFunction):
    u, v = f.breakpoints[:-1], f.breakpoints[1:]
    mid = 0.5 * (u + v)
    half = 0.5 * (v - u)
    return (np.ascontiguousarray(mid), np.ascontiguousarray(half),
            np.ascontiguousarray(f.slopes * mid + f.intercepts), np.ascontiguousarray(f.slopes))


def fourier_eval(f: PiecewiseFunction, zeta):
    """Exact f̂(ζ) = ∫ f(x) e^{ixζ} dx for scalar or array ``zeta``.

    Each segment is expanded about its midpoint ``m`` with half-width ``h``:
    ``e^{imζ}[2h·f(m)·j0(hζ) + 2i·s·h²·j1(hζ)]`` with spherical Bessel
    ``j0, j1``, evaluated by series near 0 so ζ = 0 needs no special case.
    """
    z = np.atleast_1d(np.asarray(zeta, dtype=float))
    if f.is_zero:
        out = np.zeros(z.shape, dtype=complex)
    else:
        out = kernels.piecewise_fourier(*_segment_arrays(f), np.ascontiguousarray(z.ravel())).reshape(z.shape)
    return complex(out[0]) if np.ndim(zeta) == 0 else out


def step_width(f: PiecewiseFunction) -> Optional[float]:
    """Width h if f is a nonzero multiple of a single indicator, else None."""
    if len(f) == 1 and f.slopes[0] == 0:
        return float(f.breakpoints[1] - f.breakpoints[0])
    return None


def tent_halfwidth(f: PiecewiseFunction) -> Optional[float]:
    """Half-width b if f is a symmetric tent vanishing at both ends, else None."""
    if len(f) != 2:
        return None
    b0, b1, b2 = f.breakpoints
    s0, s1 = f.slopes
    if s0 == 0 or s0 != -s1 or not math.isclose(b1 - b0, b2 - b1, rel_tol=1e-12):
        return None
    left, right = f.segment_ends()
    scale = max(abs(left[1]), 1e-300)
    if abs(left[0]) > 1e-12 * scale or abs(right[1]) > 1e-12 * scale:
        return None
    return float(b1 - b0)


@dataclass(frozen=True)
class SpectrumReport:
    zeros: tuple  # (location, certified) pairs, sorted by location
    scan_range: tuple
    min_abs_value: float
    grid_step: float

    @property
    def certified_zeros(self) -> list:
        return [z for z, ok in self.zeros if ok]


def zero_scan(f: PiecewiseFunction, scan_range=(-10.0, 10.0), grid_step: float = 0.01, *,
              zero_tol: float = 1e-10, refine_below: float = 1e-4) -> SpectrumReport:
    """Locate zeros of f̂ on ``scan_range``.

    |f̂| is sampled on the grid, local minima below ``refine_below`` (or
    close enough to 0 that a crossing between samples is possible) are
    refined by golden-section search, and a zero is certified when direct
    evaluation gives |f̂| ≤ ``zero_tol``. Steps of width h and tents of
    half-width b additionally contribute their analytic zero lattices
    2πk/h and 2πk/b (k ≠ 0).
    """
    lo, hi = map(float, scan_range)
    if not hi > lo:
        raise EmptyRange(f"scan range [{lo}, {hi}] is empty")
    if not grid_step > 0:
        raise ValueError("grid_step must be positive")
    n = int(math.floor((hi - lo) / grid_step + 1e-9)) + 1
    grid = lo + grid_step * np.arange(n)
    mags = np.abs(fourier_eval(f, grid))
    min_abs = float(np.min(mags))

    found = {}
    period = step_width(f) or tent_halfwidth(f)
    if period is not None and not f.is_zero:
        kmin = math.ceil(lo * period / (2 * math.pi))
        kmax = math.floor(hi * period / (2 * math.pi))
        for k in range(kmin, kmax + 1):
            if k == 0:
                continue
            z = 2 * math.pi * k / period
            found[z] = abs(fourier_eval(f, z)) <= zero_tol

    # a simple zero between samples leaves a V whose bottom sits within one
    # neighbour difference of 0; such minima are refined along with the
    # ones already below ``refine_below``
    centre = mags[1:-1]
    reach = np.maximum(mags[:-2] - centre, mags[2:] - centre)
    interior = np.nonzero((centre <= mags[:-2]) & (centre <= mags[2:])
                          & ((centre < refine_below) | (centre <= reach)))[0] + 1
    mag = lambda t: abs(fourier_eval(f, t))
    for i in interior:
        z = golden_section(mag, grid[i - 1], grid[i + 1], xtol=1e-14 * max(1.0, abs(grid[i])))
        if any(abs(z - w) < 1e-6 for w in found):
            continue
        found[z] = mag(z) <= zero_tol
    zeros = tuple(sorted(found.items()))
    return SpectrumReport(zeros, (lo, hi), min_abs, float(grid_step))
