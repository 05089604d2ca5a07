"""Orlicz functions and their calculus.

An Orlicz function is a convex ``Φ: [0, ∞) → [0, ∞]`` with ``Φ(0) = 0`` and
``Φ(x) → ∞``. Values may be ``inf``; extended-real arithmetic follows IEEE
rules except that ``0 * inf`` never arises (all scales are strictly positive).

Universally quantified properties (Δ₂, majorization) are decided on finite
grids. Their results are *sampled evidence*, not proofs.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import kernels
from .errors import (
    DegenerateFunction,
    InvalidGrid,
    InvalidOrliczFunction,
    OutOfTabulatedRange,
    Unbounded,
)

EVIDENCE = "sampled evidence"


@dataclass(frozen=True)
class GridSpec:
    """A sampling grid on ``[start, stop]``.

    ``spacing='log'`` places ``per_decade`` points in each decade; ``'linear'``
    places ``num`` equally spaced points.
    """

    start: float
    stop: float
    num: int = 0
    spacing: str = "linear"
    per_decade: int = 400

    def __post_init__(self):
        if self.spacing not in ("linear", "log"):
            raise InvalidGrid(f"unknown spacing {self.spacing!r}")
        if not (np.isfinite(self.start) and np.isfinite(self.stop)) or self.stop <= self.start:
            raise InvalidGrid(f"grid [{self.start}, {self.stop}] is empty or non-increasing")
        if self.spacing == "log":
            if self.start <= 0 or self.per_decade < 1:
                raise InvalidGrid("log grids need start > 0 and per_decade >= 1")
        elif self.num < 2:
            raise InvalidGrid("linear grids need at least 2 points")

    @classmethod
    def default(cls) -> "GridSpec":
        return cls(1e-8, 1e8, spacing="log", per_decade=400)

    def points(self) -> np.ndarray:
        if self.spacing == "log":
            decades = math.log10(self.stop / self.start)
            n = max(2, int(round(decades * self.per_decade)) + 1)
            return np.geomspace(self.start, self.stop, n)
        return np.linspace(self.start, self.stop, self.num)


def _check_domain(x):
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0) or np.any(np.isnan(arr)):
        raise ValueError("Orlicz functions are defined on [0, inf)")
    return arr


def _out(arr, like):
    return float(arr) if np.ndim(like) == 0 else arr


class OrliczFunction:
    """Base class. Subclasses are frozen dataclasses and safe to share."""

    kind = "abstract"

    def __call__(self, x):
        arr = _check_domain(x)
        return _out(self._eval(arr), x)

    def derivative(self, x):
        """Right derivative Φ'(x+)."""
        arr = _check_domain(x)
        return _out(self._deriv(arr), x)

    def _eval(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _deriv(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    @property
    def finite_bound(self) -> float:
        """sup{x : Φ(x) < ∞}."""
        return math.inf

    def descriptor(self) -> str:
        raise NotImplementedError

    def __str__(self):
        return self.descriptor()


@dataclass(frozen=True)
class PowerScaled(OrliczFunction):
    """Φ(x) = c·x^p."""

    c: float
    p: float
    kind = "cpower"

    def __post_init__(self):
        if not (self.c > 0 and math.isfinite(self.c)):
            raise InvalidOrliczFunction(f"scale c must be positive, got {self.c}")
        if not (self.p >= 1 and math.isfinite(self.p)):
            raise InvalidOrliczFunction(f"exponent p must be >= 1, got {self.p}")

    def _eval(self, x):
        with np.errstate(over="ignore"):
            return self.c * np.power(x, self.p)

    def _deriv(self, x):
        if self.p == 1:
            return np.full_like(x, self.c)
        with np.errstate(over="ignore"):
            return self.c * self.p * np.power(x, self.p - 1)

    def descriptor(self):
        return f"cpower:{self.c!r},{self.p!r}"


class Power(PowerScaled):
    """Φ(x) = x^p."""

    kind = "power"

    def __init__(self, p: float):
        object.__setattr__(self, "c", 1.0)
        object.__setattr__(self, "p", float(p))
        self.__post_init__()

    def descriptor(self):
        return f"power:{self.p!r}"


@dataclass(frozen=True)
class ExpMinusOne(OrliczFunction):
    """Φ(x) = e^x − 1."""

    kind = "expm1"

    def _eval(self, x):
        with np.errstate(over="ignore"):
            return np.expm1(x)

    def _deriv(self, x):
        with np.errstate(over="ignore"):
            return np.exp(x)

    def descriptor(self):
        return "expm1"


@dataclass(frozen=True)
class ExpConjugate(OrliczFunction):
    """Conjugate of e^x − 1: 0 on [0, 1], y·ln y − y + 1 beyond."""

    kind = "expm1*"

    def _eval(self, y):
        out = np.zeros_like(y)
        big = y > 1
        yb = y[big]
        out[big] = yb * np.log(yb) - yb + 1.0
        return out

    def _deriv(self, y):
        return np.where(y > 1, np.log(np.maximum(y, 1.0)), 0.0)

    def descriptor(self):
        return "expm1*"


@dataclass(frozen=True)
class LinearJump(OrliczFunction):
    """0 on [0, c], ∞ beyond; the conjugate of x ↦ c·x."""

    c: float
    kind = "jump"

    def __post_init__(self):
        if not (self.c > 0 and math.isfinite(self.c)):
            raise InvalidOrliczFunction(f"jump location must be positive, got {self.c}")

    def _eval(self, y):
        return np.where(y <= self.c, 0.0, np.inf)

    def _deriv(self, y):
        return np.where(y < self.c, 0.0, np.inf)

    @property
    def finite_bound(self):
        return self.c

    def descriptor(self):
        return f"jump:{self.c!r}"


@dataclass(frozen=True)
class MaxOf(OrliczFunction):
    """Pointwise maximum of two Orlicz functions."""

    left: OrliczFunction
    right: OrliczFunction
    kind = "max"

    def _eval(self, x):
        return np.maximum(self.left._eval(x), self.right._eval(x))

    def _deriv(self, x):
        lv, rv = self.left._eval(x), self.right._eval(x)
        ld, rd = self.left._deriv(x), self.right._deriv(x)
        return np.where(lv > rv, ld, np.where(rv > lv, rd, np.maximum(ld, rd)))

    @property
    def finite_bound(self):
        return min(self.left.finite_bound, self.right.finite_bound)

    def descriptor(self):
        return f"max({self.left.descriptor()},{self.right.descriptor()})"


_TAILS = ("linear", "inf", "raise")


@dataclass(frozen=True)
class Tabulated(OrliczFunction):
    """Piecewise-linear interpolation of convex samples.

    ``grid`` must start at 0 with ``values[0] == 0``. Infinite values are
    allowed only as a suffix. Beyond the last grid point ``tail`` selects
    linear extrapolation with the last slope, ``inf``, or raising
    :class:`OutOfTabulatedRange`. Non-convex data is rejected, never repaired.
    """

    grid: tuple
    values: tuple
    tail: str = "linear"
    source: Optional[str] = field(default=None, compare=False)
    kind = "table"

    _x: np.ndarray = field(init=False, repr=False, compare=False)
    _v: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        x = np.array(self.grid, dtype=float)
        v = np.array(self.values, dtype=float)
        object.__setattr__(self, "grid", tuple(float(t) for t in x))
        object.__setattr__(self, "values", tuple(float(t) for t in v))
        if self.tail not in _TAILS:
            raise InvalidOrliczFunction(f"tail must be one of {_TAILS}")
        if x.ndim != 1 or x.size < 2 or x.size != v.size:
            raise InvalidOrliczFunction("need matching 1-d grid and values with >= 2 points")
        if x[0] != 0.0 or v[0] != 0.0:
            raise InvalidOrliczFunction("table must start at (0, 0)")
        if np.any(np.diff(x) <= 0) or not np.all(np.isfinite(x)):
            raise InvalidOrliczFunction("grid must be finite and strictly increasing")
        if np.any(np.isnan(v)) or np.any(v < 0):
            raise InvalidOrliczFunction("values must lie in [0, inf]")
        fin = np.isfinite(v)
        k = int(np.argmin(fin)) if not fin.all() else v.size
        if not fin[:k].all() or fin[k:].any():
            raise InvalidOrliczFunction("infinite values must form a suffix")
        if k < 2 and k < v.size:
            raise InvalidOrliczFunction("need at least two finite samples")
        xf, vf = x[:k], v[:k]
        slopes = np.diff(vf) / np.diff(xf)
        scale = max(1.0, float(np.max(np.abs(slopes))) if slopes.size else 1.0)
        if np.any(np.diff(slopes) < -1e-9 * scale):
            raise InvalidOrliczFunction("samples are not convex")
        if np.any(slopes < -1e-12 * scale):
            raise InvalidOrliczFunction("samples are not nondecreasing")
        if self.tail == "linear" and k == v.size and slopes[-1] <= 0:
            raise InvalidOrliczFunction("linear tail needs a positive last slope")
        object.__setattr__(self, "_x", x)
        object.__setattr__(self, "_v", v)
        x.flags.writeable = False
        v.flags.writeable = False

    @property
    def n_finite(self) -> int:
        return int(np.isfinite(self._v).sum())

    @property
    def finite_bound(self):
        k = self.n_finite
        if k < self._v.size:
            return float(self._x[k - 1])
        return math.inf if self.tail == "linear" else float(self._x[-1])

    def _tail_slope(self):
        x, v = self._x, self._v
        return (v[-1] - v[-2]) / (x[-1] - x[-2])

    def _eval(self, q):
        x, v = self._x, self._v
        k = self.n_finite
        out = np.interp(q, x[:k], v[:k])
        out = np.where(q > x[k - 1], np.inf, out)
        if k == v.size:
            beyond = q > x[-1]
            if np.any(beyond):
                if self.tail == "raise":
                    raise OutOfTabulatedRange(
                        f"argument {float(np.max(q))} exceeds tabulated domain [0, {x[-1]}]")
                if self.tail == "linear":
                    out = np.where(beyond, v[-1] + (q - x[-1]) * self._tail_slope(), out)
        return out

    def _deriv(self, q):
        x, v = self._x, self._v
        k = self.n_finite
        with np.errstate(invalid="ignore"):
            slopes = np.diff(v) / np.diff(x)
        idx = np.clip(np.searchsorted(x, q, side="right") - 1, 0, x.size - 2)
        out = np.where(np.isfinite(slopes[idx]), slopes[idx], np.inf)
        out = np.where(q >= x[k - 1], np.inf, out) if k < v.size else out
        if k == v.size:
            at_end = q >= x[-1]
            if np.any(at_end):
                if self.tail == "raise":
                    raise OutOfTabulatedRange("derivative requested at or beyond the tabulated domain")
                out = np.where(at_end, self._tail_slope() if self.tail == "linear" else np.inf, out)
        return out

    def descriptor(self):
        if self.source:
            return f"table:@{self.source}"
        return "table:[" + ";".join(f"{a!r}:{b!r}" for a, b in zip(self.grid, self.values)) + "]"


# --------------------------------------------------------------------------
# conjugation


def _numeric_conjugate(phi: OrliczFunction, y: np.ndarray, x_points: int) -> np.ndarray:
    y_max = float(y[-1])
    if isinstance(phi, Tabulated):
        k = phi.n_finite
        xs, vs = phi._x[:k], phi._v[:k]
        psi, _ = kernels.legendre_sorted(np.ascontiguousarray(xs), np.ascontiguousarray(vs), y)
        if k == phi._v.size and phi.tail == "linear":
            psi = np.where(y > phi._tail_slope(), np.inf, psi)
        return psi
    bound = phi.finite_bound
    hi = 1.0
    while hi < 2.0 ** 60 and hi < bound and float(phi._deriv(np.array([hi]))[0]) <= y_max:
        hi *= 2.0
    hi = min(hi, bound)
    xs = np.linspace(0.0, hi, x_points)
    vs = phi._eval(xs)
    psi, arg = kernels.legendre_sorted(xs, np.ascontiguousarray(vs), y)
    if math.isinf(bound):
        # maximiser pinned to the right edge means the true sup is larger
        slope_limit = float(phi._deriv(np.array([hi]))[0])
        psi = np.where((arg == xs.size - 1) & (y > slope_limit), np.inf, psi)
    return psi


def conjugate(phi: OrliczFunction, grid_spec: Optional[GridSpec] = None, *,
              method: str = "auto", x_points: int = 200_001) -> OrliczFunction:
    """Complementary function Ψ(y) = sup_{x≥0} (x·y − Φ(x)).

    Closed-form kinds map to closed-form conjugates. Otherwise (or with
    ``method='numeric'``) Ψ is tabulated on ``grid_spec`` (linear spacing
    recommended) by a discrete Legendre transform over ``x_points`` samples
    of Φ; the table raises beyond its last node.
    """
    if method not in ("auto", "numeric"):
        raise ValueError("method must be 'auto' or 'numeric'")
    if method == "auto":
        closed = _closed_conjugate(phi)
        if closed is not None:
            return closed
    if grid_spec is None:
        grid_spec = GridSpec(0.0, 10.0, 2001)
    y = grid_spec.points()
    if y[0] < 0:
        raise InvalidGrid("conjugate grids live in [0, inf)")
    if y[0] > 0:
        y = np.concatenate([[0.0], y])
    psi = _numeric_conjugate(phi, np.ascontiguousarray(y), x_points)
    psi[0] = 0.0
    psi = np.maximum(psi, 0.0)
    return Tabulated(tuple(y), tuple(psi), tail="raise")


def _closed_conjugate(phi):
    if isinstance(phi, PowerScaled):
        c, p = phi.c, phi.p
        if p == 1:
            return LinearJump(c)
        q = p / (p - 1.0)
        c2 = (p - 1.0) * c * (c * p) ** (-q)
        return PowerScaled(c2, q)
    if isinstance(phi, LinearJump):
        return Power(1.0) if phi.c == 1 else PowerScaled(phi.c, 1.0)
    if isinstance(phi, ExpMinusOne):
        return ExpConjugate()
    if isinstance(phi, ExpConjugate):
        return ExpMinusOne()
    return None


def young_gap(phi: OrliczFunction, x, y, psi: Optional[OrliczFunction] = None):
    """Φ(x) + Ψ(y) − x·y, nonnegative by Young's inequality."""
    if psi is None:
        psi = conjugate(phi)
    xa, ya = _check_domain(x), _check_domain(y)
    with np.errstate(invalid="ignore"):
        gap = phi._eval(np.atleast_1d(xa)) + psi._eval(np.atleast_1d(ya)) - np.atleast_1d(xa) * np.atleast_1d(ya)
    if np.ndim(x) == 0 and np.ndim(y) == 0:
        return float(gap[0])
    return gap


# --------------------------------------------------------------------------
# growth


@dataclass(frozen=True)
class GrowthClass:
    limit_ratio_at_zero: float
    delta2: Optional[float] = None
    refutation: Optional[float] = None
    sup_ratio: float = math.nan
    evidence: str = EVIDENCE

    @property
    def in_delta2(self) -> Optional[bool]:
        if self.delta2 is not None:
            return True
        if self.refutation is not None:
            return False
        return None


def check_delta2(phi: OrliczFunction, grid_spec: Optional[GridSpec] = None,
                 blowup: float = 1e6) -> GrowthClass:
    """Sampled test of Φ(2x) ≤ D·Φ(x).

    Returns a witness ``D = sup ratio · (1 + 1e-6)`` when the ratio stays
    below ``blowup`` and has settled at both ends of the grid, a refutation
    sample ``x*`` (first grid point whose ratio exceeds ``blowup``), or
    neither when the evidence is inconclusive.
    """
    x = (grid_spec or GridSpec.default()).points()
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        v1 = phi._eval(x)
        v2 = phi._eval(2.0 * x)
        ratio = np.where((v1 == 0) & (v2 == 0), np.nan, v2 / v1)
        ratio = np.where(np.isinf(v1) & np.isinf(v2), np.nan, ratio)
    if np.all((v1 == 0) & (v2 == 0)):
        raise DegenerateFunction("Φ vanishes on the whole sampled grid")
    limit = limit_ratio_at_zero(phi)
    bad = np.nonzero(ratio > blowup)[0]
    if bad.size:
        return GrowthClass(limit, refutation=float(x[bad[0]]), sup_ratio=math.inf)
    valid = ~np.isnan(ratio)
    sup = float(np.nanmax(ratio))
    logs = np.log10(x)
    last = valid & (logs >= logs[-1] - 1.0)
    first = valid & (logs <= logs[0] + 1.0)
    rest_hi = valid & ~last
    rest_lo = valid & ~first
    unstable = False
    if last.any() and rest_hi.any():
        unstable |= float(np.max(ratio[last])) > 1.01 * float(np.max(ratio[rest_hi]))
    if first.any() and rest_lo.any():
        unstable |= float(np.max(ratio[first])) > 1.01 * float(np.max(ratio[rest_lo]))
    if unstable:
        return GrowthClass(limit, sup_ratio=sup)
    return GrowthClass(limit, delta2=sup * (1 + 1e-6), sup_ratio=sup)


def limit_ratio_at_zero(phi: OrliczFunction, analytic: bool = True) -> float:
    """lim_{x→0+} Φ(x)/x.

    Closed-form kinds are answered exactly. With ``analytic=False`` the ratio
    is sampled at x = 10^-k, k = 2..10 (nonincreasing by convexity) and the
    last three samples are extrapolated with Aitken's Δ² process.
    """
    if analytic:
        exact = _exact_limit(phi)
        if exact is not None:
            return exact
    xs = 10.0 ** -np.arange(2, 11, dtype=float)
    r = phi._eval(xs) / xs
    if np.any(np.diff(r) > 1e-12 * np.maximum(1.0, np.abs(r[:-1]))):
        raise DegenerateFunction("Φ(x)/x increased as x decreased; Φ is not convex")
    r0, r1, r2 = r[-3:]
    denom = r2 - 2 * r1 + r0
    est = r2 if denom == 0 else r2 - (r2 - r1) ** 2 / denom
    est = min(max(est, 0.0), r2)
    return 0.0 if est < 1e-9 else float(est)


def _exact_limit(phi):
    if isinstance(phi, PowerScaled):
        return phi.c if phi.p == 1 else 0.0
    if isinstance(phi, ExpMinusOne):
        return 1.0
    if isinstance(phi, (ExpConjugate, LinearJump)):
        return 0.0
    if isinstance(phi, MaxOf):
        a, b = _exact_limit(phi.left), _exact_limit(phi.right)
        return None if a is None or b is None else max(a, b)
    if isinstance(phi, Tabulated):
        return float(phi._v[1] / phi._x[1]) if math.isfinite(phi._v[1]) else math.inf
    return None


# --------------------------------------------------------------------------
# order relations


class Mode(str, enum.Enum):
    AT_ZERO = "at_zero"
    AT_INFINITY = "at_infinity"
    GLOBAL = "global"


@dataclass(frozen=True)
class MajorizationWitness:
    """Φ₂(x) ≤ b·Φ₁(a·x) on the region selected by ``mode`` (and ``x0``)."""

    a: float
    b: float
    mode: Mode
    x0: Optional[float] = None


@dataclass(frozen=True)
class MajorizationReport:
    witness: Optional[MajorizationWitness]
    refutation: tuple = ()  # (a, b, x) triples, one per searched (a, b)
    evidence: str = EVIDENCE

    def __bool__(self):
        return self.witness is not None


# wide enough that every searched (a, b) can be refuted: violations of
# x <= b (a x)^2 sit below 1/(a^2 b) >= 1e-9
MAJORIZATION_GRID = GridSpec(1e-14, 1e14, spacing="log", per_decade=400)
_AB_GRID = tuple(10.0 ** (k / 2) for k in range(-6, 7))
_X0_GRID = tuple(10.0 ** k for k in range(-6, 7))


def _search_order():
    pairs = [(a, b) for a in _AB_GRID for b in _AB_GRID]
    return sorted(pairs, key=lambda ab: (round(abs(math.log10(ab[0])) + abs(math.log10(ab[1])), 9),
                                         ab[0], ab[1]))


def majorizes(phi1: OrliczFunction, phi2: OrliczFunction, mode: Mode | str,
              grid_spec: Optional[GridSpec] = None) -> MajorizationReport:
    """Search for (a, b[, x0]) with Φ₂(x) ≤ b·Φ₁(a·x), i.e. Φ₂ ≺ Φ₁ in ``mode``.

    Pairs (a, b) come from half-decades in [1e-3, 1e3], tried closest to
    (1, 1) first; x0 ranges over decades in [1e-6, 1e6]. A missing witness
    means none was found in the box. When no pair works, the report carries
    one violating sample per pair.
    """
    mode = Mode(mode)
    x = (grid_spec or MAJORIZATION_GRID).points()
    v2 = phi2._eval(x)
    cache = {}
    refutation = []
    for a, b in _search_order():
        if a not in cache:
            with np.errstate(over="ignore"):
                cache[a] = phi1._eval(a * x)
        with np.errstate(over="ignore", invalid="ignore"):
            rhs = b * cache[a]
            viol = v2 > rhs * (1 + 1e-12)
        idx = np.nonzero(viol)[0]
        if mode is Mode.GLOBAL:
            if idx.size == 0:
                return MajorizationReport(MajorizationWitness(a, b, mode))
            refutation.append((a, b, float(x[idx[0]])))
        elif mode is Mode.AT_ZERO:
            limit = x[idx[0]] if idx.size else math.inf
            ok = [x0 for x0 in _X0_GRID if x0 < limit]
            if ok:
                return MajorizationReport(MajorizationWitness(a, b, mode, max(ok)))
            refutation.append((a, b, float(x[idx[0]])))
        else:
            limit = x[idx[-1]] if idx.size else -math.inf
            ok = [x0 for x0 in _X0_GRID if x0 > limit]
            if ok:
                return MajorizationReport(MajorizationWitness(a, b, mode, min(ok)))
            refutation.append((a, b, float(x[idx[-1]])))
    return MajorizationReport(None, tuple(refutation))


def max_combine(phi1: OrliczFunction, phi2: OrliczFunction) -> OrliczFunction:
    """Φ₁ ∨ Φ₂; its Orlicz space is the intersection of the two spaces."""
    if phi1 == phi2:
        return phi1
    return MaxOf(phi1, phi2)


class MeasureKind(str, enum.Enum):
    NON_ATOMIC_INFINITE = "non_atomic_infinite"
    ATOMIC_POSITIVE = "atomic_positive"
    NON_ATOMIC_FINITE = "non_atomic_finite"


_MODE_FOR_MEASURE = {
    MeasureKind.NON_ATOMIC_INFINITE: Mode.GLOBAL,
    MeasureKind.ATOMIC_POSITIVE: Mode.AT_ZERO,
    MeasureKind.NON_ATOMIC_FINITE: Mode.AT_INFINITY,
}


@dataclass(frozen=True)
class EmbeddingReport:
    embedded: Optional[bool]
    measure_kind: MeasureKind
    mode: Mode
    majorization: MajorizationReport
    evidence: str = EVIDENCE


def embedding_verdict(phi1: OrliczFunction, phi2: OrliczFunction,
                      measure_kind: MeasureKind | str) -> EmbeddingReport:
    """Whether L^{Φ₁} ⊆ L^{Φ₂}, decided through Φ₂ ≺ Φ₁ in the matching mode."""
    measure_kind = MeasureKind(measure_kind)
    mode = _MODE_FOR_MEASURE[measure_kind]
    rep = majorizes(phi1, phi2, mode)
    embedded = True if rep.witness else (False if rep.refutation else None)
    return EmbeddingReport(embedded, measure_kind, mode, rep)


# --------------------------------------------------------------------------
# generalized inverse


def inverse(phi: OrliczFunction, t: float) -> float:
    """Generalized inverse inf{x ≥ 0 : Φ(x) > t}."""
    if not t >= 0:
        raise ValueError(f"inverse needs t >= 0, got {t}")
    if isinstance(phi, PowerScaled):
        return (t / phi.c) ** (1.0 / phi.p)
    if isinstance(phi, ExpMinusOne):
        return math.log1p(t)
    if isinstance(phi, LinearJump):
        return phi.c
    if isinstance(phi, MaxOf):
        return min(inverse(phi.left, t), inverse(phi.right, t))
    if isinstance(phi, Tabulated):
        return _tabulated_inverse(phi, t)
    return bisect_inverse(phi, t)


def bisect_inverse(phi: OrliczFunction, t: float, rtol: float = 1e-12) -> float:
    """Bisection for inf{x : Φ(x) > t}; returns the lower end (Φ ≤ t there)."""
    hi = 1.0
    while not phi(hi) > t:
        hi *= 2.0
        if hi > 1e300:
            raise Unbounded(f"Φ stays <= {t} on the search range")
    lo = 0.0
    for _ in range(4000):
        if hi - lo <= rtol * hi:
            break
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if phi(mid) > t:
            hi = mid
        else:
            lo = mid
    return lo


def _tabulated_inverse(phi: Tabulated, t: float) -> float:
    x, v = phi._x, phi._v
    above = np.nonzero(v > t)[0]
    if above.size:
        k = int(above[0])
        if not math.isfinite(v[k]):
            return float(x[k - 1])
        return float(x[k - 1] + (t - v[k - 1]) * (x[k] - x[k - 1]) / (v[k] - v[k - 1]))
    if phi.tail == "inf":
        return float(x[-1])
    if phi.tail == "raise":
        raise OutOfTabulatedRange(f"level {t} exceeds the tabulated range of Φ")
    slope = phi._tail_slope()
    if slope <= 0:
        raise Unbounded(f"Φ stays <= {t}")
    return float(x[-1] + (t - v[-1]) / slope)


def sample_invariants(phi: OrliczFunction, xs: Sequence[float], rtol: float = 1e-12) -> list:
    """Violations of Φ(0)=0, monotonicity and convexity on the sample ``xs``."""
    xs = np.sort(np.asarray(xs, dtype=float))
    v = phi._eval(xs)
    problems = []
    if phi(0.0) != 0:
        problems.append("phi(0) != 0")
    fin = np.isfinite(v)
    if np.any(np.diff(v[fin]) < -rtol * np.abs(v[fin][1:])):
        problems.append("not nondecreasing")
    for t in (0.25, 0.5, 0.75):
        xa, xb = xs[:-1], xs[1:]
        mid = phi._eval(t * xa + (1 - t) * xb)
        chord = t * phi._eval(xa) + (1 - t) * phi._eval(xb)
        ok = np.isinf(chord) | (mid <= chord * (1 + rtol) + 1e-300)
        if not ok.all():
            problems.append(f"convexity fails at t={t}")
            break
    return problems
