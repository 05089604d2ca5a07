"""Beurling–Malliavin density: interval sequences, exact counting for a few
parametric discrete sets, and the existence verdict for sets of translates."""

from __future__ import annotations

import bisect
import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

import numpy as np

from .errors import MalformedSequence, NotSubstantial
from .orlicz import OrliczFunction, limit_ratio_at_zero
from .completeness import Regime, require_delta2


def _ceil(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


def _floor(q: Fraction) -> int:
    return q.numerator // q.denominator


# --------------------------------------------------------------------------
# discrete sets


class DiscreteSet:
    """A discrete subset of ℝ with an exact counter for half-open intervals."""

    def count(self, left: float, right: float) -> int:
        raise NotImplementedError

    def points(self, left: float, right: float) -> np.ndarray:
        raise NotImplementedError

    def descriptor(self) -> str:
        raise NotImplementedError

    def __repr__(self):
        return f"{type(self).__name__}({self.descriptor()!r})"


class _Symmetric(DiscreteSet):
    """Sets {0} ∪ {±g(n) : n ≥ 1} with g increasing and exact counters

    ``_below(x)`` = #{n ≥ 1 : g(n) < x} and ``_upto(x)`` = #{n ≥ 1 : g(n) ≤ x}
    for x > 0 given as a Fraction.
    """

    def _below(self, x: Fraction) -> int:
        raise NotImplementedError

    def _upto(self, x: Fraction) -> int:
        raise NotImplementedError

    def _g(self, n: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def count(self, left, right):
        if not left < right:
            return 0
        l, r = Fraction(left), Fraction(right)
        total = 1 if l <= 0 < r else 0
        if r > 0:
            total += self._below(r) - (self._below(l) if l > 0 else 0)
        if l < 0:
            total += self._upto(-l) - (self._upto(-r) if r < 0 else 0)
        return total

    def points(self, left, right):
        if not left < right:
            return np.empty(0)
        out = []
        l, r = Fraction(left), Fraction(right)
        if l < 0:
            lo = self._upto(-r) + 1 if r < 0 else 1
            hi = self._upto(-l)
            out.append(-self._g(np.arange(hi, lo - 1, -1)))
        if l <= 0 < r:
            out.append(np.zeros(1))
        if r > 0:
            lo = self._below(l) + 1 if l > 0 else 1
            hi = self._below(r)
            out.append(self._g(np.arange(lo, hi + 1)))
        return np.concatenate(out) if out else np.empty(0)


@dataclass(frozen=True, repr=False)
class Lattice(_Symmetric):
    """αℤ, α read as the decimal its float prints as (0.3 means 3/10).

    Counts are exact for that rational α; listed points are α·n rounded.
    """

    alpha: float

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError("alpha must be positive")

    @property
    def exact_alpha(self) -> Fraction:
        return Fraction(repr(float(self.alpha)))

    def _below(self, x):
        return _ceil(x / self.exact_alpha) - 1

    def _upto(self, x):
        return _floor(x / self.exact_alpha)

    def _g(self, n):
        return self.alpha * n.astype(float)

    def descriptor(self):
        return f"lattice:{self.alpha!r}"


@dataclass(frozen=True, repr=False)
class SqrtLattice(_Symmetric):
    """{±√n : n ≥ 0}."""

    def _below(self, x):
        return _ceil(x * x) - 1

    def _upto(self, x):
        return _floor(x * x)

    def _g(self, n):
        return np.sqrt(n.astype(float))

    def descriptor(self):
        return "sqrt"


@dataclass(frozen=True, repr=False)
class Squares(_Symmetric):
    """{±n² : n ≥ 0}."""

    def _below(self, x):
        return math.isqrt(_ceil(x) - 1)

    def _upto(self, x):
        return math.isqrt(_floor(x))

    def _g(self, n):
        return n.astype(float) ** 2

    def descriptor(self):
        return "squares"


@dataclass(frozen=True, repr=False)
class ExplicitFinite(DiscreteSet):
    values: tuple
    source: Optional[str] = None

    def __post_init__(self):
        vals = tuple(sorted(set(float(v) for v in self.values)))
        if not all(math.isfinite(v) for v in vals):
            raise ValueError("finite sets hold finite values only")
        object.__setattr__(self, "values", vals)

    def count(self, left, right):
        if not left < right:
            return 0
        return bisect.bisect_left(self.values, right) - bisect.bisect_left(self.values, left)

    def points(self, left, right):
        i = bisect.bisect_left(self.values, left)
        j = bisect.bisect_left(self.values, right)
        return np.array(self.values[i:max(i, j)])

    def __eq__(self, other):
        return isinstance(other, ExplicitFinite) and self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def descriptor(self):
        if self.source:
            return f"finite:@{self.source}"
        return "finite:" + ",".join(repr(v) for v in self.values)


def _zigzag(n: int) -> int:
    return 2 * n if n >= 0 else -2 * n - 1


@lru_cache(maxsize=None)
def _perturbation_draw(seed: int, n: int) -> tuple:
    rng = np.random.default_rng([seed, _zigzag(n)])
    u = rng.uniform(0.05, 1.0)
    sign = 1 if rng.random() < 0.5 else -1
    return sign, float(u)


@dataclass(frozen=True, repr=False)
class PerturbedLattice(DiscreteSet):
    """{n + r_n : n ∈ ℤ} with r_n = ±u_n γ^|n|, u_n ∈ [0.05, 1).

    Each r_n depends only on (seed, n). For large |n| the perturbation is
    below the float spacing at n, so the stored point rounds to n; the
    perturbation itself is available in log form.
    """

    gamma: float
    seed: int = 0

    def __post_init__(self):
        if not 0 < self.gamma < 1:
            raise ValueError("gamma must lie in (0, 1)")

    def log_abs_perturbation(self, n: int) -> float:
        _, u = _perturbation_draw(self.seed, n)
        return math.log(u) + abs(n) * math.log(self.gamma)

    def perturbation(self, n: int) -> float:
        sign, u = _perturbation_draw(self.seed, n)
        return sign * u * self.gamma ** abs(n)

    def point(self, n: int) -> float:
        return n + self.perturbation(n)

    def count(self, left, right):
        if not left < right:
            return 0
        # n + r_n lies in (n-1, n+1): every n with left <= n-1 and n+1 <= right
        # is inside, only the few near each end need a look.
        lo_sure, hi_sure = math.ceil(left) + 1, math.floor(right) - 1
        total = max(0, hi_sure - lo_sure + 1)
        edge = set(range(math.floor(left) - 1, lo_sure)) | set(range(hi_sure + 1, math.ceil(right) + 2))
        for n in edge:
            if not lo_sure <= n <= hi_sure and left <= self.point(n) < right:
                total += 1
        return total

    def points(self, left, right):
        ns = range(math.floor(left) - 1, math.ceil(right) + 2)
        pts = [self.point(n) for n in ns]
        return np.array([p for p in pts if left <= p < right])

    def descriptor(self):
        return f"perturbed:{self.gamma!r},{self.seed}"


# --------------------------------------------------------------------------
# interval sequences


class IntervalSequence:
    """Disjoint half-open intervals on one half-axis, indexed k = 0, 1, ...

    ``divergent`` is the analytic statement about Σ(|I_k|/dist(I_k, 0))² over
    the whole infinite sequence; None for finite lists.
    """

    divergent: Optional[bool] = None

    def interval(self, k: int) -> tuple:
        raise NotImplementedError

    def prefix(self, length: int) -> list:
        return [self.interval(k) for k in range(length)]

    @property
    def length_limit(self) -> Optional[int]:
        return None


@dataclass(frozen=True)
class Dyadic(IntervalSequence):
    """I_k = side·[2^(start+k), 2^(start+k+1)); every term of the series is 1."""

    start: int = 1
    side: int = 1

    def __post_init__(self):
        if self.side not in (1, -1):
            raise ValueError("side is +1 or -1")

    divergent = True

    def interval(self, k):
        lo, hi = 2.0 ** (self.start + k), 2.0 ** (self.start + k + 1)
        return (lo, hi) if self.side > 0 else (-hi, -lo)


@dataclass(frozen=True)
class SquareOffsets(IntervalSequence):
    """I_k = [j², j² + L) with j = start + k; terms (L/j²)² sum to a finite value."""

    length: float = 2.0
    start: int = 1

    divergent = False

    def interval(self, k):
        j = self.start + k
        return (float(j * j), float(j * j) + self.length)


@dataclass(frozen=True)
class ExplicitIntervals(IntervalSequence):
    intervals: tuple

    divergent = False

    def interval(self, k):
        return tuple(float(v) for v in self.intervals[k])

    @property
    def length_limit(self):
        return len(self.intervals)


@dataclass(frozen=True)
class SubstantialReport:
    prefix_len: int
    partial_sum: float
    divergent: Optional[bool]
    terms: tuple

    @property
    def substantial(self) -> bool:
        return bool(self.divergent)


def _dist0(lo, hi):
    return lo if lo >= 0 else -hi


def substantial_check(seq: IntervalSequence, prefix_len: int) -> SubstantialReport:
    """Validate the first ``prefix_len`` intervals and sum (|I_k|/dist(I_k, 0))²."""
    if prefix_len < 1:
        raise ValueError("prefix_len must be at least 1")
    if seq.length_limit is not None:
        prefix_len = min(prefix_len, seq.length_limit)
    ivs = seq.prefix(prefix_len)
    side = None
    terms = []
    for k, (lo, hi) in enumerate(ivs):
        if not hi - lo > 1:
            raise MalformedSequence(f"interval {k} = [{lo}, {hi}) has length {hi - lo} <= 1")
        s = 1 if lo >= 0 else (-1 if hi <= 0 else 0)
        if s == 0:
            raise MalformedSequence(f"interval {k} = [{lo}, {hi}) straddles 0")
        if side is None:
            side = s
        elif s != side:
            raise MalformedSequence(f"interval {k} is on the other half-axis")
        d = _dist0(lo, hi)
        terms.append(math.inf if d == 0 else ((hi - lo) / d) ** 2)
    order = sorted(range(len(ivs)), key=lambda i: ivs[i][0])
    for i, j in zip(order[:-1], order[1:]):
        if ivs[j][0] < ivs[i][1]:
            raise MalformedSequence(f"intervals {i} and {j} overlap")
    return SubstantialReport(len(ivs), float(math.fsum(terms)), seq.divergent, tuple(terms))


def bm_lower_bound(dset: DiscreteSet, seq: IntervalSequence, prefix_len: int) -> float:
    """min over the prefix of #(Λ ∩ I_k)/|I_k|."""
    rep = substantial_check(seq, prefix_len)
    if not rep.substantial:
        raise NotSubstantial("the interval sequence is not substantial (series converges or is finite)")
    return min(dset.count(lo, hi) / (hi - lo) for lo, hi in seq.prefix(rep.prefix_len))


def tail_bounds(dset: DiscreteSet, k_max: int, window: int = 4, side: int = 1) -> np.ndarray:
    """bm_lower_bound over dyadic sequences started at 2^K, K = 1..k_max.

    Dropping finitely many intervals keeps a sequence substantial, so each
    entry is a lower bound for D_BM on its own; entry K-1 looks at
    [2^K, 2^(K+window)).
    """
    return np.array([bm_lower_bound(dset, Dyadic(K, side), window) for K in range(1, k_max + 1)])


class DensityKind(str, enum.Enum):
    ZERO = "Zero"
    FINITE = "Finite"
    INFINITE = "Infinite"


@dataclass(frozen=True)
class DensityClass:
    kind: DensityKind
    value: Optional[Fraction]  # D_BM when finite
    basis: str

    def __str__(self):
        if self.kind is DensityKind.FINITE:
            return f"D_BM finite ({float(self.value):g})"
        return "D_BM zero" if self.kind is DensityKind.ZERO else "D_BM infinite"


def bm_classify(dset: DiscreteSet) -> DensityClass:
    """Per-kind analytic classification; upper bounds are known facts, not computed."""
    if isinstance(dset, Lattice):
        return DensityClass(DensityKind.FINITE, 1 / dset.exact_alpha,
                            "uniformly discrete with gap alpha; dyadic counts give 1/alpha")
    if isinstance(dset, PerturbedLattice):
        return DensityClass(DensityKind.FINITE, Fraction(1),
                            "one point in each (n-1, n+1); dyadic counts give 1")
    if isinstance(dset, (ExplicitFinite, Squares)):
        return DensityClass(DensityKind.ZERO, Fraction(0),
                            "counts on [2^k, 2^(k+1)) are o(2^k)")
    if isinstance(dset, SqrtLattice):
        return DensityClass(DensityKind.INFINITE, None, "dyadic ratio 3*2^k is unbounded")
    raise TypeError(f"no classification for {type(dset).__name__}")


class Existence(str, enum.Enum):
    EXISTS = "Exists"
    NOT_EXISTS = "NotExists"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class ExistenceVerdict:
    status: Existence
    regime: Regime
    density: DensityClass
    basis: str

    def summary(self) -> str:
        return f"{self.status.value}, {self.density}"


def discrete_translates_verdict(phi: OrliczFunction, dset: DiscreteSet, growth=None) -> ExistenceVerdict:
    """Is there f ∈ L^Φ whose Λ-translates are complete?"""
    require_delta2(phi, growth)
    dens = bm_classify(dset)
    if limit_ratio_at_zero(phi) > 0:
        regime = Regime.RATIO_POSITIVE
        if dens.kind is DensityKind.INFINITE:
            return ExistenceVerdict(Existence.EXISTS, regime, dens, "L^Φ ⊆ L¹ and D_BM = ∞")
        return ExistenceVerdict(Existence.NOT_EXISTS, regime, dens,
                                "L^Φ ⊆ L¹ and D_BM < ∞: an annihilator exists for every f")
    regime = Regime.RATIO_ZERO
    if isinstance(dset, PerturbedLattice):
        return ExistenceVerdict(Existence.EXISTS, regime, dens, "small perturbation of ℤ")
    if dens.kind is DensityKind.INFINITE:
        return ExistenceVerdict(Existence.EXISTS, regime, dens, "D_BM = ∞ and L¹ ∩ L^Φ is dense")
    return ExistenceVerdict(Existence.UNKNOWN, regime, dens, "no result covers this set")
