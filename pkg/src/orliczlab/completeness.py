"""Completeness of translates: Agnew approximants, Wiener-type verdicts and
annihilators for discrete translation sets."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .catalog import AnalyticCatalogFunction, SineTimesSincSquared
from .errors import (
    CertificateMissing,
    Delta2Unverified,
    InvalidPlan,
    QuadratureFailure,
    SearchExhausted,
    WrongRegime,
)
from .norms import char_norm_closed_form, luxemburg_norm
from .orlicz import GrowthClass, OrliczFunction, check_delta2, limit_ratio_at_zero
from .piecewise import PiecewiseFunction, step_sum, step_width, zero_scan

# --------------------------------------------------------------------------
# Agnew construction


@dataclass(frozen=True)
class AgnewPlan:
    """Approximate g = χ_[0,a) by translates of f = χ_[0,b).

    ``m`` is the least integer with m·b > a; ``n`` is the number of blocks.
    """

    a: float
    b: float
    m: int
    n: int
    epsilon: Optional[float] = None

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0):
            raise InvalidPlan("a and b must be positive")
        if int(self.m) != self.m or self.m < 1 or int(self.n) != self.n or self.n < 1:
            raise InvalidPlan("m and n must be positive integers")
        if not (self.m * self.b > self.a and (self.m - 1) * self.b <= self.a):
            raise InvalidPlan(f"m={self.m} is not the least integer with m*b > a "
                              f"(a={self.a}, b={self.b})")

    @property
    def block(self) -> float:
        """Width m·b of the block χ_[0,mb) built from m translates of f."""
        return self.m * self.b

    @classmethod
    def build(cls, a: float, b: float, n: int, epsilon: Optional[float] = None) -> "AgnewPlan":
        return cls(a, b, least_multiple(a, b), n, epsilon)


def least_multiple(a: float, b: float) -> int:
    """Least positive integer m with m·b > a."""
    m = max(1, int(math.floor(a / b)) + 1)
    while m * b <= a:
        m += 1
    while m > 1 and (m - 1) * b > a:
        m -= 1
    return m


TIE_RTOL = 1e-12


def agnew_threshold(phi: OrliczFunction, epsilon: float, d: float, max_n: int = 2 ** 60) -> int:
    """Least n with ‖χ_[0,nd)/n‖_Φ < ε, using the closed-form norm.

    The norm (1/n)/Φ⁻¹(1/(nd)) is nonincreasing in n, so the search doubles
    until the inequality holds and then bisects. A norm within ``TIE_RTOL`` of
    ε counts as equal (not less), so exact ties such as √(2/200) = 0.1 are not
    decided by the last bit of rounding.
    """
    if not (epsilon > 0 and d > 0):
        raise ValueError("epsilon and d must be positive")
    if limit_ratio_at_zero(phi) > 0:
        raise WrongRegime("lim Φ(x)/x > 0 at 0: the norms stay bounded below and no threshold exists")
    bound = epsilon * (1.0 - TIE_RTOL)
    ok = lambda n: char_norm_closed_form(phi, 1.0 / n, n * d) < bound
    if ok(1):
        return 1
    hi = 2
    while not ok(hi):
        hi *= 2
        if hi > max_n:
            raise SearchExhausted(f"no n <= {max_n} reaches epsilon={epsilon}")
    lo = hi // 2  # norm(lo) >= epsilon
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid
    return hi


def proof_threshold(phi: OrliczFunction, epsilon: float, d: float) -> int:
    """The sufficient n from the existence argument: pick δ with Φ(x)/x < ε/d
    on (0, δ), then any n > 1/(εδ) works."""
    if limit_ratio_at_zero(phi) > 0:
        raise WrongRegime("lim Φ(x)/x > 0 at 0")
    target = epsilon / d
    ratio = lambda x: phi(x) / x
    hi = 1.0
    while ratio(hi) < target:
        hi *= 2.0
    lo = 0.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if ratio(mid) < target:
            lo = mid
        else:
            hi = mid
    delta = lo * (1 - 1e-9)
    return int(math.floor(1.0 / (epsilon * delta))) + 1


def plan_agnew(phi: OrliczFunction, a: float, b: float, epsilon: float) -> AgnewPlan:
    m = least_multiple(a, b)
    n = agnew_threshold(phi, epsilon, 2 * m * b)
    return AgnewPlan(a, b, m, n, epsilon)


@dataclass(frozen=True)
class AgnewSpan:
    """g_ε as an explicit combination Σ coef·τ_shift χ_[0,b).

    Coefficients are ``numerators / denominator`` with integer numerators.
    """

    generator_width: float
    shifts: np.ndarray
    numerators: np.ndarray
    denominator: int

    @property
    def coefficients(self) -> np.ndarray:
        return self.numerators / self.denominator

    def pairs(self) -> list:
        return [(float(s), float(c)) for s, c in zip(self.shifts, self.coefficients)]

    def evaluate(self) -> PiecewiseFunction:
        return step_sum(self.shifts, self.shifts + self.generator_width, self.numerators,
                        denominator=self.denominator)


def _block_terms(plan: AgnewPlan):
    """Blocks χ_[0,mb) of g_ε: ends and integer numerators over 2n+1.

    Right ends are formed as (k+1)·mb (+ a) rather than left + mb, so that
    neighbouring blocks share their endpoint bit for bit and cancel exactly.
    """
    n, M, a = plan.n, plan.block, plan.a
    k = np.arange(n + 1, dtype=float)
    ends = k * M
    lefts = np.concatenate([ends[:-1], ends[:-1] + a])
    rights = np.concatenate([ends[1:], ends[1:] + a])
    nums = np.concatenate([2 * n - 2 * k[:-1], -(2 * n - 2 * k[:-1] - 1)])
    return lefts, rights, nums


def agnew_translates(plan: AgnewPlan) -> AgnewSpan:
    """Expand each block χ_[0,mb)(· − s) into m translates of χ_[0,b)."""
    lefts, _, nums = _block_terms(plan)
    j = np.arange(plan.m, dtype=float) * plan.b
    shifts = (lefts[:, None] + j[None, :]).ravel()
    numerators = np.repeat(nums, plan.m)
    return AgnewSpan(plan.b, shifts, numerators, 2 * plan.n + 1)


def agnew_approximant(plan: AgnewPlan) -> PiecewiseFunction:
    """g_ε = Σ_k [(1 − (2k+1)/(2n+1)) χ_[0,mb)(x − kmb) − (1 − (2k+2)/(2n+1)) χ_[0,mb)(x − kmb − a)]."""
    lefts, rights, nums = _block_terms(plan)
    return step_sum(lefts, rights, nums, denominator=2 * plan.n + 1)


def agnew_error(plan: AgnewPlan) -> PiecewiseFunction:
    """|g − g_ε| computed in integer multiples of 1/(2n+1), hence exactly."""
    lefts, rights, nums = _block_terms(plan)
    den = 2 * plan.n + 1
    all_lefts = np.concatenate([[0.0], lefts])
    all_rights = np.concatenate([[plan.a], rights])
    heights = np.concatenate([[float(den)], -nums])
    return step_sum(all_lefts, all_rights, heights, denominator=den, absolute=True)


def agnew_error_norm(phi: OrliczFunction, plan: AgnewPlan) -> float:
    """‖g − g_ε‖_Φ by bisection on the exact error function."""
    return luxemburg_norm(phi, agnew_error(plan)).value


def agnew_error_closed_form(phi: OrliczFunction, plan: AgnewPlan) -> float:
    return char_norm_closed_form(phi, 1.0 / (2 * plan.n + 1), plan.n * plan.block + plan.a)


# --------------------------------------------------------------------------
# verdicts


class Status(str, enum.Enum):
    COMPLETE = "Complete"
    NOT_COMPLETE = "NotComplete"
    UNKNOWN = "Unknown"


class Basis(str, enum.Enum):
    WIENER_ZERO_FOUND = "WienerZeroFound"
    WIENER_POSITIVITY_CERTIFICATE = "WienerPositivityCertificate"
    STEP_FUNCTION_THEOREM = "StepFunctionTheorem"
    NOT_APPLICABLE = "NotApplicable"


class Regime(str, enum.Enum):
    RATIO_POSITIVE = "RatioPositive"
    RATIO_ZERO = "RatioZero"


def regime_of(phi: OrliczFunction) -> Regime:
    return Regime.RATIO_POSITIVE if limit_ratio_at_zero(phi) > 0 else Regime.RATIO_ZERO


def require_delta2(phi: OrliczFunction, growth: Optional[GrowthClass] = None) -> GrowthClass:
    growth = growth if growth is not None else check_delta2(phi)
    if growth.delta2 is None:
        raise Delta2Unverified(f"no Δ₂ witness for {phi}; the completeness results assume Φ ∈ Δ₂")
    return growth


@dataclass(frozen=True)
class CompletenessVerdict:
    status: Status
    basis: Basis
    regime: Regime
    zero: Optional[float] = None
    certificate: Optional[str] = None
    growth: Optional[GrowthClass] = field(default=None, repr=False)

    def __post_init__(self):
        if self.basis is Basis.WIENER_ZERO_FOUND:
            assert self.regime is Regime.RATIO_POSITIVE and self.zero is not None
        if self.status is Status.COMPLETE and self.regime is Regime.RATIO_POSITIVE:
            assert self.basis is Basis.WIENER_POSITIVITY_CERTIFICATE

    def summary(self) -> str:
        if self.zero is not None:
            return f"{self.status.value}, zero at {self.zero:.4f}"
        return f"{self.status.value}, {self.basis.value}"


def completeness_verdict(phi: OrliczFunction, f: Union[PiecewiseFunction, AnalyticCatalogFunction], *,
                         growth: Optional[GrowthClass] = None, scan_range=(-50.0, 50.0),
                         grid_step: float = 0.01, zero_tol: float = 1e-10) -> CompletenessVerdict:
    """Are all translates of ``f`` complete in L^Φ(ℝ)?

    With lim Φ(x)/x > 0 the space embeds in L¹ and completeness is equivalent
    to f̂ having no real zero: a certified zero gives NotComplete, a closed-form
    positivity certificate gives Complete. With lim Φ(x)/x = 0 the translates
    of any single step are complete. Everything else is Unknown.
    """
    growth = require_delta2(phi, growth)
    regime = regime_of(phi)
    if regime is Regime.RATIO_POSITIVE:
        if isinstance(f, AnalyticCatalogFunction):
            if f.positivity_certificate:
                return CompletenessVerdict(Status.COMPLETE, Basis.WIENER_POSITIVITY_CERTIFICATE, regime,
                                           certificate=f.positivity_certificate, growth=growth)
            for z in f.known_zeros():
                if abs(f.fourier(z)) <= zero_tol:
                    return CompletenessVerdict(Status.NOT_COMPLETE, Basis.WIENER_ZERO_FOUND, regime,
                                               zero=float(z), growth=growth)
            return CompletenessVerdict(Status.UNKNOWN, Basis.NOT_APPLICABLE, regime, growth=growth)
        if f.is_zero:
            return CompletenessVerdict(Status.NOT_COMPLETE, Basis.WIENER_ZERO_FOUND, regime, zero=0.0,
                                       growth=growth)
        report = zero_scan(f, scan_range, grid_step, zero_tol=zero_tol)
        zeros = report.certified_zeros
        if zeros:
            z = min(zeros, key=lambda t: (abs(t), t < 0))
            return CompletenessVerdict(Status.NOT_COMPLETE, Basis.WIENER_ZERO_FOUND, regime, zero=z,
                                       growth=growth)
        return CompletenessVerdict(Status.UNKNOWN, Basis.NOT_APPLICABLE, regime, growth=growth)
    if isinstance(f, PiecewiseFunction) and step_width(f) is not None:
        return CompletenessVerdict(Status.COMPLETE, Basis.STEP_FUNCTION_THEOREM, regime, growth=growth)
    return CompletenessVerdict(Status.UNKNOWN, Basis.NOT_APPLICABLE, regime, growth=growth)


# --------------------------------------------------------------------------
# annihilator for βℤ-translates


def _gauss_nodes(edges, order=16):
    t, w = np.polynomial.legendre.leggauss(order)
    edges = np.asarray(edges, dtype=float)
    lo, hi = edges[:-1, None], edges[1:, None]
    x = 0.5 * (hi - lo) * t[None, :] + 0.5 * (hi + lo)
    wt = 0.5 * (hi - lo) * w[None, :]
    return x.ravel(), wt.ravel()


def _refine(edges, factor):
    edges = np.asarray(edges, dtype=float)
    pieces = [np.linspace(a, b, factor + 1)[:-1] for a, b in zip(edges[:-1], edges[1:])]
    return np.concatenate(pieces + [edges[-1:]])


def _decay_radius(f: AnalyticCatalogFunction, floor: float = 1e-17) -> float:
    probe = 1.0
    while abs(f(probe)) > floor or abs(f(-probe)) > floor:
        probe *= 1.25
        if probe > 1e6:
            raise QuadratureFailure("f does not decay fast enough for the inner products")
    return probe


@dataclass(frozen=True)
class AnnihilatorReport:
    beta: float
    spectral_margin: float
    lambdas: np.ndarray
    in_lattice: np.ndarray
    inner_products: np.ndarray  # complex
    h_values: np.ndarray
    fitted_constant: float
    max_lattice_abs: float
    max_proportionality_residual: float
    quadrature_estimate: float

    def rows(self) -> list:
        return [
            (float(lam), bool(inl), float(ip.real), float(ip.imag), float(hv), float(abs(ip - self.fitted_constant * hv)))
            for lam, inl, ip, hv in zip(self.lambdas, self.in_lattice, self.inner_products, self.h_values)
        ]


class Annihilator:
    """g = inverse transform of ĥ/f̂, for h = sin(πx/β)·sinc²(wx/2).

    g(x) = (1/2π) ∫ G(ζ) e^{−ixζ} dζ is evaluated lazily with composite
    Gauss–Legendre nodes on each linear piece of ĥ.
    """

    def __init__(self, f: AnalyticCatalogFunction, beta: float = 1.0, spectral_margin: float = 1.0,
                 panels: int = 24, order: int = 16):
        if not getattr(f, "positivity_certificate", None):
            raise CertificateMissing("the annihilator divides by f̂ and needs f̂ > 0 everywhere")
        if not (beta > 0 and spectral_margin > 0):
            raise ValueError("beta and spectral_margin must be positive")
        self.f = f
        self.beta = float(beta)
        self.h = SineTimesSincSquared(math.pi / beta, spectral_margin)
        kinks = self.h.kinks()
        edges = []
        for lo, hi in zip(kinks[:-1], kinks[1:]):
            mid = 0.5 * (lo + hi)
            if abs(self.h.fourier(mid)) == 0:
                continue
            edges.append(np.linspace(lo, hi, panels + 1))
        zeta, wz = [], []
        for e in edges:
            z, w = _gauss_nodes(e, order)
            zeta.append(z)
            wz.append(w)
        self.zeta = np.concatenate(zeta)
        weights = np.concatenate(wz)
        G = self.h.fourier(self.zeta) / self.f.fourier(self.zeta)
        self._coef = weights * G / (2 * math.pi)

    def __call__(self, x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.empty(x.shape, dtype=complex)
        for s in range(0, x.size, 2048):
            xs = x[s:s + 2048]
            out[s:s + 2048] = np.exp(-1j * np.outer(xs, self.zeta)) @ self._coef
        return out

    def inner_product(self, lam: float, panel: float = 0.25, order: int = 16) -> tuple:
        """∫ f(x − λ) g(x) dx with an error estimate from halving the panels."""
        L = _decay_radius(self.f)
        k = math.ceil(L / panel)
        edges = lam + panel * np.arange(-k, k + 1)
        coarse = self._integrate(lam, edges, order)
        fine = self._integrate(lam, _refine(edges, 2), order)
        return fine, abs(fine - coarse)

    def _integrate(self, lam, edges, order):
        x, w = _gauss_nodes(edges, order)
        return complex(np.sum(w * self.f(x - lam) * self(x)))


def construct_annihilator(f: AnalyticCatalogFunction, beta: float = 1.0, spectral_margin: float = 1.0,
                          N: int = 5, extra_lambdas=(0.5,), quad_tol: float = 1e-8) -> AnnihilatorReport:
    """Build g ≠ 0 with ⟨τ_λ f, g⟩ = h(λ) = 0 for every λ ∈ βℤ.

    Inner products are computed by direct quadrature against the lazily
    evaluated g, for λ = βn (|n| ≤ N) and the control points in
    ``extra_lambdas``.
    """
    ann = Annihilator(f, beta, spectral_margin)
    lattice = [beta * n for n in range(-N, N + 1)]
    lambdas = np.array(lattice + [float(t) for t in extra_lambdas])
    in_lattice = np.array([True] * len(lattice) + [abs(t / beta - round(t / beta)) < 1e-12 for t in extra_lambdas])
    ips, errs = [], []
    for lam in lambdas:
        ip, err = ann.inner_product(lam)
        ips.append(ip)
        errs.append(err)
    worst = max(errs)
    if worst > quad_tol:
        raise QuadratureFailure(f"inner-product quadrature error estimate {worst:.3g} exceeds {quad_tol}")
    ips = np.array(ips)
    hv = np.asarray(ann.h(lambdas), dtype=float)
    denom = float(np.dot(hv, hv))
    C = float(np.dot(ips.real, hv) / denom) if denom > 0 else 0.0
    resid = np.abs(ips - C * hv)
    return AnnihilatorReport(
        beta=float(beta), spectral_margin=float(spectral_margin), lambdas=lambdas, in_lattice=in_lattice,
        inner_products=ips, h_values=hv, fitted_constant=C,
        max_lattice_abs=float(np.max(np.abs(ips[in_lattice]))),
        max_proportionality_residual=float(np.max(resid)), quadrature_estimate=float(worst),
    )
