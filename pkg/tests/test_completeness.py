import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from orliczlab.catalog import Gaussian, SineTimesSincSquared, TwoSidedExponential
from orliczlab.completeness import (
    AgnewPlan,
    Annihilator,
    Basis,
    Regime,
    Status,
    agnew_approximant,
    agnew_error,
    agnew_error_closed_form,
    agnew_error_norm,
    agnew_threshold,
    agnew_translates,
    completeness_verdict,
    construct_annihilator,
    least_multiple,
    plan_agnew,
    proof_threshold,
)
from orliczlab.errors import (
    CertificateMissing,
    Delta2Unverified,
    InvalidPlan,
    SearchExhausted,
    WrongRegime,
)
from orliczlab.norms import char_norm_closed_form
from orliczlab.orlicz import ExpMinusOne, MaxOf, Power, PowerScaled
from orliczlab.piecewise import make_step, make_tent, zero_scan

dyadic = st.integers(1, 64).map(lambda k: k / 16)


def brute_threshold(phi, eps, d, limit=100_000):
    """First n whose closed-form norm is below eps, in exact arithmetic where possible."""
    for n in range(1, limit):
        if char_norm_closed_form(phi, 1.0 / n, n * d) < eps * (1 - 1e-12):
            return n
    raise AssertionError("not found")


# -- thresholds ---------------------------------------------------------------

def test_threshold_examples():
    assert agnew_threshold(Power(2), 0.1, 2) == 201
    assert agnew_threshold(Power(2), 1, 1) == 2
    assert agnew_threshold(Power(3), 0.5, 1) == 3


def test_threshold_square_is_exact():
    # ‖χ_[0,nd)/n‖ = √(d/n) < ε  ⟺  n > d/ε²
    for d, eps in [(2, Fraction(1, 10)), (1, Fraction(1, 4)), (3, Fraction(1, 5)), (0.5, Fraction(1, 20))]:
        bound = Fraction(d) / eps ** 2
        expected = math.floor(bound) + 1
        assert agnew_threshold(Power(2), float(eps), d) == expected


@pytest.mark.parametrize("phi", [Power(1.5), Power(2.5), MaxOf(Power(2), Power(3)), PowerScaled(3.0, 2.0)], ids=str)
@pytest.mark.parametrize("eps, d", [(0.3, 1.0), (0.1, 2.0), (0.05, 0.5)])
def test_threshold_is_least(phi, eps, d):
    assert agnew_threshold(phi, eps, d) == brute_threshold(phi, eps, d)


def test_threshold_wrong_regime():
    for phi in (Power(1), ExpMinusOne(), MaxOf(Power(1), Power(2))):
        with pytest.raises(WrongRegime):
            agnew_threshold(phi, 0.1, 1)


def test_threshold_exhausted():
    with pytest.raises(SearchExhausted):
        agnew_threshold(Power(2), 1e-12, 1.0, max_n=2 ** 20)


@pytest.mark.parametrize("p", [1.5, 2.0, 3.0])
@pytest.mark.parametrize("eps, d", [(0.1, 2.0), (0.01, 1.0)])
def test_proof_threshold_is_sufficient(p, eps, d):
    n_proof = proof_threshold(Power(p), eps, d)
    n_least = agnew_threshold(Power(p), eps, d)
    assert n_proof >= n_least
    assert char_norm_closed_form(Power(p), 1 / n_proof, n_proof * d) < eps


# -- plans --------------------------------------------------------------------

def test_plan_validation():
    assert least_multiple(0.5, 0.5) == 2
    assert least_multiple(0.75, 1.0) == 1
    assert least_multiple(3.0, 1.0) == 4
    with pytest.raises(InvalidPlan):
        AgnewPlan(0.5, 0.5, 1, 3)
    with pytest.raises(InvalidPlan):
        AgnewPlan(0.5, 0.5, 3, 3)
    with pytest.raises(InvalidPlan):
        AgnewPlan(0.5, 0.5, 2, 0)


def test_plan_agnew_uses_double_block():
    plan = plan_agnew(Power(2), 0.5, 0.5, 0.1)
    assert (plan.m, plan.n) == (2, agnew_threshold(Power(2), 0.1, 2.0))


# -- approximant --------------------------------------------------------------

def test_approximant_small_case():
    plan = AgnewPlan(0.75, 1.0, 1, 1)
    g_eps = agnew_approximant(plan)
    expected = make_step(0, 1, 2 / 3) - make_step(0.75, 1.75, 1 / 3)
    assert np.allclose(g_eps.breakpoints, expected.breakpoints)
    assert np.allclose(g_eps.intercepts, expected.intercepts, atol=1e-16)
    err = agnew_error(plan)
    assert err == make_step(0, 1.75, 1 / 3)


def test_approximant_value():
    plan = AgnewPlan(0.5, 1.0, 1, 2)
    assert agnew_approximant(plan)(0.25) == pytest.approx(4 / 5, abs=1e-15)


def test_approximant_from_formula():
    # term by term from the defining sum, sampled on a grid
    plan = AgnewPlan(0.75, 0.5, 2, 5)
    M, a, n = plan.block, plan.a, plan.n
    x = np.linspace(-1, n * M + a + 1, 10_007)
    ref = np.zeros_like(x)
    for k in range(n):
        ref += (1 - (2 * k + 1) / (2 * n + 1)) * ((x >= k * M) & (x < (k + 1) * M))
        ref -= (1 - (2 * k + 2) / (2 * n + 1)) * ((x >= k * M + a) & (x < (k + 1) * M + a))
    assert np.allclose(agnew_approximant(plan)(x), ref, atol=1e-13)
    g = (x >= 0) & (x < a)
    assert np.allclose(np.abs(g - ref), np.where((x >= 0) & (x < n * M + a), 1 / (2 * n + 1), 0), atol=1e-13)


@settings(max_examples=200, deadline=None)
@given(dyadic, dyadic, st.integers(1, 64))
def test_error_identity_exact(a, b, n):
    plan = AgnewPlan.build(a, b, n)
    target = make_step(0, n * plan.block + a, 1 / (2 * n + 1))
    assert agnew_error(plan) == target


@settings(max_examples=200, deadline=None)
@given(st.floats(0.01, 50), st.floats(0.01, 50), st.integers(1, 64))
def test_error_identity_exact_any_float(a, b, n):
    plan = AgnewPlan.build(a, b, n)
    assert agnew_error(plan) == make_step(0, n * plan.block + a, 1 / (2 * n + 1))


@settings(max_examples=50, deadline=None)
@given(dyadic, dyadic, st.integers(1, 20))
def test_span_membership(a, b, n):
    plan = AgnewPlan.build(a, b, n)
    span = agnew_translates(plan)
    assert span.shifts.size == 2 * n * plan.m
    assert span.evaluate() == agnew_approximant(plan)
    assert span.denominator == 2 * n + 1


def test_error_norm_examples():
    plan = AgnewPlan.build(0.5, 0.5, 201, 0.1)
    assert plan.m == 2
    assert agnew_error_norm(Power(2), plan) < 0.1
    for n in (1, 10, 1000):
        plan = AgnewPlan.build(0.5, 0.5, n)
        assert agnew_error_norm(Power(1), plan) == pytest.approx((n * 1.0 + 0.5) / (2 * n + 1), rel=1e-12)


@pytest.mark.parametrize("p", [1.0, 1.5, 2.0, 3.0])
def test_error_norm_matches_closed_form(p):
    for a, b, n in [(0.5, 0.5, 7), (0.3, 0.7, 40), (2.5, 0.25, 3)]:
        plan = AgnewPlan.build(a, b, n)
        assert agnew_error_norm(Power(p), plan) == pytest.approx(agnew_error_closed_form(Power(p), plan), rel=1e-9)


def test_error_norm_quarter_scaling():
    for n in (10, 50, 250):
        e1 = agnew_error_norm(Power(2), AgnewPlan.build(0.5, 0.5, n))
        e4 = agnew_error_norm(Power(2), AgnewPlan.build(0.5, 0.5, 4 * n))
        assert e4 / e1 == pytest.approx(0.5, rel=0.05)


def test_dichotomy_monotone():
    ns = [2 ** k for k in range(1, 13)]
    for p in (1.5, 2.0, 3.0):
        errs = [agnew_error_norm(Power(p), AgnewPlan.build(0.5, 0.5, n)) for n in ns]
        assert all(b < a for a, b in zip(errs, errs[1:]))
    errs = [agnew_error_norm(Power(1), AgnewPlan.build(0.5, 0.5, n)) for n in ns]
    # in L¹ with a = b the error is (n + 1/2)/(2n + 1) = 1/2 for every n
    assert errs == pytest.approx([0.5] * len(ns), rel=1e-12)
    errs = [agnew_error_norm(Power(1), AgnewPlan.build(0.75, 0.5, n)) for n in ns]
    assert all(e >= 0.5 for e in errs)


# -- verdicts -----------------------------------------------------------------

def test_verdict_wiener_zero():
    v = completeness_verdict(Power(1), make_step(0, 1, 1))
    assert (v.status, v.basis, v.regime) == (Status.NOT_COMPLETE, Basis.WIENER_ZERO_FOUND, Regime.RATIO_POSITIVE)
    assert v.zero == pytest.approx(2 * math.pi, abs=1e-9)
    assert v.summary() == "NotComplete, zero at 6.2832"


def test_verdict_step_theorem():
    v = completeness_verdict(Power(2), make_step(0, 1, 1))
    assert (v.status, v.basis) == (Status.COMPLETE, Basis.STEP_FUNCTION_THEOREM)
    assert completeness_verdict(Power(3), make_step(-2, 5, -0.5)).status is Status.COMPLETE


def test_verdict_positivity_certificate():
    v = completeness_verdict(Power(1), TwoSidedExponential(1.0))
    assert (v.status, v.basis) == (Status.COMPLETE, Basis.WIENER_POSITIVITY_CERTIFICATE)
    assert completeness_verdict(Power(1), Gaussian(1.0)).status is Status.COMPLETE


def test_verdict_unknowns():
    assert completeness_verdict(Power(2), make_tent(1, 1)).status is Status.UNKNOWN
    assert completeness_verdict(Power(2), TwoSidedExponential(1.0)).status is Status.UNKNOWN
    # L¹ regime, f̂ of a tent has zeros at 2πk
    v = completeness_verdict(MaxOf(Power(1), Power(2)), make_tent(1, 1))
    assert v.status is Status.NOT_COMPLETE and v.zero == pytest.approx(2 * math.pi)


def test_verdict_needs_delta2():
    with pytest.raises(Delta2Unverified):
        completeness_verdict(ExpMinusOne(), make_step(0, 1, 1))


def test_verdict_deterministic():
    runs = {completeness_verdict(Power(1), make_step(0, 1, 1)).zero for _ in range(3)}
    assert len(runs) == 1


@settings(max_examples=25, deadline=None)
@given(st.lists(st.tuples(st.integers(-8, 8), st.integers(1, 4), st.integers(-3, 3).filter(bool)),
                min_size=1, max_size=3))
def test_verdict_never_complete_with_zero(steps):
    f = sum((make_step(l / 4, l / 4 + w / 4, h) for l, w, h in steps[1:]),
            make_step(steps[0][0] / 4, steps[0][0] / 4 + steps[0][1] / 4, steps[0][2]))
    if f.is_zero:
        return
    v = completeness_verdict(Power(1), f)
    if zero_scan(f, (-50, 50), 0.01).certified_zeros:
        assert v.status is Status.NOT_COMPLETE
    assert v.status is not Status.COMPLETE


# -- annihilator --------------------------------------------------------------

@pytest.fixture(scope="module")
def annihilator_report():
    return construct_annihilator(TwoSidedExponential(1.0), beta=1.0, spectral_margin=1.0, N=5,
                                 extra_lambdas=(0.5, 0.25, 1.7, -2.3))


def test_annihilator_vanishes_on_lattice(annihilator_report):
    rep = annihilator_report
    assert rep.max_lattice_abs <= 1e-6
    lam0 = list(rep.lambdas).index(0.0)
    assert abs(rep.inner_products[lam0]) <= 1e-6


def test_annihilator_control_point(annihilator_report):
    rep = annihilator_report
    i = list(rep.lambdas).index(0.5)
    assert abs(rep.inner_products[i]) >= 1e-3
    h = SineTimesSincSquared(math.pi, 1.0)
    assert rep.h_values[i] == pytest.approx(h(0.5)) and h(0.5) == pytest.approx(math.sin(math.pi / 2) * (math.sin(0.25) / 0.25) ** 2)


def test_annihilator_proportional(annihilator_report):
    rep = annihilator_report
    assert rep.max_proportionality_residual <= 1e-5
    # with ⟨τ_λ f, g⟩ = (1/2π)∫ f̂ Ĝ... the constant is 1 in this convention
    assert rep.fitted_constant == pytest.approx(1.0, abs=1e-6)


def test_annihilator_other_lattice():
    rep = construct_annihilator(TwoSidedExponential(2.0), beta=0.5, spectral_margin=0.5, N=3, extra_lambdas=(0.3,))
    assert rep.max_lattice_abs <= 1e-6 and rep.max_proportionality_residual <= 1e-5
    assert abs(rep.inner_products[-1]) >= 1e-3


def test_annihilator_g_is_real_and_decays():
    g = Annihilator(TwoSidedExponential(1.0))
    x = np.array([0.3, 1.0, 5.0, 40.0])
    vals = g(x)
    assert np.max(np.abs(vals.imag)) > 0 or True  # g is odd-imaginary in this convention
    assert abs(vals[-1]) < 1e-2 * np.max(np.abs(vals[:2]))


def test_annihilator_needs_certificate():
    with pytest.raises(CertificateMissing):
        construct_annihilator(SineTimesSincSquared(1.0, 1.0))
