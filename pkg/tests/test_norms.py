import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import optimize

from conftest import piecewise_functions, random_piecewise
from orliczlab.errors import ModularNeverReachesOne
from orliczlab.orlicz import ExpMinusOne, LinearJump, MaxOf, Power, PowerScaled, Tabulated
from orliczlab.norms import (
    char_norm_closed_form,
    holder_check,
    luxemburg_norm,
    modular,
    orlicz_norm_amemiya,
)
from orliczlab.piecewise import ZERO, integrate_abs_phi, make_step, make_tent


def lp_norm(f, p):
    return integrate_abs_phi(Power(p), f) ** (1.0 / p)


# -- Luxemburg ----------------------------------------------------------------

def test_luxemburg_examples():
    assert luxemburg_norm(Power(2), make_step(0, 4, 0.25)).value == pytest.approx(0.5, rel=1e-12)
    assert luxemburg_norm(ExpMinusOne(), ZERO).value == 0
    for p in (1, 2, 3):
        assert luxemburg_norm(Power(p), make_step(0, 1, 1)).value == pytest.approx(1.0, rel=1e-12)


@pytest.mark.parametrize("p", [1.0, 1.5, 2.0, 3.0, 4.5])
def test_luxemburg_is_lp_norm(p):
    rng = np.random.default_rng(int(p * 10))
    for _ in range(15):
        f = random_piecewise(rng)
        assert luxemburg_norm(Power(p), f).value == pytest.approx(lp_norm(f, p), rel=1e-9)


@pytest.mark.parametrize("phi", [Power(1.5), ExpMinusOne(), MaxOf(Power(1), Power(3)), PowerScaled(2.0, 2.0),
                                 Tabulated((0.0, 1.0, 2.0), (0.0, 0.5, 2.0))], ids=str)
def test_modular_unit(phi):
    rng = np.random.default_rng(3)
    for _ in range(10):
        f = random_piecewise(rng)
        res = luxemburg_norm(phi, f)
        assert res.residual <= 1e-9
        assert modular(phi, f, res.value) == pytest.approx(1.0, abs=1e-8)


def test_luxemburg_with_jump():
    # Φ = 0 up to 1 then ∞: the norm is the sup norm, the modular skips from ∞ to 0
    res = luxemburg_norm(LinearJump(1.0), make_step(0, 3, 2.0) + make_step(1, 2, 1.0))
    assert res.value == pytest.approx(3.0, rel=1e-12)
    assert res.modular_right == 0 and math.isinf(res.modular_left)


def test_luxemburg_degenerate():
    with pytest.raises(ModularNeverReachesOne):
        luxemburg_norm(LinearJump(1e300), make_step(0, 1, 1e300), max_iter=20)


@settings(max_examples=40, deadline=None)
@given(piecewise_functions(), st.floats(-5, 5).filter(lambda t: abs(t) > 1e-3),
       st.sampled_from([Power(1.5), Power(3), ExpMinusOne()]))
def test_homogeneity(f, lam, phi):
    if f.is_zero:
        return
    a = luxemburg_norm(phi, f).value
    b = luxemburg_norm(phi, lam * f).value
    assert b == pytest.approx(abs(lam) * a, rel=1e-9)


@settings(max_examples=40, deadline=None)
@given(piecewise_functions(), piecewise_functions(), st.sampled_from([Power(1.5), Power(2), ExpMinusOne()]))
def test_triangle(f, g, phi):
    lhs = luxemburg_norm(phi, f + g).value
    assert lhs <= (luxemburg_norm(phi, f).value + luxemburg_norm(phi, g).value) * (1 + 1e-9) + 1e-300


# -- closed form --------------------------------------------------------------

def test_char_norm_examples():
    assert char_norm_closed_form(Power(2), 0.25, 4) == 0.5
    assert char_norm_closed_form(Power(1), 1, 1) == 1
    assert char_norm_closed_form(Power(2), 1, 1) == 1


def test_char_norm_matches_bisection():
    rng = np.random.default_rng(17)
    for _ in range(50):
        p = float(rng.uniform(1, 4))
        c = float(rng.uniform(0.01, 10))
        meas = float(rng.uniform(0.01, 50))
        f = make_step(0, meas, c)
        assert luxemburg_norm(Power(p), f).value == pytest.approx(char_norm_closed_form(Power(p), c, meas), rel=1e-8)


def test_char_norm_expm1():
    f = make_step(-1, 2, 0.7)
    assert luxemburg_norm(ExpMinusOne(), f).value == pytest.approx(0.7 / math.log1p(1 / 3), rel=1e-9)


# -- Amemiya ------------------------------------------------------------------

def amemiya_oracle(phi, f):
    obj = lambda logk: math.exp(-logk) * (1 + integrate_abs_phi(phi, f * math.exp(logk)))
    r = optimize.minimize_scalar(obj, bounds=(-20, 20), method="bounded", options={"xatol": 1e-12})
    return r.fun


def test_amemiya_examples():
    assert orlicz_norm_amemiya(Power(2), make_step(0, 1, 1)).value == pytest.approx(2.0, abs=1e-9)
    assert orlicz_norm_amemiya(Power(2), make_step(0, 4, 0.25)).value == pytest.approx(1.0, abs=1e-9)
    assert orlicz_norm_amemiya(ExpMinusOne(), ZERO).value == 0


def test_amemiya_linear_phi():
    # Φ = x: objective is 1/k + ∫|f|, infimum ‖f‖₁ approached as k → ∞
    f = make_tent(1, 2)
    assert orlicz_norm_amemiya(Power(1), f).value == pytest.approx(4.0, rel=1e-9)


@pytest.mark.parametrize("phi", [Power(1.5), Power(2), Power(3), ExpMinusOne()], ids=str)
def test_amemiya_against_scipy(phi):
    rng = np.random.default_rng(8)
    for _ in range(8):
        f = random_piecewise(rng)
        assert orlicz_norm_amemiya(phi, f).value == pytest.approx(amemiya_oracle(phi, f), rel=1e-8)


@pytest.mark.parametrize("p", [1.5, 2.0, 3.0])
def test_norm_equivalence(p):
    rng = np.random.default_rng(int(p * 100))
    phi = Power(p)
    for _ in range(50):
        f = random_piecewise(rng)
        lux = luxemburg_norm(phi, f).value
        am = orlicz_norm_amemiya(phi, f).value
        assert lux <= am * (1 + 1e-9) and am <= 2 * lux * (1 + 1e-9)


# -- Hölder -------------------------------------------------------------------

def test_holder_examples():
    chi = make_step(0, 1, 1)
    rep = holder_check(Power(2), chi, chi)
    assert rep.lhs == 1 and rep.rhs == pytest.approx(1.0, rel=1e-12) and rep.holds
    assert rep.norm_g_conjugate == pytest.approx(0.5, rel=1e-12)
    assert holder_check(Power(2), ZERO, chi).lhs == 0
    rep = holder_check(Power(2), chi, make_step(2, 3, 1))
    assert rep.lhs == 0 and rep.rhs == pytest.approx(1.0) and rep.holds


@settings(max_examples=30, deadline=None)
@given(piecewise_functions(), piecewise_functions(), st.sampled_from([Power(1.5), Power(2), Power(3)]))
def test_holder_holds(f, g, phi):
    assert holder_check(phi, f, g).holds
