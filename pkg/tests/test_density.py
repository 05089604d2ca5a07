import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from orliczlab.completeness import Regime
from orliczlab.density import (
    DensityKind,
    Dyadic,
    Existence,
    ExplicitFinite,
    ExplicitIntervals,
    Lattice,
    PerturbedLattice,
    SqrtLattice,
    SquareOffsets,
    Squares,
    bm_classify,
    bm_lower_bound,
    discrete_translates_verdict,
    substantial_check,
    tail_bounds,
)
from orliczlab.errors import Delta2Unverified, MalformedSequence, NotSubstantial
from orliczlab.orlicz import ExpMinusOne, MaxOf, Power

ALL_SETS = [Lattice(1.0), Lattice(0.3), Lattice(2.5), SqrtLattice(), Squares(),
            ExplicitFinite((0.0, 1.3, 7.0, -2.0)), PerturbedLattice(0.5, 3)]

bounds = st.floats(-60, 60, allow_nan=False).map(lambda v: round(v, 2))


# -- counting -----------------------------------------------------------------

@pytest.mark.parametrize("dset", ALL_SETS, ids=repr)
@settings(max_examples=60, deadline=None)
@given(l=bounds, r=bounds)
def test_count_matches_points(dset, l, r):
    pts = dset.points(l, r)
    assert dset.count(l, r) == len(pts)
    assert np.all((pts >= l) & (pts < r))
    assert np.all(np.diff(pts) > 0)


@pytest.mark.parametrize("dset", ALL_SETS, ids=repr)
@settings(max_examples=40, deadline=None)
@given(a=bounds, b=bounds, c=bounds)
def test_count_additive(dset, a, b, c):
    a, b, c = sorted((a, b, c))
    assert dset.count(a, c) == dset.count(a, b) + dset.count(b, c)


def test_count_examples():
    assert Lattice(1.0).count(2, 4) == 2
    assert Lattice(1.0).count(-3, 3) == 6
    assert Lattice(0.3).count(0, 0.85) == 3
    # α is 3/10 but the float bound 0.9 sits just above 9/10
    assert Lattice(0.3).count(0, 0.9) == 4
    assert SqrtLattice().count(2, 4) == 12
    assert SqrtLattice().count(2 ** 10, 2 ** 11) == 3 * 4 ** 10
    assert Squares().count(-10, 10) == 7
    assert Squares().count(2 ** 20, 2 ** 21) == math.isqrt(2 ** 21 - 1) - math.isqrt(2 ** 20 - 1)
    assert ExplicitFinite((0, 1.3, 7)).count(0, 7) == 2
    assert Lattice(1.0).count(5, 5) == 0


def test_dyadic_counts_exact():
    for k in range(1, 40):
        lo, hi = 2 ** k, 2 ** (k + 1)
        assert Lattice(1.0).count(lo, hi) == 2 ** k
        assert SqrtLattice().count(lo, hi) == 3 * 4 ** k


@settings(max_examples=100, deadline=None)
@given(st.floats(0.01, 0.99), st.integers(0, 2 ** 31), st.integers(-500, 500))
def test_perturbation_bound(gamma, seed, n):
    p = PerturbedLattice(gamma, seed)
    r = p.perturbation(n)
    assert 0 < abs(r) <= gamma ** abs(n) or (r == 0 and gamma ** abs(n) < 1e-300)
    assert p.log_abs_perturbation(n) <= abs(n) * math.log(gamma) + 1e-12
    assert p.perturbation(n) == r  # depends on (seed, n) only


def test_perturbed_count_near_integers():
    p = PerturbedLattice(0.9, 11)
    for n in range(-30, 30):
        x = p.point(n)
        assert p.count(x, x + 1e-9) == 1
        assert p.count(x - 1e-9, x) == 0


# -- substantial sequences ----------------------------------------------------

def test_substantial_dyadic():
    rep = substantial_check(Dyadic(1), 25)
    assert rep.partial_sum == 25 and rep.substantial
    assert all(t == 1 for t in rep.terms)
    rep = substantial_check(Dyadic(3, side=-1), 5)
    assert rep.partial_sum == 5 and rep.substantial


def test_square_offsets_not_substantial():
    rep = substantial_check(SquareOffsets(), 1000)
    exact = sum((2 / j ** 2) ** 2 for j in range(1, 1001))
    assert rep.partial_sum == pytest.approx(exact, rel=1e-12)
    assert rep.partial_sum < 4 * math.pi ** 4 / 90 and not rep.substantial
    with pytest.raises(NotSubstantial):
        bm_lower_bound(Lattice(1.0), SquareOffsets(), 10)


def test_malformed_examples():
    with pytest.raises(MalformedSequence, match="length"):
        substantial_check(ExplicitIntervals(((1.5, 2.0),)), 1)
    with pytest.raises(MalformedSequence, match="straddles"):
        substantial_check(ExplicitIntervals(((-1.0, 3.0),)), 1)
    with pytest.raises(MalformedSequence, match="other half-axis"):
        substantial_check(ExplicitIntervals(((2.0, 4.0), (-4.0, -2.0))), 2)
    with pytest.raises(MalformedSequence, match="overlap"):
        substantial_check(ExplicitIntervals(((2.0, 5.0), (4.0, 8.0))), 2)
    with pytest.raises(ValueError):
        substantial_check(Dyadic(), 0)


@st.composite
def malformed(draw):
    n = draw(st.integers(2, 8))
    starts = sorted(draw(st.lists(st.floats(0, 1000), min_size=n, max_size=n, unique=True)))
    # well-formed first, then break one interval
    ivs = [(10.0 * k, 10.0 * k + 1.5 + (s % 7)) for k, s in enumerate(starts)]
    i = draw(st.integers(0, n - 1))
    lo = ivs[i][0]
    if draw(st.booleans()):
        ivs[i] = (lo, lo + draw(st.floats(0.0, 1.0)))
    else:
        jlo = ivs[(i + 1) % n][0]
        ivs[i] = (jlo + 0.25, jlo + 2.0)
    return ExplicitIntervals(tuple(ivs))


@settings(max_examples=200, deadline=None)
@given(malformed())
def test_malformed_rejected(seq):
    with pytest.raises(MalformedSequence):
        substantial_check(seq, len(seq.intervals))


# -- lower bounds -------------------------------------------------------------

def test_lattice_bound_examples():
    assert bm_lower_bound(Lattice(1.0), Dyadic(1), 12) == 1.0
    for k0 in (10, 15):
        assert bm_lower_bound(Lattice(1.0), Dyadic(k0), 8) >= 0.999
    assert bm_lower_bound(ExplicitFinite((0, 1.3, 7)), Dyadic(3), 5) == 0
    assert bm_lower_bound(Squares(), Dyadic(20), 3) < 1e-3


@pytest.mark.parametrize("alpha", [0.5, 1.0, 2.0])
def test_lattice_bound_near_inverse_alpha(alpha):
    tb = tail_bounds(Lattice(alpha), 20)
    assert np.all(np.abs(tb[11:] - 1 / alpha) <= 0.01 / alpha)


@pytest.mark.parametrize("alpha", [0.3, 0.7, 1.5, 3.0])
def test_lattice_bound_other_alpha(alpha):
    tb = tail_bounds(Lattice(alpha), 24)
    assert abs(tb[-1] - 1 / alpha) <= 0.01 / alpha
    assert np.all(tb <= 1 / alpha + 1 / 2)  # a dyadic interval holds at most |I|/α + 1 points


def test_sqrt_bound_grows():
    tb = tail_bounds(SqrtLattice(), 20)
    assert np.array_equal(tb, 3.0 * 2.0 ** np.arange(1, 21))
    assert tb[-1] > 1e3
    # the prefix minimum over an un-shifted sequence is pinned by its first interval
    assert bm_lower_bound(SqrtLattice(), Dyadic(1), 20) == 6.0


def test_perturbed_bound():
    tb = tail_bounds(PerturbedLattice(0.5, 0), 20)
    assert np.all(np.abs(tb - 1) <= 2.0 ** -np.arange(1, 21) + 1e-15)


def test_bound_monotone_under_inclusion():
    # Lattice(1) ⊆ Lattice(1/2) ⊆ Lattice(1/4): counts and so bounds increase
    chain = [Lattice(1.0), Lattice(0.5), Lattice(0.25)]
    tbs = [tail_bounds(d, 12) for d in chain]
    assert np.all(tbs[0] <= tbs[1]) and np.all(tbs[1] <= tbs[2])
    small, big = ExplicitFinite((3.0, 5.0)), ExplicitFinite((3.0, 4.0, 5.0, 9.0))
    assert np.all(tail_bounds(small, 6) <= tail_bounds(big, 6))


# -- classification and verdicts ----------------------------------------------

def test_classify():
    c = bm_classify(Lattice(1.0))
    assert c.kind is DensityKind.FINITE and c.value == 1
    assert bm_classify(ExplicitFinite((0, 1.3, 7))).kind is DensityKind.ZERO
    assert bm_classify(Squares()).kind is DensityKind.ZERO
    assert bm_classify(SqrtLattice()).kind is DensityKind.INFINITE
    assert bm_classify(PerturbedLattice(0.5)).value == 1


@pytest.mark.parametrize("alpha, expected", [(0.5, Fraction(2)), (0.3, Fraction(10, 3)), (2.5, Fraction(2, 5)),
                                             (0.125, Fraction(8))])
def test_classify_scaling(alpha, expected):
    assert bm_classify(Lattice(alpha)).value == expected


def test_verdict_examples():
    v = discrete_translates_verdict(Power(1), Lattice(1.0))
    assert v.status is Existence.NOT_EXISTS and v.regime is Regime.RATIO_POSITIVE
    assert v.summary() == "NotExists, D_BM finite (1)"
    assert discrete_translates_verdict(Power(1), SqrtLattice()).status is Existence.EXISTS
    v = discrete_translates_verdict(Power(2), PerturbedLattice(0.5))
    assert v.status is Existence.EXISTS and v.regime is Regime.RATIO_ZERO
    assert discrete_translates_verdict(Power(2), Lattice(1.0)).status is Existence.UNKNOWN
    assert discrete_translates_verdict(Power(2), SqrtLattice()).status is Existence.EXISTS
    assert discrete_translates_verdict(MaxOf(Power(1), Power(2)), Squares()).status is Existence.NOT_EXISTS


def test_verdict_needs_delta2():
    with pytest.raises(Delta2Unverified):
        discrete_translates_verdict(ExpMinusOne(), Lattice(1.0))


def test_verdict_monotone():
    # along Lattice(1) ⊆ Lattice(1/2) ⊆ ... ⊆ SqrtLattice-type refinements, Exists never turns into NotExists
    rank = {Existence.NOT_EXISTS: 0, Existence.UNKNOWN: 1, Existence.EXISTS: 2}
    for phi in (Power(1), Power(1.5)):
        chain = [ExplicitFinite((1.0, 2.0)), Lattice(1.0), Lattice(0.5), SqrtLattice()]
        ranks = [rank[discrete_translates_verdict(phi, d).status] for d in chain]
        assert ranks == sorted(ranks)
