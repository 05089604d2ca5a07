"""Orlicz spaces on the line: norms, conjugates, and completeness of translates."""

__version__ = "0.1.0"

from .errors import OrliczLabError
from .kernels import BACKEND
from .orlicz import (
    ExpConjugate,
    ExpMinusOne,
    GridSpec,
    LinearJump,
    MaxOf,
    Mode,
    Power,
    PowerScaled,
    Tabulated,
    check_delta2,
    conjugate,
    embedding_verdict,
    inverse,
    limit_ratio_at_zero,
    majorizes,
    young_gap,
)
from .piecewise import PiecewiseFunction, fourier_eval, linear_combine, make_step, make_tent, zero_scan
from .catalog import Gaussian, SineTimesSincSquared, TwoSidedExponential
from .norms import char_norm_closed_form, holder_check, luxemburg_norm, orlicz_norm_amemiya
from .completeness import (
    AgnewPlan,
    agnew_approximant,
    agnew_error,
    agnew_error_norm,
    agnew_threshold,
    completeness_verdict,
    construct_annihilator,
    plan_agnew,
)
from .density import (
    Dyadic,
    ExplicitFinite,
    Lattice,
    PerturbedLattice,
    SqrtLattice,
    Squares,
    bm_classify,
    bm_lower_bound,
    discrete_translates_verdict,
    substantial_check,
)
from .descriptors import describe, parse_function, parse_orlicz, parse_set
