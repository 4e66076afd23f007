"""Tikhonov regularization parameter selection by L-curve corner search."""

from .corner import (
    PHI,
    Branch,
    CornerResult,
    CornerSearchConfig,
    IterationRecord,
    Scale,
    corner_search,
    dense_corner_oracle,
    find_corner,
    golden_section_init,
    menger_curvature,
    menger_profile,
)
from .errors import *  # noqa: F401,F403
from .formats import TraceDocument
from .lcurve import (
    LCurvePoint,
    RegularizedProblem,
    TikhonovSolution,
    build_problem,
    l_curve_point,
    l_curve_sample,
    log_grid,
    tikhonov_solve,
)
from .problems import TestProblem, add_noise, default_battery, make_smoothing_problem, make_test_problem

__version__ = "0.1.0"
