"""L-curve corner search.

The corner is the point of maximum positive curvature of the L-curve.
Curvature is estimated from three sampled points as the signed inverse
circumradius (Menger curvature). A golden-section bracket of four λ values
is narrowed around the corner, and each step re-evaluates only one L-curve
point. While the right-hand curvature is not positive, the upper end of the
bracket is pulled in.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Sequence

import numpy as np

from .errors import (
    DegeneratePoints,
    IntervalCollapse,
    InvalidConfig,
    InvalidInterval,
    MaxIterationsExceeded,
    NonMonotoneGrid,
    NoPositiveCurvature,
    TooFewPoints,
)
from .lcurve import LCurvePoint, RegularizedProblem, l_curve_point

PHI = (1.0 + math.sqrt(5.0)) / 2.0

# squared distance below which two L-curve points count as coincident
POINT_TOL = 1e-30


class Scale(str, Enum):
    LINEAR = "linear"
    LOG = "log"


class Branch(str, Enum):
    SHRINK = "shrink_negative_c3"
    MOVE_LEFT = "move_left"
    MOVE_RIGHT = "move_right"


@dataclass(frozen=True)
class CornerSearchConfig:
    """Search settings.

    ``scale`` picks the coordinate the golden-section points are placed in:
    raw λ (``linear``) or ``log10(λ)`` (``log``). The stopping rule
    ``(λ4 - λ1) / λ4 < epsilon`` is always evaluated on raw λ.
    """

    lambda_lo: float = 1e-10
    lambda_hi: float = 1e-3
    epsilon: float = 0.01
    scale: Scale = Scale.LOG
    max_iterations: int = 100

    def __post_init__(self):
        object.__setattr__(self, "lambda_lo", float(self.lambda_lo))
        object.__setattr__(self, "lambda_hi", float(self.lambda_hi))
        object.__setattr__(self, "epsilon", float(self.epsilon))
        try:
            object.__setattr__(self, "scale", Scale(self.scale))
        except ValueError:
            raise InvalidConfig(f"unknown scale {self.scale!r}") from None
        _check_interval(self.lambda_lo, self.lambda_hi)
        if not 0.0 < self.epsilon < 1.0:
            raise InvalidConfig(f"epsilon must lie in (0, 1), got {self.epsilon!r}")
        if int(self.max_iterations) != self.max_iterations or self.max_iterations < 4:
            raise InvalidConfig(f"max_iterations must be an integer >= 4, got {self.max_iterations!r}")
        object.__setattr__(self, "max_iterations", int(self.max_iterations))


@dataclass(frozen=True)
class IterationRecord:
    """Snapshot of the bracket after one step.

    ``c2`` and ``c3`` are the curvatures of this record's own quadruple.
    ``branch`` and ``new_point`` describe the step that produced it and are
    ``None`` on the initial record.
    """

    index: int
    lambdas: tuple[float, float, float, float]
    c2: float
    c3: float
    branch: Branch | None = None
    new_point: LCurvePoint | None = None

    @property
    def width(self) -> float:
        return self.lambdas[3] - self.lambdas[0]


@dataclass(frozen=True)
class CornerResult:
    lambda_opt: float
    corner_point: LCurvePoint
    trace: list[IterationRecord]
    evaluations: int
    # every provider result, in call order
    points: list[LCurvePoint] = field(repr=False)
    # final bracket still shares an end with the initial one; the corner
    # may lie outside [lambda_lo, lambda_hi]
    at_boundary: bool = False

    @property
    def iterations(self) -> int:
        return len(self.trace) - 1


def _check_interval(lo, hi):
    if not (math.isfinite(lo) and math.isfinite(hi) and 0.0 < lo < hi):
        raise InvalidInterval(f"invalid interval: need 0 < lambda_lo < lambda_hi, got [{lo!r}, {hi!r}]")


def _xy(p) -> tuple[float, float]:
    if isinstance(p, LCurvePoint):
        return p.xi, p.eta
    x, y = p
    return float(x), float(y)


def menger_curvature(pj, pk, pl) -> float:
    """Signed curvature of the circle through three L-curve points.

    Parameters
    ----------
    pj, pk, pl : LCurvePoint or (xi, eta) pair
        Points in order of increasing λ. Only the plane coordinates are used.

    Returns
    -------
    float
        ``+1/R`` when the points turn counterclockwise, ``-1/R`` when they
        turn clockwise, 0 when collinear.
    """
    xj, yj = _xy(pj)
    xk, yk = _xy(pk)
    xl, yl = _xy(pl)
    d_jk = (xk - xj) ** 2 + (yk - yj) ** 2
    d_kl = (xl - xk) ** 2 + (yl - yk) ** 2
    d_lj = (xj - xl) ** 2 + (yj - yl) ** 2
    if min(d_jk, d_kl, d_lj) <= POINT_TOL:
        raise DegeneratePoints("two of the three L-curve points coincide")
    # the expanded six-term determinant, rewritten relative to the middle
    # point; swapping pj and pl then negates it bit for bit
    det = (xl - xk) * (yj - yk) - (xj - xk) * (yl - yk)
    return 2.0 * det / (math.sqrt(d_jk) * math.sqrt(d_kl) * math.sqrt(d_lj))


def menger_profile(xi, eta) -> np.ndarray:
    """Curvature of every consecutive triple of a polyline.

    Vectorized counterpart of :func:`menger_curvature`; element ``i`` belongs
    to the triple centred on vertex ``i + 1``.
    """
    xi = np.asarray(xi, dtype=float)
    eta = np.asarray(eta, dtype=float)
    xj, xk, xl = xi[:-2], xi[1:-1], xi[2:]
    yj, yk, yl = eta[:-2], eta[1:-1], eta[2:]
    d_jk = (xk - xj) ** 2 + (yk - yj) ** 2
    d_kl = (xl - xk) ** 2 + (yl - yk) ** 2
    d_lj = (xj - xl) ** 2 + (yj - yl) ** 2
    if np.any(np.minimum(np.minimum(d_jk, d_kl), d_lj) <= POINT_TOL):
        raise DegeneratePoints("consecutive L-curve points coincide")
    det = (xl - xk) * (yj - yk) - (xj - xk) * (yl - yk)
    return 2.0 * det / (np.sqrt(d_jk) * np.sqrt(d_kl) * np.sqrt(d_lj))


def _coords(scale: Scale) -> tuple[Callable[[float], float], Callable[[float], float]]:
    if scale is Scale.LOG:
        return math.log10, lambda x: 10.0**x
    return float, float


def _lower_probe(x1: float, x4: float) -> float:
    return (x4 + PHI * x1) / (1.0 + PHI)


def golden_section_init(lambda_lo: float, lambda_hi: float, scale: Scale | str = Scale.LINEAR):
    """Place the two interior golden-section points in ``(lambda_lo, lambda_hi)``.

    Returns ``(lambda2, lambda3)`` with
    ``x2 = (x4 + phi*x1) / (1 + phi)`` and ``x3 = x1 + (x4 - x2)``, where
    ``x`` is λ itself or ``log10(λ)`` depending on ``scale``.
    """
    _check_interval(lambda_lo, lambda_hi)
    fwd, inv = _coords(Scale(scale))
    x1, x4 = fwd(lambda_lo), fwd(lambda_hi)
    x2 = _lower_probe(x1, x4)
    x3 = x1 + (x4 - x2)
    return inv(x2), inv(x3)


Provider = Callable[[float], "LCurvePoint | tuple[float, float]"]


class _Bracket:
    """Four λ values with their coordinates and L-curve points."""

    def __init__(self, provider, scale, lo, hi, max_steps):
        self._provider = provider
        self._fwd, self._inv = _coords(scale)
        self.points: list[LCurvePoint] = []
        self.max_steps = max_steps
        x1, x4 = self._fwd(lo), self._fwd(hi)
        x2 = _lower_probe(x1, x4)
        x3 = x1 + (x4 - x2)
        self.x = [x1, x2, x3, x4]
        # the ends keep their exact input values
        self.lam = [lo, self._inv(x2), self._inv(x3), hi]
        self.p = [self._evaluate(v) for v in self.lam]
        self._update_curvatures()
        self.trace = [IterationRecord(1, tuple(self.lam), self.c2, self.c3)]

    def _evaluate(self, lam: float) -> LCurvePoint:
        p = self._provider(lam)
        if not isinstance(p, LCurvePoint):
            xi, eta = p
            p = LCurvePoint(lam, float(xi), float(eta))
        self.points.append(p)
        return p

    def _update_curvatures(self):
        p = self.p
        self.c2 = menger_curvature(p[0], p[1], p[2])
        self.c3 = menger_curvature(p[1], p[2], p[3])

    def converged(self, epsilon: float) -> bool:
        return (self.lam[3] - self.lam[0]) / self.lam[3] < epsilon

    def step(self, branch: Branch) -> None:
        if len(self.trace) - 1 >= self.max_steps:
            raise MaxIterationsExceeded(
                f"no convergence within {self.max_steps} iterations; "
                f"bracket is [{self.lam[0]!r}, {self.lam[3]!r}]"
            )
        x, lam, p = self.x, self.lam, self.p
        old_width = lam[3] - lam[0]
        if branch is Branch.MOVE_RIGHT:
            x[0], lam[0], p[0] = x[1], lam[1], p[1]
            x[1], lam[1], p[1] = x[2], lam[2], p[2]
            x[2] = x[0] + (x[3] - x[1])
            lam[2] = self._inv(x[2])
            slot = 2
        else:
            x[3], lam[3], p[3] = x[2], lam[2], p[2]
            x[2], lam[2], p[2] = x[1], lam[1], p[1]
            x[1] = _lower_probe(x[0], x[3])
            lam[1] = self._inv(x[1])
            slot = 1
        if not (lam[0] < lam[1] < lam[2] < lam[3]) or not (lam[3] - lam[0] < old_width):
            raise IntervalCollapse(f"bracket collapsed in floating point: {tuple(lam)!r}")
        p[slot] = self._evaluate(lam[slot])
        self._update_curvatures()
        self.trace.append(
            IterationRecord(len(self.trace) + 1, tuple(lam), self.c2, self.c3, branch, p[slot])
        )


def corner_search(provider: Provider, config: CornerSearchConfig | None = None) -> CornerResult:
    """Locate the L-curve corner by golden-section search on curvature.

    Parameters
    ----------
    provider : callable
        Maps λ to its L-curve point, either an :class:`LCurvePoint` or an
        ``(xi, eta)`` pair.
    config : CornerSearchConfig, optional

    Returns
    -------
    CornerResult
        ``lambda_opt`` is the interior probe picked by the last comparison.
        ``trace`` holds the initial bracket followed by one record per
        provider call.

    Raises
    ------
    MaxIterationsExceeded
        More than ``config.max_iterations`` steps were needed.
    IntervalCollapse
        The bracket stopped shrinking in floating point before the stopping
        rule was met.
    """
    cfg = config if config is not None else CornerSearchConfig()
    br = _Bracket(provider, cfg.scale, cfg.lambda_lo, cfg.lambda_hi, cfg.max_iterations)

    if br.c2 >= br.c3:
        lam_opt, opt_point = br.lam[1], br.p[1]
    else:
        lam_opt, opt_point = br.lam[2], br.p[2]

    while not br.converged(cfg.epsilon):
        while br.c3 <= 0.0:
            br.step(Branch.SHRINK)
        if br.c2 > br.c3:
            lam_opt, opt_point = br.lam[1], br.p[1]
            br.step(Branch.MOVE_LEFT)
        else:
            lam_opt, opt_point = br.lam[2], br.p[2]
            br.step(Branch.MOVE_RIGHT)

    return CornerResult(
        lambda_opt=lam_opt,
        corner_point=opt_point,
        trace=br.trace,
        evaluations=len(br.points),
        points=br.points,
        at_boundary=br.lam[0] == cfg.lambda_lo or br.lam[3] == cfg.lambda_hi,
    )


def find_corner(problem: RegularizedProblem, config: CornerSearchConfig | None = None) -> CornerResult:
    """Run :func:`corner_search` on the Tikhonov L-curve of ``problem``."""
    return corner_search(lambda lam: l_curve_point(problem, lam), config)


def dense_corner_oracle(points: Sequence[LCurvePoint]) -> tuple[float, np.ndarray]:
    """Brute-force corner: argmax of the curvature over a sampled L-curve.

    Returns ``(lambda_star, profile)``. ``profile[i]`` is the curvature of
    the triple centred on ``points[i]``; the two ends are NaN.
    """
    if len(points) < 3:
        raise TooFewPoints(f"need at least 3 L-curve points, got {len(points)}")
    lams = np.array([p.lam for p in points])
    if np.any(np.diff(lams) <= 0):
        raise NonMonotoneGrid("points must be ordered by strictly increasing lambda")
    inner = menger_profile([p.xi for p in points], [p.eta for p in points])
    profile = np.full(len(points), np.nan)
    profile[1:-1] = inner
    i = int(np.argmax(inner))
    if not inner[i] > 0.0:
        raise NoPositiveCurvature("no consecutive triple has positive curvature")
    return float(lams[i + 1]), profile
