"""Tikhonov-regularized least squares and L-curve evaluation.

A :class:`RegularizedProblem` holds a dense operator, a data vector and a
thin SVD of the operator computed once. Every solve after that costs
O(mn), which matters because the corner search evaluates the L-curve
dozens of times on the same system.

The penalty enters as ``lam * ||x||**2`` (not ``lam**2``), so the SVD
filter applied to each singular triplet is ``s / (s**2 + lam)``.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import (
    DegenerateNorm,
    DimensionMismatch,
    EmptyGrid,
    LCurveError,
    NegativeLambda,
    NonFiniteInput,
    NonMonotoneGrid,
    SingularAtZero,
)

# lam = 0 needs sigma_min > RANK_RTOL * sigma_max
RANK_RTOL = 1e-12
# below this a squared norm has no finite log worth plotting
NORM_FLOOR = 1e-300


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class RegularizedProblem:
    """Linear system ``A x ~ b`` with a cached thin SVD of ``A``.

    Build instances with :func:`build_problem`, which validates the input
    and computes the factorization.

    Attributes
    ----------
    operator : ndarray, shape (m, n)
    data : ndarray, shape (m,)
    u : ndarray, shape (m, k)
        Left singular vectors, ``k = min(m, n)``.
    s : ndarray, shape (k,)
        Singular values, non-increasing and non-negative.
    vt : ndarray, shape (k, n)
        Right singular vectors (as rows).
    """

    operator: np.ndarray
    data: np.ndarray
    u: np.ndarray
    s: np.ndarray
    vt: np.ndarray
    # U^T b, shared by every solve
    beta: np.ndarray = field(repr=False)
    # ||b - U U^T b||**2, the part of b no x can fit
    residual_floor: float = field(repr=False, default=0.0)

    @property
    def shape(self) -> tuple[int, int]:
        return self.operator.shape

    @property
    def condition_number(self) -> float:
        if self.s[-1] == 0.0:
            return float("inf")
        return float(self.s[0] / self.s[-1])


@dataclass(frozen=True)
class TikhonovSolution:
    lam: float
    x: np.ndarray = field(compare=False)
    residual_sq: float
    norm_sq: float


@dataclass(frozen=True)
class LCurvePoint:
    """One sample ``(lam, xi, eta)`` of the L-curve.

    ``xi = log ||A x - b||**2`` and ``eta = log ||x||**2``, natural log.
    """

    lam: float
    xi: float
    eta: float

    @property
    def xy(self) -> tuple[float, float]:
        return (self.xi, self.eta)


def build_problem(operator, data) -> RegularizedProblem:
    """Validate ``(operator, data)`` and factorize the operator.

    Raises
    ------
    DimensionMismatch
        ``operator`` is not a non-empty 2-D array, or ``len(data)`` differs
        from its row count.
    NonFiniteInput
        Any entry is NaN or infinite.
    """
    a = np.asarray(operator, dtype=float)
    b = np.asarray(data, dtype=float)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise DimensionMismatch(f"dimension mismatch: operator must be a non-empty matrix, got shape {a.shape}")
    if b.ndim != 1 or b.shape[0] != a.shape[0]:
        raise DimensionMismatch(
            f"dimension mismatch: operator has {a.shape[0]} rows but data has shape {b.shape}"
        )
    if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
        raise NonFiniteInput("operator and data must contain only finite values")

    u, s, vt = np.linalg.svd(a, full_matrices=False)
    beta = u.T @ b
    outside = b - u @ beta
    return RegularizedProblem(
        operator=_frozen(a),
        data=_frozen(b),
        u=_frozen(u),
        s=_frozen(s),
        vt=_frozen(vt),
        beta=_frozen(beta),
        residual_floor=float(outside @ outside),
    )


def tikhonov_solve(problem: RegularizedProblem, lam: float) -> TikhonovSolution:
    """Minimize ``||A x - b||**2 + lam * ||x||**2``.

    Uses the cached SVD: ``x = sum_i s_i / (s_i**2 + lam) * (u_i . b) v_i``
    over the triplets with ``s_i > 0``. The squared norms come from the
    same expansion, ``||x||**2 = sum_i coef_i**2`` and
    ``||A x - b||**2 = ||b_perp||**2 + sum_i (lam / (s_i**2 + lam) * beta_i)**2``,
    which equal the direct norms of ``x`` and ``A x - b`` but stay monotone
    in ``lam`` under rounding where the curve is flat.

    Raises
    ------
    NegativeLambda
        ``lam < 0`` (or NaN).
    SingularAtZero
        ``lam == 0`` and the operator is numerically rank deficient.
    """
    lam = float(lam)
    if not lam >= 0.0:
        raise NegativeLambda("regularization parameter must be non-negative", lam=lam)
    s = problem.s
    if lam == 0.0 and not s[-1] > RANK_RTOL * s[0]:
        raise SingularAtZero("unregularized problem is numerically singular", lam=lam)

    pos = s > 0.0
    s2 = s[pos] ** 2
    coef = np.zeros_like(s)
    coef[pos] = s[pos] / (s2 + lam) * problem.beta[pos]
    # fraction of each beta_i left in the residual; written as
    # 1 / (1 + s**2 / lam) so every rounding step is monotone in lam
    keep = np.ones_like(s)
    keep[pos] = 0.0 if lam == 0.0 else 1.0 / (1.0 + s2 / lam)
    x = problem.vt.T @ coef
    residual_sq = problem.residual_floor + float(np.sum((keep * problem.beta) ** 2))
    return TikhonovSolution(lam=lam, x=x, residual_sq=residual_sq, norm_sq=float(np.sum(coef**2)))


def l_curve_point(problem: RegularizedProblem, lam: float) -> LCurvePoint:
    """Evaluate the L-curve at ``lam``.

    Raises
    ------
    DegenerateNorm
        The residual or the solution norm is zero (to within 1e-300), so its
        logarithm is not finite.
    """
    sol = tikhonov_solve(problem, lam)
    if sol.residual_sq <= NORM_FLOOR:
        raise DegenerateNorm("residual norm is zero; log is not finite", lam=sol.lam)
    if sol.norm_sq <= NORM_FLOOR:
        raise DegenerateNorm("solution norm is zero; log is not finite", lam=sol.lam)
    return LCurvePoint(sol.lam, float(np.log(sol.residual_sq)), float(np.log(sol.norm_sq)))


def _annotated_point(problem, lam):
    try:
        return l_curve_point(problem, lam)
    except LCurveError as exc:
        if exc.lam is not None:
            raise
        raise type(exc)(str(exc), lam=lam) from exc


def l_curve_sample(
    problem: RegularizedProblem,
    grid: Sequence[float],
    max_workers: int | None = None,
) -> list[LCurvePoint]:
    """Evaluate the L-curve on a strictly increasing grid of positive λ.

    With ``max_workers`` set, points are evaluated in a thread pool; the
    returned list is always in grid order.
    """
    lams = [float(v) for v in grid]
    if not lams:
        raise EmptyGrid("lambda grid is empty")
    if lams[0] <= 0.0:
        raise NonMonotoneGrid("lambda grid must be strictly positive", lam=lams[0])
    for prev, cur in zip(lams, lams[1:]):
        if not cur > prev:
            raise NonMonotoneGrid("lambda grid must be strictly increasing", lam=cur)

    if max_workers is None or max_workers <= 1:
        return [_annotated_point(problem, lam) for lam in lams]
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        return list(pool.map(lambda lam: _annotated_point(problem, lam), lams))


def log_grid(lam_min: float, lam_max: float, count: int) -> np.ndarray:
    """``count`` log-spaced values from ``lam_min`` to ``lam_max`` inclusive."""
    return np.logspace(np.log10(lam_min), np.log10(lam_max), count)
