"""Seeded synthetic ill-posed problems with known ground truth.

The operator is a midpoint-rule discretization of a first-kind Fredholm
integral equation with a Gaussian kernel on [0, 1]. It is symmetric and,
for realistic sizes, severely ill-conditioned.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidSize, NonFiniteInput
from .lcurve import RegularizedProblem, build_problem

# (n, kernel_width, noise_level) triples and seeds used by the acceptance suite
DEFAULT_BATTERY = ((32, 0.1, 1e-2), (64, 0.05, 1e-2), (64, 0.1, 1e-3))
DEFAULT_SEEDS = (1, 2, 3)


@dataclass(frozen=True, eq=False)
class TestProblem:
    __test__ = False  # keep pytest from collecting this class

    problem: RegularizedProblem
    x_true: np.ndarray
    b_clean: np.ndarray
    noise_level: float
    seed: int

    @property
    def realized_noise(self) -> float:
        """``||b - b_clean|| / ||b_clean||``."""
        return float(np.linalg.norm(self.problem.data - self.b_clean) / np.linalg.norm(self.b_clean))


def make_smoothing_problem(n: int, kernel_width: float) -> tuple[np.ndarray, np.ndarray]:
    """Gaussian-kernel smoothing operator and a smooth ground truth.

    ``A[i, j] = h * exp(-((t_i - s_j) / kernel_width)**2)`` with midpoints
    ``t_i = s_i = (i + 0.5) / n`` and ``h = 1 / n``;
    ``x_true(s) = sin(pi s) + 0.5 sin(2 pi s)``.
    """
    if int(n) != n or n < 8:
        raise InvalidSize(f"n must be an integer >= 8, got {n!r}")
    if not (np.isfinite(kernel_width) and kernel_width > 0):
        raise InvalidSize(f"kernel_width must be positive, got {kernel_width!r}")
    n = int(n)
    t = (np.arange(n) + 0.5) / n
    a = np.exp(-(((t[:, None] - t[None, :]) / kernel_width) ** 2)) / n
    x_true = np.sin(np.pi * t) + 0.5 * np.sin(2.0 * np.pi * t)
    return a, x_true


def add_noise(b_clean, noise_level: float, seed: int) -> np.ndarray:
    """Add seeded white Gaussian noise of expected relative size ``noise_level``.

    Each entry gets standard deviation ``noise_level * ||b_clean|| / sqrt(m)``.
    """
    b = np.asarray(b_clean, dtype=float)
    if not np.all(np.isfinite(b)):
        raise NonFiniteInput("b_clean contains non-finite values")
    if not noise_level >= 0:
        raise InvalidSize(f"noise_level must be non-negative, got {noise_level!r}")
    if noise_level == 0:
        return b.copy()
    rng = np.random.default_rng(seed)
    sigma = noise_level * np.linalg.norm(b) / np.sqrt(b.size)
    return b + sigma * rng.standard_normal(b.size)


def make_test_problem(n: int, kernel_width: float, noise_level: float, seed: int) -> TestProblem:
    a, x_true = make_smoothing_problem(n, kernel_width)
    b_clean = a @ x_true
    b = add_noise(b_clean, noise_level, seed)
    return TestProblem(build_problem(a, b), x_true, b_clean, float(noise_level), int(seed))


def default_battery() -> list[TestProblem]:
    """The nine (config, seed) problems of the default battery."""
    return [make_test_problem(n, w, nl, seed) for n, w, nl in DEFAULT_BATTERY for seed in DEFAULT_SEEDS]
