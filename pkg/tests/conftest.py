import mpmath
import numpy as np
import pytest

from lcorner import build_problem, make_test_problem


def random_system(rng, m, n):
    return rng.standard_normal((m, n)), rng.standard_normal(m)


def normal_equations_solve(a, b, lam):
    """Independent oracle: dense LU solve of (A^T A + lam I) x = A^T b.

    Runs in 40-digit arithmetic; forming A^T A squares the condition number,
    which in double precision alone costs ~1e-8 when m < n and lam is small.
    """
    with mpmath.workdps(40):
        am = mpmath.matrix(np.asarray(a, dtype=float).tolist())
        bm = mpmath.matrix(np.asarray(b, dtype=float).tolist())
        lhs = am.T * am + mpmath.mpf(float(lam)) * mpmath.eye(am.cols)
        x = mpmath.lu_solve(lhs, am.T * bm)
    return np.array([float(v) for v in x])


def circumradius_exact(p, q, r):
    """Independent oracle: R = abc / (4 * area) in 50-digit arithmetic."""
    with mpmath.workdps(50):
        p, q, r = [(mpmath.mpf(x), mpmath.mpf(y)) for x, y in (p, q, r)]
        a = mpmath.sqrt((q[0] - r[0]) ** 2 + (q[1] - r[1]) ** 2)
        b = mpmath.sqrt((p[0] - r[0]) ** 2 + (p[1] - r[1]) ** 2)
        c = mpmath.sqrt((p[0] - q[0]) ** 2 + (p[1] - q[1]) ** 2)
        area = abs((q[0] - p[0]) * (r[1] - p[1]) - (r[0] - p[0]) * (q[1] - p[1])) / 2
        return float(a * b * c / (4 * area))


@pytest.fixture
def random_8x5():
    rng = np.random.default_rng(20201004)
    a, b = random_system(rng, 8, 5)
    return a, b, build_problem(a, b)


@pytest.fixture(scope="session")
def demo_problem():
    return make_test_problem(32, 0.1, 1e-2, 1)
