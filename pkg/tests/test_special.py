"""Special-function accuracy against an independent quadrature oracle.

The oracle integrates the t density directly (adaptive Simpson on a
substituted variable, relative tolerance 1e-12, using the standard-library
lgamma for its constant), so it shares no code path with the continued-
fraction implementation under test.
"""

from __future__ import annotations

import functools
import math

import pytest

from harmlens import student_t_two_tailed_p
from harmlens.special import log_gamma, regularized_incomplete_beta

GRID_T = (0.1, 1.0, 2.228, 6.64, 32.0)
GRID_DF = (1, 5, 10, 50, 200)


def _simpson_estimate(fa, fm, fb, a, b):
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb)


def _adaptive_simpson(f, a: float, b: float, eps: float) -> float:
    """Classic adaptive Simpson with an absolute error budget that halves
    on each subdivision, so the leaf errors sum to at most ``eps``."""

    def recurse(a, m, b, fa, fm, fb, whole, eps, depth):
        lm = (a + m) / 2.0
        rm = (m + b) / 2.0
        flm = f(lm)
        frm = f(rm)
        left = _simpson_estimate(fa, flm, fm, a, m)
        right = _simpson_estimate(fm, frm, fb, m, b)
        refined = left + right
        delta = refined - whole
        if depth <= 0 or abs(delta) <= 15.0 * eps:
            return refined + delta / 15.0
        return recurse(a, lm, m, fa, flm, fm, left, eps / 2.0, depth - 1) + recurse(
            m, rm, b, fm, frm, fb, right, eps / 2.0, depth - 1
        )

    m = (a + b) / 2.0
    fa, fm, fb = f(a), f(m), f(b)
    return recurse(a, m, b, fa, fm, fb, _simpson_estimate(fa, fm, fb, a, b), eps, 60)


@functools.lru_cache(maxsize=None)
def oracle_two_tailed_p(t: float, df: int, rel_tol: float = 1e-12) -> float:
    """2 * integral of the t density over [t, inf), via s = t/u on (0, 1].

    A coarse composite-Simpson pass sizes the absolute error budget so the
    adaptive pass achieves the requested relative tolerance.
    """
    if t == 0.0:
        return 1.0
    log_const = math.lgamma((df + 1) / 2.0) - math.lgamma(df / 2.0) - 0.5 * math.log(df * math.pi)
    c = math.exp(log_const)
    expo = -(df + 1) / 2.0

    def integrand(u: float) -> float:
        if u <= 0.0:
            return 0.0
        s = t / u
        return c * (1.0 + s * s / df) ** expo * t / (u * u)

    n = 512  # coarse bootstrap estimate; exact scale does not matter
    values = [integrand(k / n) for k in range(n + 1)]
    rough = sum(
        _simpson_estimate(values[k], values[k + 1], values[k + 2], k / n, (k + 2) / n)
        for k in range(0, n, 2)
    )
    eps = max(rough * rel_tol / 2.0, 5e-324)
    return 2.0 * _adaptive_simpson(integrand, 0.0, 1.0, eps)


def test_oracle_matches_cauchy_closed_form():
    """df=1 is a Cauchy tail with an arctangent closed form."""
    for t in GRID_T:
        exact = 2.0 / math.pi * math.atan2(1.0, t)
        assert oracle_two_tailed_p(t, 1) == pytest.approx(exact, rel=1e-11)


def test_p_matches_oracle_on_grid():
    for df in GRID_DF:
        for t in GRID_T:
            mine = student_t_two_tailed_p(t, df)
            ref = oracle_two_tailed_p(t, df)
            assert mine == pytest.approx(ref, rel=1e-9), (t, df, mine, ref)


def test_p_at_zero_is_one():
    for df in GRID_DF:
        assert student_t_two_tailed_p(0.0, df) == 1.0


def test_p_strictly_decreasing_in_t():
    for df in (1, 10, 200):
        values = [student_t_two_tailed_p(t, df) for t in (0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0)]
        assert all(a > b for a, b in zip(values, values[1:]))


def test_p_symmetric_in_sign():
    assert student_t_two_tailed_p(-2.5, 10) == student_t_two_tailed_p(2.5, 10)


def test_p_approaches_normal_at_high_df():
    # Checked away from t ~ 1-2, where the true df=200 deviation from the
    # normal limit itself exceeds 1e-3.
    for t in (0.25, 0.5, 3.0, 4.0, 5.0):
        normal = math.erfc(t / math.sqrt(2.0))
        assert abs(student_t_two_tailed_p(t, 200) - normal) < 1e-3


def test_p_infinite_sentinel_and_domain_errors():
    assert student_t_two_tailed_p(math.inf, 10) == 0.0
    assert student_t_two_tailed_p(-math.inf, 10) == 0.0
    with pytest.raises(ValueError):
        student_t_two_tailed_p(1.0, 0)
    with pytest.raises(ValueError):
        student_t_two_tailed_p(math.nan, 10)


def test_log_gamma_against_stdlib():
    for x in (0.1, 0.5, 1.0, 1.5, 2.0, 5.5, 10.0, 100.5, 200.0):
        assert log_gamma(x) == pytest.approx(math.lgamma(x), abs=1e-12, rel=1e-13)
    with pytest.raises(ValueError):
        log_gamma(0.0)


def test_log_gamma_recurrence():
    # gamma(x+1) = x * gamma(x)
    for x in (0.7, 3.3, 42.0):
        assert log_gamma(x + 1.0) == pytest.approx(log_gamma(x) + math.log(x), rel=1e-12)


def test_incomplete_beta_boundaries():
    assert regularized_incomplete_beta(2.0, 3.0, 0.0) == 0.0
    assert regularized_incomplete_beta(2.0, 3.0, 1.0) == 1.0
    with pytest.raises(ValueError):
        regularized_incomplete_beta(-1.0, 3.0, 0.5)
    with pytest.raises(ValueError):
        regularized_incomplete_beta(2.0, 3.0, 1.5)


def test_incomplete_beta_symmetry():
    # I_x(a, b) + I_{1-x}(b, a) = 1
    for a, b, x in ((2.5, 3.5, 0.3), (50.0, 0.5, 0.9), (0.5, 0.5, 0.2)):
        total = regularized_incomplete_beta(a, b, x) + regularized_incomplete_beta(b, a, 1.0 - x)
        assert total == pytest.approx(1.0, abs=1e-12)


def test_incomplete_beta_uniform_case():
    # a = b = 1 is the uniform CDF
    for x in (0.0, 0.25, 0.5, 0.99, 1.0):
        assert regularized_incomplete_beta(1.0, 1.0, x) == pytest.approx(x, abs=1e-14)
