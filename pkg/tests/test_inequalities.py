"""
Tests for the analytic normal-tail inequalities
"""
import math

import numpy as np
import pytest

from analytics.inequalities import (
    InequalityCheck,
    eval_combined_ratio_bound,
    eval_gap_bound,
    eval_mills_bounds,
    eval_ratio_bound,
    eval_tail_ratio_monotonicity,
    inequality_suite,
    lemma31_bound,
    mills_grid,
    ratio_grid,
)
from utils.errors import DomainError


class TestGapBound:

    def test_reference_point(self):
        check = eval_gap_bound(1.0, 1.0)
        assert check.lhs == pytest.approx(0.135905, abs=1e-6)
        assert check.rhs == pytest.approx(0.053991, abs=1e-6)
        assert check.holds

    def test_small_x_large_eps(self):
        assert eval_gap_bound(0.5, 2.0).holds

    def test_vanishing_eps(self):
        check = eval_gap_bound(1.0, 1e-9)
        assert check.lhs < 1e-8 and check.rhs < 1e-8
        assert check.holds

    @pytest.mark.parametrize("x,eps", [(0.0, 1.0), (-1.0, 1.0), (1.0, 0.0), (1.0, -2.0), (math.inf, 1.0)])
    def test_domain(self, x, eps):
        with pytest.raises(DomainError):
            eval_gap_bound(x, eps)


class TestMillsBounds:

    def test_reference_point(self):
        check = eval_mills_bounds(1.0)
        assert check.lhs == pytest.approx(0.120985, abs=1e-6)
        assert check.mid == pytest.approx(0.158655, abs=1e-6)
        assert check.rhs == pytest.approx(0.241971, abs=1e-6)
        assert check.holds
        assert check.direction == '<<'

    def test_bracket_tight_at_eight(self):
        check = eval_mills_bounds(8.0)
        assert check.holds
        assert (check.rhs - check.lhs) / check.mid < 0.02

    def test_log_grid(self):
        grid = mills_grid()
        assert grid[0] > 0 and grid[-1] == pytest.approx(12.0)
        assert all(eval_mills_bounds(float(x)).holds for x in grid)


class TestRatioBounds:

    def test_reference_point(self):
        assert eval_ratio_bound(1.0, 1.0).holds

    def test_substitution_at_root_eps(self):
        eps = 0.25
        check = eval_ratio_bound(math.sqrt(eps), eps)
        assert check.rhs == pytest.approx(0.25 * math.exp(-0.375), rel=1e-14)

    def test_holds_on_grid(self):
        for x, eps in ratio_grid():
            assert eval_ratio_bound(x, eps).holds, (x, eps)
            assert eval_gap_bound(x, eps).holds, (x, eps)

    def test_combined_bound_on_grid(self):
        for x, eps in ratio_grid():
            check = eval_combined_ratio_bound(x, eps)
            assert check.holds, (x, eps)
            assert 0.0 <= check.lhs <= 1.0

    def test_combined_bound_deep_tail(self):
        # both tails underflow to 0 here; the log ratio must not
        check = eval_combined_ratio_bound(45.0, 1.0)
        assert check.holds
        assert check.lhs == pytest.approx(math.exp(-1.0), rel=1e-2)


class TestMonotonicity:

    @pytest.mark.parametrize("eps", [0.25, 1.0, 4.0])
    def test_nondecreasing(self, eps):
        check = eval_tail_ratio_monotonicity(eps)
        assert check.holds
        assert check.x == pytest.approx(math.sqrt(eps))

    def test_too_few_points(self):
        with pytest.raises(DomainError):
            eval_tail_ratio_monotonicity(1.0, points=1)


class TestLemma31Bound:

    def test_single_observation(self):
        assert lemma31_bound(1.0, 1) == pytest.approx(0.77687, abs=1e-5)

    def test_ten_observations(self):
        assert lemma31_bound(1.0, 10) == pytest.approx((1 - math.exp(-1.5)) ** 10, rel=1e-12)
        assert lemma31_bound(1.0, 10) == pytest.approx(0.0800, abs=1e-4)

    def test_decreasing_in_m(self):
        values = [lemma31_bound(0.5, m) for m in (1, 10, 100)]
        assert all(0.0 < v < 1.0 for v in values)
        assert values[0] > values[1] > values[2]

    @pytest.mark.parametrize("m", [0, -1, 2.5])
    def test_exponent_domain(self, m):
        with pytest.raises(DomainError):
            lemma31_bound(1.0, m)


class TestSuite:

    def test_every_point_holds(self):
        checks = inequality_suite()
        assert checks
        assert all(isinstance(c, InequalityCheck) for c in checks)
        failing = [c.to_dict() for c in checks if not c.holds]
        assert failing == []

    def test_margins_positive(self):
        margins = np.array([c.margin for c in inequality_suite() if c.name != 'tail_ratio_monotone'])
        assert np.all(margins > 0)

    def test_families_present(self):
        names = {c.name for c in inequality_suite()}
        assert names == {'mills_bounds', 'gap_bound', 'ratio_bound', 'combined_ratio_bound',
                         'tail_ratio_monotone'}
