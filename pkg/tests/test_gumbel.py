"""
Tests for the Gumbel calibration of the cluster index
"""
import math

import numpy as np
import pytest

from inference.gumbel import (
    centered_statistic,
    cluster_test,
    gumbel_cdf,
    gumbel_quantile,
    gumbel_sf,
    half_limit_cdf,
)
from utils.errors import DomainError, SizeError


class TestGumbel:

    def test_cdf_at_zero(self):
        assert gumbel_cdf(0.0) == pytest.approx(0.3678794412, abs=1e-10)

    def test_cdf_monotone_to_one(self):
        values = [gumbel_cdf(x) for x in np.linspace(-5, 40, 200)]
        assert all(a <= b for a, b in zip(values, values[1:]))
        assert values[-1] == 1.0

    def test_cdf_far_left(self):
        assert gumbel_cdf(-800.0) == 0.0
        assert gumbel_sf(-800.0) == 1.0

    def test_sf_keeps_tail_digits(self):
        assert gumbel_sf(40.0) == pytest.approx(math.exp(-40.0), rel=1e-12)
        assert gumbel_sf(1.0) == pytest.approx(1.0 - gumbel_cdf(1.0), rel=1e-14)

    @pytest.mark.parametrize("p,x", [(math.exp(-1.0), 0.0), (0.95, 2.97020), (0.5, 0.36651)])
    def test_quantile(self, p, x):
        assert gumbel_quantile(p) == pytest.approx(x, abs=1e-5)

    def test_round_trip(self):
        for p in np.linspace(0.001, 0.999, 50):
            assert gumbel_cdf(gumbel_quantile(p)) == pytest.approx(p, abs=1e-12)

    @pytest.mark.parametrize("p", [0.0, 1.0, 2.0])
    def test_quantile_domain(self, p):
        with pytest.raises(DomainError):
            gumbel_quantile(p)

    def test_non_finite(self):
        with pytest.raises(DomainError):
            gumbel_cdf(math.nan)


class TestHalfLimit:

    def test_at_zero(self):
        assert half_limit_cdf(0.0) == pytest.approx(0.6065306597, abs=1e-10)

    def test_to_one(self):
        assert half_limit_cdf(50.0) == pytest.approx(1.0)

    def test_square_is_gumbel(self):
        for x in np.linspace(-3, 6, 37):
            assert half_limit_cdf(x) ** 2 == pytest.approx(gumbel_cdf(x), rel=1e-13)


class TestClusterTest:

    def test_centered_at_log_n(self):
        n = 100
        result = cluster_test(n, math.log(n) / n)
        assert result.x == pytest.approx(0.0, abs=1e-12)
        assert result.p_value == pytest.approx(1 - math.exp(-1.0), abs=1e-12)

    def test_small_p_value(self):
        result = cluster_test(100, 0.12)
        assert result.x == pytest.approx(7.39483, abs=1e-5)
        assert result.p_value == pytest.approx(6.14e-4, rel=1e-2)

    def test_large_p_value(self):
        result = cluster_test(100, 0.01)
        assert result.x == pytest.approx(-3.60517, abs=1e-5)
        assert result.p_value == pytest.approx(1.0, abs=1e-15)

    def test_monotone_in_statistic(self):
        p = [cluster_test(50, s).p_value for s in np.linspace(0.01, 1.0, 40)]
        assert all(a >= b for a, b in zip(p, p[1:]))

    def test_centered_statistic(self):
        assert centered_statistic(4, 0.5) == pytest.approx(2.0 - math.log(4))

    @pytest.mark.parametrize("statistic", [0.0, -0.1, 1.5, math.nan])
    def test_statistic_domain(self, statistic):
        with pytest.raises(DomainError):
            cluster_test(10, statistic)

    def test_size(self):
        with pytest.raises(SizeError):
            cluster_test(1, 0.5)

    def test_to_dict(self):
        assert set(cluster_test(10, 0.5).to_dict()) == {'n', 'statistic', 'x', 'p_value'}
