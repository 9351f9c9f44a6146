"""
Tests for the seeded substreams and the per-replicate statistics
"""
import math

import numpy as np
import pytest
from scipy import stats

from analytics.normal import mills_ratio, std_normal_cdf
from evaluation.statistical_evaluator import ks_distance
from simulation.replicates import (
    cluster_replicate,
    detection_replicate,
    half_replicate,
    lemma31_replicate,
    remainder_replicate,
    sorted_normals,
    top_spacing_replicate,
    uniform_ratio_replicate,
)
from simulation.streams import open_uniforms, sample_std_normal, substream
from spacings.decomposition import cluster_index, decompose
from spacings.sample import make_sample
from utils.errors import DomainError


class TestSubstream:

    def test_same_key_same_variates(self):
        a = sample_std_normal(substream(42, 0), 100)
        b = sample_std_normal(substream(42, 0), 100)
        np.testing.assert_array_equal(a, b)

    def test_different_index_differs(self):
        a = sample_std_normal(substream(42, 0), 100)
        b = sample_std_normal(substream(42, 1), 100)
        assert not np.array_equal(a, b)

    def test_different_seed_differs(self):
        a = sample_std_normal(substream(1, 0), 100)
        b = sample_std_normal(substream(2, 0), 100)
        assert not np.array_equal(a, b)

    def test_open_interval(self):
        u = open_uniforms(substream(0, 0), 100000)
        assert u.min() > 0.0 and u.max() < 1.0

    def test_size_domain(self):
        with pytest.raises(DomainError):
            sample_std_normal(substream(0, 0), 0)


class TestNormalVariates:

    @pytest.fixture(scope='class')
    def variates(self):
        return sample_std_normal(substream(2024, 0), 1_000_000)

    def test_mean(self, variates):
        assert abs(variates.mean()) < 4.0 / math.sqrt(variates.size)

    def test_variance(self, variates):
        assert abs(variates.var() - 1.0) < 4.0 * math.sqrt(2.0 / variates.size)

    def test_ks_against_phi(self, variates):
        sub = variates[:100_000]
        distance = ks_distance(sub, std_normal_cdf)
        assert distance < stats.kstwobign.ppf(0.999) / math.sqrt(sub.size)


class TestReplicates:

    def test_sorted(self):
        z = sorted_normals(5, 3, 200)
        assert np.all(np.diff(z) >= 0)

    def test_cluster_matches_full_path(self):
        z = sorted_normals(5, 3, 200)
        s = make_sample(z)
        split = cluster_index(decompose(s), s)
        value = cluster_replicate(5, 3, 200)
        assert value[0] == pytest.approx(200 * split.statistic - math.log(200), abs=1e-10)

    def test_half_sides_differ(self):
        upper = half_replicate(5, 3, 200, side='upper')
        lower = half_replicate(5, 3, 200, side='lower')
        assert upper.shape == lower.shape == (1,)
        assert upper[0] != lower[0]

    def test_half_lower_is_reflection(self):
        z = sorted_normals(5, 3, 200)
        r = -z[::-1]
        positions = np.flatnonzero(r[:-1] > 0)
        above = 200 - (positions + 1)
        expected = np.max(above * (r[positions + 1] - r[positions]) * mills_ratio(r[positions])) - math.log(200)
        assert half_replicate(5, 3, 200, side='lower')[0] == pytest.approx(expected, rel=1e-14)

    def test_detection_p_value_range(self):
        p = detection_replicate(1, 0, 300)[0]
        assert 0.0 <= p <= 1.0

    def test_detection_mixture_small_p(self):
        p = [detection_replicate(1, k, 400, separation=8.0)[0] for k in range(5)]
        assert max(p) < 0.01

    def test_lemma31_layout(self):
        row = lemma31_replicate(0, 0, 100, i_list=[60, 99], eps_list=[0.5, 1.0, 2.0])
        assert row.shape == (6,)
        assert set(np.unique(row)) <= {0.0, 1.0}
        z = sorted_normals(0, 0, 100)
        product = z[98] * (z[99] - z[98])
        np.testing.assert_array_equal(row[3:], [product > 0.5, product > 1.0, product > 2.0])

    def test_uniform_ratio_in_unit_interval(self):
        row = uniform_ratio_replicate(7, 0, 50)
        assert row.shape == (49,)
        assert np.all((row >= 0) & (row <= 1))

    def test_top_spacing_positive(self):
        row = top_spacing_replicate(0, 0, 500, top_j=10)
        assert row.shape == (21,)
        assert np.all(row > 0)

    def test_remainder_shape(self):
        row = remainder_replicate(0, 0, 500)
        assert row.shape == (2,)
        assert np.all(row >= 0)
