"""
Tests for the random projection scan
"""
import numpy as np
import pytest

from projection.scan import project_scan, random_direction
from utils.errors import DegenerateSampleError, DomainError


class TestRandomDirection:

    def test_unit_norm(self):
        for k in range(5):
            assert np.linalg.norm(random_direction(3, k, 4)) == pytest.approx(1.0)

    def test_seeded(self):
        np.testing.assert_array_equal(random_direction(3, 0, 4), random_direction(3, 0, 4))


class TestProjectScan:

    def test_deterministic(self):
        rows = np.random.default_rng(0).standard_normal((60, 2))
        a = project_scan(rows, directions=1, seed=11)
        b = project_scan(rows, directions=1, seed=11)
        np.testing.assert_array_equal(a.direction, b.direction)
        assert a.split == b.split
        assert a.directions_tried == 1

    def test_identical_columns_affine_equivalent(self):
        x = np.random.default_rng(1).standard_normal(80)
        rows = np.column_stack((x, x, x))
        statistics = [project_scan(rows, 1, seed).split.statistic for seed in range(5)]
        np.testing.assert_allclose(statistics, statistics[0], atol=1e-10)

    def test_best_is_maximum(self):
        rows = np.random.default_rng(2).standard_normal((50, 3))
        best = project_scan(rows, directions=10, seed=4)
        single = [project_scan(rows, 1, 4).split.statistic]
        assert best.split.statistic >= single[0]
        assert 0 <= best.direction_index < 10

    def test_separated_blobs(self):
        rng = np.random.default_rng(5)
        blob1 = rng.standard_normal((200, 2))
        blob2 = rng.standard_normal((200, 2)) + np.array([8.0, 0.0])
        result = project_scan(np.vstack((blob1, blob2)), directions=100, seed=1)
        assert result.test.p_value < 0.01
        assert result.to_dict()['multiplicity_corrected'] is False

    def test_one_column(self):
        with pytest.raises(DomainError):
            project_scan(np.zeros((10, 1)), 5, 0)

    def test_directions_positive(self):
        with pytest.raises(DomainError):
            project_scan(np.zeros((10, 2)), 0, 0)

    def test_constant_data(self):
        with pytest.raises(DegenerateSampleError):
            project_scan(np.ones((10, 2)), 3, 0)
