"""
Tests for the verification checks
"""
import json

import pytest

from checks.analytic import InequalitySuiteCheck, TruncatedMomentsCheck, verify_inequalities
from checks.base_check import BaseCheck, CheckCase, LemmaCheckReport
from checks.half_limit import HalfLimitCheck, verify_half_limit
from checks.lemma31 import Lemma31Check, verify_lemma31
from checks.max_spacing import MaxSpacingCheck, max_spacing_scaling
from checks.power import verify_power
from checks.remainder import RemainderCheck, verify_remainder_terms
from checks.uniform_ratio import ks_critical_value, verify_uniform_ratio
from evaluation.statistical_evaluator import dumps_report
from utils.errors import DomainError, SizeError


class _Fixed(BaseCheck):
    name = 'fixed'

    def __init__(self, outcomes):
        super().__init__()
        self.outcomes = outcomes

    def config(self):
        return {'count': len(self.outcomes)}

    def build_cases(self):
        return tuple(CheckCase({'k': k}, 'value', 0.0, 0.0, ok) for k, ok in enumerate(self.outcomes))


class TestBaseCheck:

    def test_all_pass(self):
        report = _Fixed([True, True]).run()
        assert isinstance(report, LemmaCheckReport)
        assert report.overall_pass and not report.indeterminate
        assert report.name == 'fixed'

    def test_one_failure(self):
        assert not _Fixed([True, False]).run().overall_pass

    def test_cannot_instantiate_base(self):
        with pytest.raises(TypeError):
            BaseCheck()

    def test_report_serializes(self):
        report = _Fixed([True]).run().to_dict()
        assert json.loads(dumps_report(report)) == report

    def test_repr(self):
        assert repr(_Fixed([True])) == "_Fixed({'count': 1})"


class TestAnalyticChecks:

    def test_inequalities_pass(self):
        report = verify_inequalities()
        assert report.overall_pass
        assert len(report.cases) == 5
        assert all(case.kind == 'margin' for case in report.cases)

    def test_custom_monotonicity_eps(self):
        report = InequalitySuiteCheck(monotonicity_eps=(2.0,)).run()
        assert report.config == {'monotonicity_eps': [2.0]}
        assert report.overall_pass

    def test_truncated_facts(self):
        report = TruncatedMomentsCheck().run()
        assert report.overall_pass
        facts = {case.parameters['fact']: case for case in report.cases}
        assert facts['variance_below_one'].observed < 1.0
        assert facts['skewness_limit'].observed == pytest.approx(2.0, abs=0.06)


class TestLemma31Check:

    def test_bound_at_last_index(self):
        report = Lemma31Check(1000, [999], [1.0], reps=500, seed=3).run()
        case = report.cases[0]
        assert case.reference == pytest.approx(0.77687, abs=1e-5)
        assert case.kind == 'probability'
        assert report.overall_pass

    def test_passes(self):
        report = verify_lemma31(1000, [501, 900, 990, 999], 1.0, reps=2000, seed=1)
        assert report.overall_pass
        assert len(report.cases) == 4
        assert all(case.observed <= case.reference + 3 * case.standard_error for case in report.cases)

    def test_case_order_is_i_major(self):
        report = Lemma31Check(200, [150, 199], [0.5, 2.0], reps=20, seed=0).run()
        params = [(c.parameters['i'], c.parameters['eps']) for c in report.cases]
        assert params == [(150, 0.5), (150, 2.0), (199, 0.5), (199, 2.0)]

    def test_below_half(self):
        with pytest.raises(DomainError):
            Lemma31Check(1000, [490], [1.0], reps=10)

    def test_last_index_excluded(self):
        with pytest.raises(DomainError):
            Lemma31Check(1000, [1000], [1.0], reps=10)

    def test_eps_positive(self):
        with pytest.raises(DomainError):
            Lemma31Check(1000, [999], [0.0], reps=10)

    def test_single_replicate_indeterminate(self):
        assert Lemma31Check(100, [99], [1.0], reps=1).run().indeterminate


class TestHalfLimitCheck:

    def test_structure(self):
        report = HalfLimitCheck(200, reps=50, seed=2).run()
        assert [c.parameters['x'] for c in report.cases] == [-1.0, 0.0, 1.0, 2.0]
        assert all(c.kind == 'cdf' for c in report.cases)
        assert report.cases[1].reference == pytest.approx(0.6065306597)

    def test_lower_side(self):
        report = verify_half_limit(200, reps=50, seed=2, side='lower')
        assert report.config['side'] == 'lower'

    def test_single_replicate_indeterminate(self):
        assert HalfLimitCheck(100, reps=1).run().indeterminate


class TestUniformRatioCheck:

    def test_critical_value(self):
        assert ks_critical_value(10000) == pytest.approx(1.628 / 100.0, abs=1e-4)

    def test_passes(self):
        report = verify_uniform_ratio(50, reps=200, seed=7)
        assert report.overall_pass
        assert report.cases[0].parameters['pooled'] == 200 * 49

    def test_misspecified_power_fails(self):
        report = verify_uniform_ratio(50, reps=200, seed=7, exponent_offset=1)
        assert not report.overall_pass
        assert report.cases[1].passed

    def test_size(self):
        with pytest.raises(SizeError):
            verify_uniform_ratio(2, reps=10)


class TestMaxSpacingCheck:

    def test_regime_guard(self):
        with pytest.raises(DomainError):
            MaxSpacingCheck([50], reps=10)

    def test_single_replicate_indeterminate(self):
        report = max_spacing_scaling([100], reps=1, seed=0)
        assert report.indeterminate

    def test_structure(self):
        check = MaxSpacingCheck([200, 1000, 2000], reps=40, seed=3)
        report = check.run()
        kinds = [c.kind for c in report.cases]
        assert kinds.count('ks') == 3
        assert kinds.count('median') == 1
        positive = [c for c in report.cases if c.parameters.get('fact') == 'scalings_positive']
        assert all(c.passed for c in positive)
        assert set(check.hazard_ks) == {200, 1000, 2000}
        assert 'local-hazard' in report.notes
        quantile_cases = [c for c in report.cases if c.parameters.get('fact') == 'scaled_max_quantiles']
        assert [c.parameters['n'] for c in quantile_cases] == [200, 1000, 2000]
        for case in quantile_cases:
            assert case.passed
            assert case.parameters['quantiles'] == check.max_spacing_quantiles[case.parameters['n']]
            assert case.to_dict()['parameters']['quantiles'] == case.parameters['quantiles']


class TestRemainderCheck:

    def test_needs_two_sizes(self):
        with pytest.raises(DomainError):
            RemainderCheck([100], reps=10)

    def test_terms_shrink(self):
        report = verify_remainder_terms([50, 5000], reps=200, seed=1)
        assert [c.parameters['term'] for c in report.cases] == ['overall_mean', 'upper_mean_vs_mills']
        assert report.overall_pass


@pytest.mark.slow
class TestAcceptanceChecks:

    def test_lemma31_full_grid(self):
        report = Lemma31Check(1000, [501, 900, 990, 999], [0.5, 1.0, 2.0], reps=10000, seed=1,
                              workers=4).run()
        assert report.overall_pass

    def test_half_limit(self):
        assert verify_half_limit(2000, reps=20000, seed=1, workers=4).overall_pass

    def test_max_spacing(self):
        report = max_spacing_scaling([1000, 10000], reps=2000, seed=1, workers=4)
        assert report.overall_pass

    def test_power(self):
        report = verify_power(500, reps=200, seed=1)
        assert report.overall_pass
