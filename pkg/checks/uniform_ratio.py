"""
Monte Carlo check that the powered ratios of uniform order statistics are i.i.d. uniform

With V_(k) = 1 - Phi(Z_(n+1-k)), the powers (V_(k) / V_(k+1))^k for
k = 1..n-1 are pooled over replicates and KS-tested against Uniform(0, 1).
"""
import math
from functools import partial
from typing import Dict, Tuple

from scipy import stats

from checks.base_check import BaseCheck, CheckCase, LemmaCheckReport
from config.settings import DEFAULT_WORKERS, KS_CONFIDENCE
from evaluation.statistical_evaluator import MonteCarloEvaluator, ks_distance
from simulation.replicates import uniform_ratio_replicate
from utils.errors import SizeError


def ks_critical_value(size: int, confidence: float = KS_CONFIDENCE) -> float:
    """Asymptotic one-sample KS critical value, e.g. about 1.63 / sqrt(size) at 99%"""
    return float(stats.kstwobign.ppf(confidence)) / math.sqrt(size)


def _uniform_cdf(x: float) -> float:
    return min(max(x, 0.0), 1.0)


class UniformRatioCheck(BaseCheck):
    """Pooled KS test of the powered ratios; exponent_offset=1 is the negative control"""

    name = 'uniform_ratio'

    def __init__(self, n: int, reps: int, seed: int = 0, exponent_offset: int = 0,
                 workers: int = DEFAULT_WORKERS):
        super().__init__(seed, workers)
        if n < 3:
            raise SizeError(f"n must be at least 3, got {n}")
        self.n = int(n)
        self.reps = int(reps)
        self.exponent_offset = int(exponent_offset)

    def config(self) -> Dict[str, object]:
        return {'n': self.n, 'reps': self.reps, 'seed': self.seed,
                'exponent_offset': self.exponent_offset}

    def build_cases(self) -> Tuple[CheckCase, ...]:
        replicate = partial(uniform_ratio_replicate, exponent_offset=self.exponent_offset)
        batch = MonteCarloEvaluator(self.seed, self.n, self.workers).run_replicates(replicate, self.reps)
        pooled = batch.values.ravel()

        statistic = ks_distance(pooled, _uniform_cdf)
        critical = ks_critical_value(pooled.size)
        in_range = bool(((pooled >= 0.0) & (pooled <= 1.0)).all())

        return (
            CheckCase({'pooled': int(pooled.size), 'confidence': KS_CONFIDENCE}, 'ks',
                      statistic, critical, statistic < critical),
            CheckCase({'fact': 'powers_in_unit_interval'}, 'value',
                      float(pooled.max()), 1.0, in_range),
        )


def verify_uniform_ratio(n: int, reps: int, seed: int = 0, exponent_offset: int = 0,
                         workers: int = DEFAULT_WORKERS) -> LemmaCheckReport:
    return UniformRatioCheck(n, reps, seed, exponent_offset, workers).run()
