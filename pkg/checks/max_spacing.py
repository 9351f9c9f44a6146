"""
Monte Carlo check of the extreme-spacing scaling

Pooled top spacings j (Z_(n-j+1) - Z_(n-j)), j = 1..top_j, scaled by
sqrt(2 log n) should be close to unit exponential; the scaled maximum
spacing should not grow with n once n is large.
"""
import math
from functools import partial
from typing import Dict, List, Sequence, Tuple

import numpy as np
from scipy import stats

from checks.base_check import BaseCheck, CheckCase, LemmaCheckReport
from config.settings import (
    DEFAULT_WORKERS,
    MAX_SPACING_KS_THRESHOLD,
    MAX_SPACING_MIN_N,
    MAX_SPACING_TOP_J,
    MAX_SPACING_TREND_START,
)
from evaluation.statistical_evaluator import MonteCarloEvaluator, ks_distance, sample_quantiles
from simulation.replicates import top_spacing_replicate
from utils.errors import DomainError

# asymptotic sd of a sample median is sqrt(pi / 2) sd / sqrt(reps) for near-normal data
MEDIAN_SE_FACTOR = math.sqrt(math.pi / 2.0)


def _exponential_cdf(x: float) -> float:
    return float(stats.expon.cdf(x))


class MaxSpacingCheck(BaseCheck):
    """KS of scaled top spacings per n, plus the median trend of the scaled maximum"""

    name = 'max_spacing'

    def __init__(self, n_list: Sequence[int], reps: int, seed: int = 0,
                 top_j: int = MAX_SPACING_TOP_J, workers: int = DEFAULT_WORKERS):
        super().__init__(seed, workers)
        self.n_list = tuple(sorted(int(n) for n in n_list))
        self.reps = int(reps)
        self.top_j = int(top_j)

        if not self.n_list:
            raise DomainError("n_list must be non-empty")
        for n in self.n_list:
            if n < MAX_SPACING_MIN_N:
                raise DomainError(f"n={n} is below the asymptotic regime (n >= {MAX_SPACING_MIN_N})")
        if self.reps < 1:
            raise DomainError(f"reps must be at least 1, got {self.reps}")
        if not 1 <= self.top_j <= MAX_SPACING_MIN_N - 2:
            raise DomainError(f"top_j must be in [1, {MAX_SPACING_MIN_N - 2}], got {self.top_j}")

        self.max_spacing_quantiles: Dict[int, Dict[str, float]] = {}
        self.hazard_ks: Dict[int, float] = {}

    def config(self) -> Dict[str, object]:
        return {'n': list(self.n_list), 'reps': self.reps, 'seed': self.seed,
                'top_j': self.top_j, 'ks_threshold': MAX_SPACING_KS_THRESHOLD}

    def is_indeterminate(self) -> bool:
        return self.reps < 2

    def notes(self) -> str:
        if not self.hazard_ks:
            return ""
        hazard = ", ".join(f"n={n}: {d:.4f}" for n, d in sorted(self.hazard_ks.items()))
        return f"local-hazard scaled KS (diagnostic): {hazard}"

    def build_cases(self) -> Tuple[CheckCase, ...]:
        cases: List[CheckCase] = []
        medians: List[Tuple[int, float, float]] = []

        for n in self.n_list:
            replicate = partial(top_spacing_replicate, top_j=self.top_j)
            batch = MonteCarloEvaluator(self.seed, n, self.workers).run_replicates(replicate, self.reps)
            scaled_max = batch.values[:, 0]
            log_scaled = batch.values[:, 1:1 + self.top_j].ravel()
            hazard_scaled = batch.values[:, 1 + self.top_j:].ravel()

            distance = ks_distance(log_scaled, _exponential_cdf)
            self.hazard_ks[n] = ks_distance(hazard_scaled, _exponential_cdf)
            quantiles = sample_quantiles(scaled_max)
            self.max_spacing_quantiles[n] = quantiles

            positive = bool((scaled_max > 0).all() and (log_scaled > 0).all() and (hazard_scaled > 0).all())
            cases.append(CheckCase({'n': n, 'pooled': int(log_scaled.size), 'fact': 'top_spacing_exponential'},
                                   'ks', distance, MAX_SPACING_KS_THRESHOLD,
                                   distance < MAX_SPACING_KS_THRESHOLD))
            cases.append(CheckCase({'n': n, 'fact': 'scalings_positive'}, 'value',
                                   float(scaled_max.min()), 0.0, positive))
            levels = list(quantiles.values())
            cases.append(CheckCase({'n': n, 'fact': 'scaled_max_quantiles', 'quantiles': quantiles},
                                   'value', float(np.median(scaled_max)), 0.0,
                                   bool(np.all(np.isfinite(levels)) and np.all(np.diff(levels) >= 0))))

            sd = float(np.std(scaled_max, ddof=1)) if scaled_max.size > 1 else 0.0
            medians.append((n, float(np.median(scaled_max)), MEDIAN_SE_FACTOR * sd / math.sqrt(self.reps)))

        trend = [m for m in medians if m[0] >= MAX_SPACING_TREND_START]
        for (n_low, med_low, se_low), (n_high, med_high, se_high) in zip(trend, trend[1:]):
            slack = 2.0 * math.hypot(se_low, se_high)
            cases.append(CheckCase(
                parameters={'n_low': n_low, 'n_high': n_high, 'fact': 'median_nonincreasing'},
                kind='median',
                observed=med_high,
                reference=med_low,
                standard_error=math.hypot(se_low, se_high),
                passed=med_high <= med_low + slack,
            ))
        return tuple(cases)


def max_spacing_scaling(n_list: Sequence[int], reps: int, seed: int = 0,
                        workers: int = DEFAULT_WORKERS) -> LemmaCheckReport:
    return MaxSpacingCheck(n_list, reps, seed, workers=workers).run()
