"""
Monte Carlo check of the one-sided limit exp(-exp(-x) / 2)
"""
from typing import Dict, Sequence, Tuple

from checks.base_check import BaseCheck, CheckCase, LemmaCheckReport
from config.settings import DEFAULT_WORKERS, HALF_LIMIT_POINTS, HALF_LIMIT_TOLERANCE
from evaluation.statistical_evaluator import SimConfig, simulate_half_statistic, standard_error
from inference.gumbel import half_limit_cdf


class HalfLimitCheck(BaseCheck):
    """Empirical CDF of the positive-side (or reflected) statistic at a few points"""

    name = 'half_limit'

    def __init__(self, n: int, reps: int, seed: int = 0, points: Sequence[float] = HALF_LIMIT_POINTS,
                 side: str = 'upper', tolerance: float = HALF_LIMIT_TOLERANCE,
                 workers: int = DEFAULT_WORKERS):
        super().__init__(seed, workers)
        self.sim_config = SimConfig(n=n, reps=reps, seed=seed, grid=tuple(sorted(points)))
        self.side = side
        self.tolerance = tolerance

    def config(self) -> Dict[str, object]:
        return {**self.sim_config.to_dict(), 'side': self.side, 'tolerance': self.tolerance}

    def is_indeterminate(self) -> bool:
        return self.sim_config.reps < 2

    def notes(self) -> str:
        return "tolerance covers binomial noise plus finite-n bias"

    def build_cases(self) -> Tuple[CheckCase, ...]:
        report = simulate_half_statistic(self.sim_config, side=self.side, workers=self.workers)
        cases = []
        for x, observed in zip(self.sim_config.grid, report.empirical_cdf):
            limit = half_limit_cdf(x)
            cases.append(CheckCase(
                parameters={'x': x, 'side': self.side},
                kind='cdf',
                observed=observed,
                reference=limit,
                standard_error=standard_error(observed, self.sim_config.reps),
                passed=abs(observed - limit) <= self.tolerance,
            ))
        return tuple(cases)


def verify_half_limit(n: int, reps: int, seed: int = 0, points: Sequence[float] = HALF_LIMIT_POINTS,
                      side: str = 'upper', workers: int = DEFAULT_WORKERS) -> LemmaCheckReport:
    return HalfLimitCheck(n, reps, seed, points, side, workers=workers).run()
