"""
Deterministic checks: the analytic inequality grids and the truncated-normal facts
"""
from collections import defaultdict
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from analytics.inequalities import InequalityCheck, inequality_suite
from analytics.normal import truncated_moments
from checks.base_check import BaseCheck, CheckCase, LemmaCheckReport
from config.settings import (
    MONOTONICITY_EPS,
    SKEWNESS_LIMIT,
    SKEWNESS_LIMIT_POINT,
    SKEWNESS_LIMIT_TOLERANCE,
)


class InequalitySuiteCheck(BaseCheck):
    """
    Every inequality family on its grid, one case per family carrying the
    worst margin seen
    """

    name = 'inequalities'

    def __init__(self, monotonicity_eps: Sequence[float] = MONOTONICITY_EPS):
        super().__init__()
        self.monotonicity_eps = tuple(monotonicity_eps)

    def config(self) -> Dict[str, object]:
        return {'monotonicity_eps': list(self.monotonicity_eps)}

    def build_cases(self) -> Tuple[CheckCase, ...]:
        families: Dict[str, List[InequalityCheck]] = defaultdict(list)
        for check in inequality_suite(self.monotonicity_eps):
            families[check.name].append(check)

        cases = []
        for family in sorted(families):
            checks = families[family]
            worst = min(checks, key=lambda c: c.margin)
            cases.append(CheckCase(
                parameters={
                    'inequality': family,
                    'points': len(checks),
                    'worst_x': worst.x,
                    'worst_eps': worst.eps,
                },
                kind='margin',
                observed=worst.margin,
                reference=0.0,
                passed=all(c.holds for c in checks),
            ))
        return tuple(cases)


class TruncatedMomentsCheck(BaseCheck):
    """Variance below one, skewness increasing and close to its limit 2"""

    name = 'truncated'

    def __init__(self, grid: Optional[Sequence[float]] = None):
        super().__init__()
        if grid is None:
            grid = np.linspace(0.0, SKEWNESS_LIMIT_POINT, 41)
        self.grid = tuple(float(z) for z in grid)

    def config(self) -> Dict[str, object]:
        return {'grid_low': min(self.grid), 'grid_high': max(self.grid), 'points': len(self.grid)}

    def build_cases(self) -> Tuple[CheckCase, ...]:
        moments = [truncated_moments(z) for z in self.grid]
        positive = [m.variance for m in moments if m.threshold > 0.0]
        largest_variance = max(positive) if positive else 0.0
        skew_steps = np.diff([m.skewness for m in moments])
        smallest_step = float(skew_steps.min()) if skew_steps.size else 0.0
        limit_skew = truncated_moments(SKEWNESS_LIMIT_POINT).skewness

        return (
            CheckCase({'fact': 'variance_below_one'}, 'value',
                      largest_variance, 1.0, largest_variance < 1.0),
            CheckCase({'fact': 'skewness_increasing'}, 'value',
                      smallest_step, 0.0, smallest_step > 0.0),
            CheckCase({'fact': 'skewness_limit', 'z': SKEWNESS_LIMIT_POINT,
                       'tolerance': SKEWNESS_LIMIT_TOLERANCE}, 'value',
                      limit_skew, SKEWNESS_LIMIT,
                      abs(limit_skew - SKEWNESS_LIMIT) < SKEWNESS_LIMIT_TOLERANCE),
        )


def verify_inequalities() -> LemmaCheckReport:
    return InequalitySuiteCheck().run()


def verify_truncated_moments(grid: Optional[Sequence[float]] = None) -> LemmaCheckReport:
    return TruncatedMomentsCheck(grid).run()
