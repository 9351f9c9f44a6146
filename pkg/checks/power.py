"""
Power and calibration sanity for the cluster test
"""
from typing import Dict, Tuple

from checks.base_check import BaseCheck, CheckCase, LemmaCheckReport
from config.settings import DEFAULT_WORKERS, POWER_ALPHA, POWER_SEPARATION
from evaluation.statistical_evaluator import SimConfig, simulate_detection_pvalues

MIXTURE_MEDIAN_CEILING = 0.01
NULL_REJECTION_BAND = (0.01, 0.15)


class PowerCheck(BaseCheck):
    """
    A well separated two-component mixture must be detected (median p-value
    below 0.01) while the i.i.d. normal null rejects at roughly the nominal
    rate. The null band is wide because the Gumbel calibration is only
    asymptotic.
    """

    name = 'power'

    def __init__(self, n: int = 500, reps: int = 200, seed: int = 0,
                 separation: float = POWER_SEPARATION, alpha: float = POWER_ALPHA,
                 workers: int = DEFAULT_WORKERS):
        super().__init__(seed, workers)
        self.sim_config = SimConfig(n=n, reps=reps, seed=seed)
        self.separation = float(separation)
        self.alpha = float(alpha)

    def config(self) -> Dict[str, object]:
        return {**self.sim_config.to_dict(), 'separation': self.separation, 'alpha': self.alpha}

    def is_indeterminate(self) -> bool:
        return self.sim_config.reps < 2

    def build_cases(self) -> Tuple[CheckCase, ...]:
        mixture = simulate_detection_pvalues(self.sim_config, self.separation, self.workers, self.alpha)
        null = simulate_detection_pvalues(self.sim_config, None, self.workers, self.alpha)
        low, high = NULL_REJECTION_BAND

        return (
            CheckCase({'model': 'mixture', 'separation': self.separation}, 'median',
                      mixture.median_p_value, MIXTURE_MEDIAN_CEILING,
                      mixture.median_p_value < MIXTURE_MEDIAN_CEILING),
            CheckCase({'model': 'null', 'alpha': self.alpha, 'band': list(NULL_REJECTION_BAND)}, 'value',
                      null.fraction_below_alpha, self.alpha,
                      low <= null.fraction_below_alpha <= high),
        )


def verify_power(n: int = 500, reps: int = 200, seed: int = 0,
                 separation: float = POWER_SEPARATION,
                 workers: int = DEFAULT_WORKERS) -> LemmaCheckReport:
    return PowerCheck(n, reps, seed, separation, workers=workers).run()
