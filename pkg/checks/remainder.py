"""
Monte Carlo check that the remainder terms of the decomposition argument vanish

Per replicate, over the positive-side indices i:
  sup (n - i) S_i |mean(Z)|
  sup (n - i) S_i |mean(Z_(i+1..n)) - mills(Z_(i))|
Both medians should shrink as n grows.
"""
from typing import Dict, List, Sequence, Tuple

import numpy as np

from checks.base_check import BaseCheck, CheckCase, LemmaCheckReport
from config.settings import DEFAULT_WORKERS
from evaluation.statistical_evaluator import MonteCarloEvaluator, check_exclusions
from simulation.replicates import remainder_replicate
from utils.errors import DomainError

TERMS = ('overall_mean', 'upper_mean_vs_mills')


class RemainderCheck(BaseCheck):

    name = 'remainder'

    def __init__(self, n_list: Sequence[int], reps: int, seed: int = 0,
                 workers: int = DEFAULT_WORKERS):
        super().__init__(seed, workers)
        self.n_list = tuple(sorted(set(int(n) for n in n_list)))
        self.reps = int(reps)

        if len(self.n_list) < 2:
            raise DomainError("n_list needs at least two distinct sizes")
        if self.n_list[0] < 3:
            raise DomainError(f"every n must be at least 3, got {self.n_list[0]}")
        if self.reps < 1:
            raise DomainError(f"reps must be at least 1, got {self.reps}")

    def config(self) -> Dict[str, object]:
        return {'n': list(self.n_list), 'reps': self.reps, 'seed': self.seed}

    def is_indeterminate(self) -> bool:
        return self.reps < 2

    def _medians(self, n: int) -> np.ndarray:
        batch = MonteCarloEvaluator(self.seed, n, self.workers).run_replicates(remainder_replicate, self.reps)
        check_exclusions(batch)
        return np.median(batch.values, axis=0)

    def build_cases(self) -> Tuple[CheckCase, ...]:
        smallest, largest = self.n_list[0], self.n_list[-1]
        low = self._medians(smallest)
        high = self._medians(largest)

        cases: List[CheckCase] = []
        for k, term in enumerate(TERMS):
            cases.append(CheckCase(
                parameters={'term': term, 'n_small': smallest, 'n_large': largest},
                kind='median',
                observed=float(high[k]),
                reference=float(low[k]),
                passed=bool(high[k] < low[k]),
            ))
        return tuple(cases)


def verify_remainder_terms(n_list: Sequence[int], reps: int, seed: int = 0,
                           workers: int = DEFAULT_WORKERS) -> LemmaCheckReport:
    return RemainderCheck(n_list, reps, seed, workers).run()
