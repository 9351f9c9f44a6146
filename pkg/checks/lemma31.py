"""
Monte Carlo check of the spacing tail bound

P[Z_(i)(Z_(i+1) - Z_(i)) > eps] <= (1 - eps e^{-1.5 eps})^(n-i)   for n/2 < i <= n-1
"""
from functools import partial
from typing import Dict, Sequence, Tuple

from analytics.inequalities import lemma31_bound
from checks.base_check import BaseCheck, CheckCase, LemmaCheckReport
from config.settings import DEFAULT_WORKERS, LEMMA_SLACK_SE
from evaluation.statistical_evaluator import MonteCarloEvaluator, standard_error
from simulation.replicates import lemma31_replicate
from utils.errors import DomainError


class Lemma31Check(BaseCheck):
    """Empirical exceedance frequency per (i, eps) against the analytic bound"""

    name = 'lemma31'

    def __init__(self, n: int, i_list: Sequence[int], eps_list: Sequence[float], reps: int,
                 seed: int = 0, workers: int = DEFAULT_WORKERS):
        super().__init__(seed, workers)
        self.n = int(n)
        self.i_list = tuple(int(i) for i in i_list)
        self.eps_list = tuple(float(e) for e in eps_list)
        self.reps = int(reps)

        if not self.i_list or not self.eps_list:
            raise DomainError("i_list and eps_list must be non-empty")
        for i in self.i_list:
            if not self.n / 2 < i <= self.n - 1:
                raise DomainError(f"i={i} is outside the bound's regime n/2 < i <= n-1 (n={self.n})")
        for eps in self.eps_list:
            if not eps > 0.0:
                raise DomainError(f"eps must be positive, got {eps}")
        if self.reps < 1:
            raise DomainError(f"reps must be at least 1, got {self.reps}")

    def config(self) -> Dict[str, object]:
        return {'n': self.n, 'i': list(self.i_list), 'eps': list(self.eps_list),
                'reps': self.reps, 'seed': self.seed}

    def is_indeterminate(self) -> bool:
        return self.reps < 2

    def build_cases(self) -> Tuple[CheckCase, ...]:
        replicate = partial(lemma31_replicate, i_list=self.i_list, eps_list=self.eps_list)
        batch = MonteCarloEvaluator(self.seed, self.n, self.workers).run_replicates(replicate, self.reps)
        frequencies = batch.values.mean(axis=0)

        cases = []
        for k, (i, eps) in enumerate((i, eps) for i in self.i_list for eps in self.eps_list):
            p_hat = float(frequencies[k])
            bound = lemma31_bound(eps, self.n - i)
            se = standard_error(p_hat, self.reps)
            cases.append(CheckCase(
                parameters={'n': self.n, 'i': i, 'eps': eps},
                kind='probability',
                observed=p_hat,
                reference=bound,
                standard_error=se,
                passed=p_hat <= bound + LEMMA_SLACK_SE * se,
            ))
        return tuple(cases)


def verify_lemma31(n: int, i_list: Sequence[int], eps: float, reps: int, seed: int = 0,
                   workers: int = DEFAULT_WORKERS) -> LemmaCheckReport:
    return Lemma31Check(n, i_list, [eps], reps, seed, workers).run()
