"""
Base class and report records for every verification check
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from config.settings import DEFAULT_WORKERS
from evaluation.statistical_evaluator import convert_to_native


@dataclass(frozen=True)
class CheckCase:
    """
    One cell of a check: what was observed against what it is compared to

    kind tells how to read the pair: 'probability' (empirical frequency vs
    analytic bound, with a binomial standard error), 'ks' (KS statistic vs
    critical value), 'cdf' (empirical vs limit CDF), 'margin' (smallest
    inequality margin vs 0), 'median' or 'value'.
    """
    parameters: Dict[str, object]
    kind: str
    observed: float
    reference: float
    passed: bool
    standard_error: Optional[float] = None

    def to_dict(self) -> dict:
        return convert_to_native({
            'parameters': dict(self.parameters),
            'kind': self.kind,
            'observed': self.observed,
            'reference': self.reference,
            'standard_error': self.standard_error,
            'passed': self.passed,
        })


@dataclass(frozen=True)
class LemmaCheckReport:
    name: str
    cases: Tuple[CheckCase, ...]
    overall_pass: bool
    indeterminate: bool = False
    config: Dict[str, object] = field(default_factory=dict)
    notes: str = ""

    def to_dict(self) -> dict:
        return convert_to_native({
            'name': self.name,
            'config': dict(self.config),
            'cases': [case.to_dict() for case in self.cases],
            'overall_pass': self.overall_pass,
            'indeterminate': self.indeterminate,
            'notes': self.notes,
        })


class BaseCheck(ABC):
    """Abstract base class for the checks run by `verify`"""

    name = 'check'

    def __init__(self, seed: int = 0, workers: int = DEFAULT_WORKERS):
        self.seed = seed
        self.workers = workers

    @abstractmethod
    def config(self) -> Dict[str, object]:
        """Parameters that reproduce this check"""
        pass

    @abstractmethod
    def build_cases(self) -> Tuple[CheckCase, ...]:
        """Evaluate every case of the check"""
        pass

    def is_indeterminate(self) -> bool:
        return False

    def notes(self) -> str:
        return ""

    def run(self) -> LemmaCheckReport:
        cases = tuple(self.build_cases())
        return LemmaCheckReport(
            name=self.name,
            cases=cases,
            overall_pass=all(case.passed for case in cases),
            indeterminate=self.is_indeterminate(),
            config=self.config(),
            notes=self.notes(),
        )

    def __repr__(self):
        return f"{self.__class__.__name__}({self.config()})"
