"""
Analytic inequalities behind the tail bound for normal spacings

Each evaluator returns both sides so that a report shows the margin, not just
a verdict.
"""
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from analytics.normal import log_upper_tail, std_normal_pdf, std_normal_upper_tail
from config.settings import (
    MILLS_GRID_HIGH,
    MILLS_GRID_LOW,
    MILLS_GRID_POINTS,
    MONOTONICITY_EPS,
    MONOTONICITY_POINTS,
    RATIO_EPS_MAX,
    RATIO_GRID_EPS,
    RATIO_GRID_X,
    RATIO_X_MAX,
)
from utils.errors import DomainError

MONOTONICITY_TOLERANCE = 1e-12


@dataclass(frozen=True)
class InequalityCheck:
    """
    One evaluation of an inequality

    direction is '>=' (lhs >= rhs), '<=' (lhs <= rhs) or '<<' (lhs < mid < rhs).
    """
    name: str
    x: float
    eps: Optional[float]
    lhs: float
    rhs: float
    holds: bool
    direction: str
    mid: Optional[float] = None

    @property
    def margin(self) -> float:
        if self.direction == '>=':
            return self.lhs - self.rhs
        if self.direction == '<=':
            return self.rhs - self.lhs
        return min(self.mid - self.lhs, self.rhs - self.mid)

    def to_dict(self) -> dict:
        return {
            'name': self.name,
            'x': self.x,
            'eps': self.eps,
            'lhs': self.lhs,
            'mid': self.mid,
            'rhs': self.rhs,
            'direction': self.direction,
            'holds': self.holds,
            'margin': self.margin,
        }


def _positive(value: float, name: str) -> float:
    value = float(value)
    if not math.isfinite(value) or value <= 0.0:
        raise DomainError(f"{name} must be a positive finite number, got {value!r}")
    return value


def eval_gap_bound(x: float, eps: float) -> InequalityCheck:
    """Phi(x + eps/x) - Phi(x) >= eps * phi(x + eps/x) / x"""
    x = _positive(x, "x")
    eps = _positive(eps, "eps")
    shifted = x + eps / x

    # difference of upper tails: no cancellation against 1
    lhs = std_normal_upper_tail(x) - std_normal_upper_tail(shifted)
    rhs = eps * std_normal_pdf(shifted) / x

    return InequalityCheck('gap_bound', x, eps, lhs, rhs, lhs >= rhs, '>=')


def eval_mills_bounds(x: float) -> InequalityCheck:
    """x phi(x) / (1 + x^2) < 1 - Phi(x) < phi(x) / x"""
    x = _positive(x, "x")
    density = std_normal_pdf(x)

    lhs = x * density / (1.0 + x * x)
    mid = std_normal_upper_tail(x)
    rhs = density / x

    return InequalityCheck('mills_bounds', x, None, lhs, rhs, lhs < mid < rhs, '<<', mid=mid)


def eval_ratio_bound(x: float, eps: float) -> InequalityCheck:
    """(Phi(x + eps/x) - Phi(x)) / (1 - Phi(x)) >= eps * exp(-eps^2 / (2 x^2) - eps)"""
    x = _positive(x, "x")
    eps = _positive(eps, "eps")
    shifted = x + eps / x

    lhs = -math.expm1(log_upper_tail(shifted) - log_upper_tail(x))
    rhs = eps * math.exp(-0.5 * eps * eps / (x * x) - eps)

    return InequalityCheck('ratio_bound', x, eps, lhs, rhs, lhs >= rhs, '>=')


def eval_combined_ratio_bound(x: float, eps: float) -> InequalityCheck:
    """(1 - Phi(x + eps/x)) / (1 - Phi(x)) <= 1 - eps * exp(-1.5 eps), any x > 0"""
    x = _positive(x, "x")
    eps = _positive(eps, "eps")

    lhs = math.exp(log_upper_tail(x + eps / x) - log_upper_tail(x))
    rhs = 1.0 - eps * math.exp(-1.5 * eps)

    return InequalityCheck('combined_ratio_bound', x, eps, lhs, rhs, lhs <= rhs, '<=')


def eval_tail_ratio_monotonicity(eps: float, points: int = MONOTONICITY_POINTS) -> InequalityCheck:
    """
    Finite-difference sign check: x -> (1 - Phi(x + eps/x)) / (1 - Phi(x))
    is nondecreasing on (0, sqrt(eps)]

    Works on the log ratio, which stays finite where the ratio underflows.
    lhs is the smallest increment seen, rhs the (negative) tolerance.
    """
    eps = _positive(eps, "eps")
    if points < 2:
        raise DomainError(f"points must be at least 2, got {points}")

    root = math.sqrt(eps)
    xs = np.linspace(root / points, root, points)
    log_ratio = log_upper_tail(xs + eps / xs) - log_upper_tail(xs)
    smallest_step = float(np.min(np.diff(log_ratio)))

    return InequalityCheck(
        'tail_ratio_monotone', root, eps, smallest_step, -MONOTONICITY_TOLERANCE,
        smallest_step >= -MONOTONICITY_TOLERANCE, '>='
    )


def lemma31_bound(eps: float, m: int) -> float:
    """
    (1 - eps * exp(-1.5 eps))^m, the tail bound for Z_(i)(Z_(i+1) - Z_(i)) > eps
    with m = n - i observations above Z_(i)
    """
    eps = _positive(eps, "eps")
    if int(m) != m or m < 1:
        raise DomainError(f"m must be an integer >= 1, got {m!r}")

    base = eps * math.exp(-1.5 * eps)
    return math.exp(int(m) * math.log1p(-base))


def mills_grid() -> np.ndarray:
    return np.geomspace(MILLS_GRID_LOW, MILLS_GRID_HIGH, MILLS_GRID_POINTS)


def ratio_grid() -> List[tuple]:
    xs = np.linspace(RATIO_X_MAX / RATIO_GRID_X, RATIO_X_MAX, RATIO_GRID_X)
    epss = np.linspace(RATIO_EPS_MAX / RATIO_GRID_EPS, RATIO_EPS_MAX, RATIO_GRID_EPS)
    return [(float(x), float(e)) for x in xs for e in epss]


def inequality_suite(monotonicity_eps: Sequence[float] = MONOTONICITY_EPS) -> List[InequalityCheck]:
    """Every analytic inequality on its grid; no simulation involved"""
    checks = [eval_mills_bounds(float(x)) for x in mills_grid()]

    for x, eps in ratio_grid():
        checks.append(eval_gap_bound(x, eps))
        checks.append(eval_ratio_bound(x, eps))
        checks.append(eval_combined_ratio_bound(x, eps))

    checks.extend(eval_tail_ratio_monotonicity(eps) for eps in monotonicity_eps)
    return checks
