"""
Gumbel calibration of the cluster index

Under i.i.d. normal data, n * I_n - log n is asymptotically standard Gumbel.
The test is upper-tailed: a large cluster index gives a small p-value. No
finite-n correction is applied.
"""
import math
from dataclasses import dataclass

from utils.errors import DomainError, SizeError


def _finite(x: float, name: str = "x") -> float:
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"{name} must be finite, got {x!r}")
    return x


def gumbel_cdf(x: float) -> float:
    """exp(-exp(-x))"""
    x = _finite(x)
    if -x > 709.0:  # exp(-x) overflows; the cdf is 0 to double precision
        return 0.0
    return math.exp(-math.exp(-x))


def gumbel_sf(x: float) -> float:
    """1 - exp(-exp(-x)) via expm1, so the far tail keeps its digits (~ e^-x)"""
    x = _finite(x)
    if -x > 709.0:
        return 1.0
    return -math.expm1(-math.exp(-x))


def gumbel_quantile(p: float) -> float:
    p = float(p)
    if not 0.0 < p < 1.0:
        raise DomainError(f"p must lie strictly inside (0, 1), got {p!r}")
    return -math.log(-math.log(p))


def half_limit_cdf(x: float) -> float:
    """exp(-exp(-x) / 2), the limit law of one side (positive or negative) of the sample"""
    x = _finite(x)
    if -x > 709.0:
        return 0.0
    return math.exp(-0.5 * math.exp(-x))


@dataclass(frozen=True)
class GumbelTest:
    n: int
    statistic: float
    x: float  # n * statistic - log n
    p_value: float

    def to_dict(self) -> dict:
        return {
            'n': self.n,
            'statistic': self.statistic,
            'x': self.x,
            'p_value': self.p_value,
        }


def centered_statistic(n: int, statistic: float) -> float:
    return n * statistic - math.log(n)


def cluster_test(n: int, statistic: float) -> GumbelTest:
    """Asymptotic upper-tail p-value of the cluster index against the normal null"""
    if int(n) != n or n < 2:
        raise SizeError(f"n must be an integer >= 2, got {n!r}")
    statistic = float(statistic)
    if not 0.0 < statistic <= 1.0:
        raise DomainError(f"statistic must lie in (0, 1], got {statistic!r}")

    n = int(n)
    x = centered_statistic(n, statistic)
    return GumbelTest(n=n, statistic=statistic, x=x, p_value=gumbel_sf(x))
