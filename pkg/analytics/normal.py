"""
Standard-normal primitives, Mills ratio and truncated-normal moments

Upper tails are always taken from the complementary error function (or its
scaled form), never as 1 - cdf.
"""
import logging
import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy import integrate, special

from config.settings import QUAD_LIMIT, TRUNCATED_ASYMPTOTIC_SWITCH
from utils.errors import DomainError

logger = logging.getLogger(__name__)

ArrayOrFloat = Union[float, np.ndarray]

_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)
_SQRT2 = math.sqrt(2.0)
_SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)


def _finite(z: ArrayOrFloat, name: str = "z") -> np.ndarray:
    arr = np.asarray(z, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} must be finite, got {z!r}")
    return arr


def _like(result: np.ndarray, arg: ArrayOrFloat) -> ArrayOrFloat:
    """Return a float for scalar arguments, an array otherwise"""
    if np.ndim(arg) == 0:
        return float(result)
    return result


def std_normal_pdf(z: ArrayOrFloat) -> ArrayOrFloat:
    arr = _finite(z)
    return _like(_INV_SQRT_2PI * np.exp(-0.5 * arr * arr), z)


def std_normal_cdf(z: ArrayOrFloat) -> ArrayOrFloat:
    arr = _finite(z)
    return _like(special.ndtr(arr), z)


def std_normal_upper_tail(z: ArrayOrFloat) -> ArrayOrFloat:
    """1 - Phi(z) without cancellation"""
    arr = _finite(z)
    return _like(0.5 * special.erfc(arr / _SQRT2), z)


def log_upper_tail(z: ArrayOrFloat) -> ArrayOrFloat:
    """log(1 - Phi(z)); finite far beyond the point where the tail underflows"""
    arr = _finite(z)
    return _like(special.log_ndtr(-arr), z)


def std_normal_quantile(p: ArrayOrFloat) -> ArrayOrFloat:
    arr = np.asarray(p, dtype=float)
    if not np.all((arr > 0.0) & (arr < 1.0)):
        raise DomainError(f"p must lie strictly inside (0, 1), got {p!r}")
    return _like(special.ndtri(arr), p)


def mills_ratio(z: ArrayOrFloat) -> ArrayOrFloat:
    """
    phi(z) / (1 - Phi(z)), the mean of a standard normal truncated below at z

    Uses erfcx so both numerator and denominator keep their common
    exp(-z^2/2) factor out of the division.
    """
    arr = _finite(z)
    return _like(_SQRT_2_OVER_PI / special.erfcx(arr / _SQRT2), z)


@dataclass(frozen=True)
class TruncatedNormalMoments:
    """Moments of Z given Z > threshold, Z standard normal"""
    threshold: float
    mean: float
    variance: float
    skewness: float  # third central moment / variance^(3/2)

    def to_dict(self) -> dict:
        return {
            'threshold': self.threshold,
            'mean': self.mean,
            'variance': self.variance,
            'skewness': self.skewness,
        }


def truncated_moments(z: float) -> TruncatedNormalMoments:
    """
    Mean, variance and skewness of the standard normal truncated below at z

    Closed form from the moment recursion m_k = (k-1) m_{k-2} + z^(k-1) * mills(z).
    Past TRUNCATED_ASYMPTOTIC_SWITCH the closed form loses digits to
    cancellation, so the moments come from the excess density instead.
    """
    z = float(_finite(z))

    if z > TRUNCATED_ASYMPTOTIC_SWITCH:
        return _excess_moments(z)

    lam = mills_ratio(z)
    variance = 1.0 + z * lam - lam * lam
    third = lam * (z * z - 1.0 - 3.0 * z * lam + 2.0 * lam * lam)
    skewness = third / variance ** 1.5

    return TruncatedNormalMoments(threshold=z, mean=lam, variance=variance, skewness=skewness)


def _excess_moments(z: float) -> TruncatedNormalMoments:
    """
    Moments via the scaled excess t = z * (Z - z), whose density is
    proportional to exp(-t - t^2 / (2 z^2)) on t > 0 (an Exp(1) for z -> inf)
    """
    inv_two_z2 = 0.5 / (z * z)

    def weight(t: float) -> float:
        return math.exp(-t - t * t * inv_two_z2)

    def moment(f) -> float:
        value, _ = integrate.quad(f, 0.0, np.inf, epsabs=0.0, epsrel=1e-12, limit=QUAD_LIMIT)
        return value

    total = moment(weight)
    centre = moment(lambda t: t * weight(t)) / total
    mu2 = moment(lambda t: (t - centre) ** 2 * weight(t)) / total
    mu3 = moment(lambda t: (t - centre) ** 3 * weight(t)) / total

    logger.debug("truncated moments at z=%g from the excess density", z)

    return TruncatedNormalMoments(
        threshold=z,
        mean=z + centre / z,
        variance=mu2 / (z * z),
        skewness=mu3 / mu2 ** 1.5,
    )
