"""
Reproducible random substreams

Each replicate draws from its own Philox (counter-based) generator keyed by
(seed, replicate index), so a replicate's variates never depend on which
worker ran it or in what order.
"""
import numpy as np
from scipy import special

from utils.errors import DomainError

_MANTISSA = 2 ** 53


def substream(seed: int, replicate_index: int) -> np.random.Generator:
    sequence = np.random.SeedSequence(entropy=int(seed) & (2 ** 64 - 1),
                                      spawn_key=(int(replicate_index),))
    return np.random.Generator(np.random.Philox(sequence))


def open_uniforms(stream: np.random.Generator, n: int) -> np.ndarray:
    """Uniforms on the open interval (0, 1): (k + 1/2) / 2^53"""
    return (stream.integers(0, _MANTISSA, size=n, dtype=np.int64) + 0.5) / _MANTISSA


def sample_std_normal(stream: np.random.Generator, n: int) -> np.ndarray:
    """n standard normals by inverse CDF of the stream's uniforms"""
    if n < 1:
        raise DomainError(f"n must be at least 1, got {n}")
    return special.ndtri(open_uniforms(stream, n))
