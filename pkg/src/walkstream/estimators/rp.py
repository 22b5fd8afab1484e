"""Average return probability from sampled walks."""

import logging
import math
from typing import Callable, List, Sequence

from ..core.graph import Walk
from ..core.stream import Stream
from ..errors import ConfigError
from ..sampling.config import SamplerConfig
from ..sampling.walks import simulate_walks

logger = logging.getLogger(__name__)

Sampler = Callable[[Stream, SamplerConfig], List[Walk]]


def check_epsilon(epsilon: float) -> None:
    if not 0.0 < epsilon < 0.5:
        raise ConfigError(f"epsilon must lie in (0, 1/2), got {epsilon}")


def batch_size(epsilon: float, D: float) -> int:
    """``b = ceil(D / eps^2)``."""
    check_epsilon(epsilon)
    return math.ceil(D / epsilon ** 2)


def return_fraction(walks: Sequence[Walk]) -> float:
    """Fraction of walks that end where they started."""
    if not walks:
        raise ConfigError("Return fraction of an empty batch")
    return sum(1 for w in walks if w.end == w.start) / len(walks)


def approx_rp(stream: Stream,
              k: int,
              epsilon: float,
              cfg: SamplerConfig,
              sampler: Sampler = simulate_walks) -> float:
    """Estimate ``rp(G) = (1/n) sum_u p^k_u(u)`` to within ``epsilon``.

    Draws ``b = ceil(D / eps^2)`` walks of length k from uniform starts and
    reports how many return. The sampler's FAIL (:class:`SamplingFailed`)
    reaches the caller unchanged.
    """
    b = batch_size(epsilon, cfg.D)
    run_cfg = cfg.replace(k=k, epsilon=epsilon, b=b)
    walks = sampler(stream, run_cfg)
    estimate = return_fraction(walks[:b])
    logger.info("approx_rp: k=%d eps=%g b=%d estimate=%.4f", k, epsilon, b, estimate)
    return estimate
