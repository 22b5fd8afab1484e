"""
PageRank mass of a vertex set from sampled walks.

PageRank with reset probability alpha is the law of the endpoint of a walk
from a uniform start whose length J is geometric, ``P[J = j] = alpha (1 -
alpha)^j``. Lengths past ``K = ceil((2/alpha) ln(1/eps))`` carry at most
``eps/2`` of the mass, so every walk is sampled at length K and cut down.
"""

import logging
import math
from typing import Callable, Sequence

import numpy as np

from ..core.graph import Walk
from ..core.stream import Stream
from ..errors import ConfigError
from ..oracles.exact import Target
from ..sampling.config import SamplerConfig
from ..sampling.walks import simulate_walks
from ..utils.rng import SubstreamFactory
from .rp import Sampler, batch_size, check_epsilon

logger = logging.getLogger(__name__)


def check_alpha(alpha: float) -> None:
    if not 0.0 < alpha < 1.0:
        raise ConfigError(f"alpha must lie in (0, 1), got {alpha}")


def pagerank_walk_cap(alpha: float, epsilon: float) -> int:
    """``K = ceil((2/alpha) ln(1/eps))``."""
    check_alpha(alpha)
    check_epsilon(epsilon)
    return math.ceil((2.0 / alpha) * math.log(1.0 / epsilon))


def membership(target: Target) -> Callable[[int], bool]:
    if callable(target):
        return target
    members = frozenset(int(v) for v in target)
    return members.__contains__


def pagerank_from_walks(walks: Sequence[Walk],
                        alpha: float,
                        target: Target,
                        b: int,
                        K: int,
                        rng: np.random.Generator) -> float:
    """Geometric-length mixture over K+1 blocks of b walks.

    Block j is ``walks[b*j : b*(j+1)]`` cut to j steps. Each of b trials draws
    J and, unless ``J > K``, adds ``1/b`` when the trial's walk in block J
    ends in the target.
    """
    check_alpha(alpha)
    if b < 1:
        raise ConfigError(f"b must be positive, got {b}")
    if len(walks) < b * (K + 1):
        raise ConfigError(f"Need {b * (K + 1)} walks for {K + 1} blocks of {b}, got {len(walks)}")
    in_target = membership(target)
    lengths = rng.geometric(alpha, size=b) - 1
    hits = 0
    for i, j in enumerate(lengths.tolist()):
        if j > K:
            continue
        if in_target(walks[b * j + i].truncate(j).end):
            hits += 1
    return hits / b


def approx_pagerank(stream: Stream,
                    alpha: float,
                    target: Target,
                    epsilon: float,
                    cfg: SamplerConfig,
                    sampler: Sampler = simulate_walks) -> float:
    """Estimate ``p_alpha(T)`` to within ``epsilon``.

    Requests ``b (K + 1)`` walks of length K from the sampler; its FAIL
    propagates.
    """
    K = pagerank_walk_cap(alpha, epsilon)
    b = batch_size(epsilon, cfg.D)
    run_cfg = cfg.replace(k=K, epsilon=epsilon, b=b * (K + 1))
    walks = sampler(stream, run_cfg)
    estimate = pagerank_from_walks(walks, alpha, target, b, K, SubstreamFactory(cfg.seed).estimator())
    logger.info("approx_pagerank: alpha=%g eps=%g K=%d b=%d estimate=%.4f", alpha, epsilon, K, b, estimate)
    return estimate
