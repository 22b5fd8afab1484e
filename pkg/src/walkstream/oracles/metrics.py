"""
Distribution metrics

Distances between probability laws given either as aligned numpy vectors or
as mappings from outcomes to probabilities (missing outcomes count as zero),
plus the statistical comparators the sampler tests lean on.
"""

from collections import Counter
from typing import Callable, Hashable, Mapping, Sequence, Tuple, Union

import numpy as np
from scipy import stats

from ..errors import OracleError

Distribution = Union[np.ndarray, Mapping[Hashable, float]]


class DistributionMetric:
    """Distance wrapper giving one interface to the supported metrics."""

    def __init__(self, metric_name: str = 'tv'):
        """Initialize distribution metric.

        Args:
            metric_name: Name of the metric to use ('tv' or 'l1')
        """
        self.metric_name = metric_name
        self.metric_func = self._get_metric_function(metric_name)

    def __call__(self, p: Distribution, q: Distribution) -> float:
        return self.metric_func(p, q)

    def _get_metric_function(self, name: str) -> Callable:
        metrics = {
            'tv': tv_distance,
            'l1': l1_distance,
        }

        if name not in metrics:
            raise OracleError(f"Unsupported metric: {name}. Available metrics: {list(metrics.keys())}")

        return metrics[name]


def align(p: Distribution, q: Distribution) -> Tuple[np.ndarray, np.ndarray]:
    """Both laws as vectors over one outcome universe."""
    if isinstance(p, Mapping) and isinstance(q, Mapping):
        p_k = getattr(p, "k", None)
        q_k = getattr(q, "k", None)
        if p_k is not None and q_k is not None and p_k != q_k:
            raise OracleError(f"Walk laws of different lengths ({p_k} and {q_k})")
        universe = list(dict.fromkeys([*p.keys(), *q.keys()]))
        return (np.array([p[x] if x in p else 0.0 for x in universe], dtype=float),
                np.array([q[x] if x in q else 0.0 for x in universe], dtype=float))
    if isinstance(p, Mapping) or isinstance(q, Mapping):
        raise OracleError("Cannot compare a mapping with a vector")
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    if p.shape != q.shape:
        raise OracleError(f"Distributions live on different universes: shapes {p.shape} and {q.shape}")
    return p, q


def l1_distance(p: Distribution, q: Distribution) -> float:
    p, q = align(p, q)
    return float(np.abs(p - q).sum())


def tv_distance(p: Distribution, q: Distribution) -> float:
    """Total variation distance: half the L1 distance."""
    return 0.5 * l1_distance(p, q)


def independence_gap(pairs: Sequence[Tuple[Hashable, Hashable]], metric: str = 'tv') -> float:
    """Distance between the empirical joint law of pairs and the product of its marginals."""
    if not pairs:
        raise OracleError("Independence gap of an empty sample")
    total = len(pairs)
    joint = {cell: count / total for cell, count in Counter(pairs).items()}
    left = Counter(a for a, _ in pairs)
    right = Counter(b for _, b in pairs)
    product = {(a, b): (ca / total) * (cb / total) for a, ca in left.items() for b, cb in right.items()}
    return DistributionMetric(metric)(joint, product)


def uniformity_pvalue(counts: Sequence[int]) -> float:
    """Chi-square p-value of observed counts against the uniform law."""
    counts = np.asarray(counts, dtype=float)
    if counts.size < 2:
        raise OracleError("Uniformity test needs at least two categories")
    return float(stats.chisquare(counts).pvalue)


def same_law_pvalue(a: Sequence[float], b: Sequence[float]) -> float:
    """Two-sample Kolmogorov-Smirnov p-value."""
    return float(stats.ks_2samp(a, b).pvalue)
