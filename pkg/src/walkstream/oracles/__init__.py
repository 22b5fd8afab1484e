from .exact import (
    WalkDistribution,
    empirical_distribution,
    endpoint_distribution,
    exact_pagerank,
    exact_rp,
    exact_walk_distribution,
    pagerank_mass,
    solve_pagerank,
    transition_matrix,
    truncated_pagerank,
)
from .metrics import DistributionMetric, independence_gap, l1_distance, tv_distance, uniformity_pvalue
from .reference import ConstantAnswer, FullMemoryPageRank, FullMemoryWalk, FullMemoryWalkSampler, stream_pagerank

__all__ = [
    'WalkDistribution', 'exact_walk_distribution', 'empirical_distribution',
    'endpoint_distribution', 'exact_rp', 'exact_pagerank', 'solve_pagerank',
    'transition_matrix', 'truncated_pagerank', 'pagerank_mass',
    'DistributionMetric', 'tv_distance', 'l1_distance',
    'independence_gap', 'uniformity_pvalue',
    'FullMemoryWalkSampler', 'FullMemoryWalk', 'FullMemoryPageRank', 'ConstantAnswer',
    'stream_pagerank',
]
