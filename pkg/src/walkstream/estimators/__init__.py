from .pagerank import approx_pagerank, pagerank_from_walks, pagerank_walk_cap
from .request import EstimateResult, EstimatorRequest, run_estimator
from .rp import approx_rp, batch_size, return_fraction

__all__ = [
    'approx_rp', 'approx_pagerank', 'batch_size', 'return_fraction',
    'pagerank_from_walks', 'pagerank_walk_cap',
    'EstimatorRequest', 'EstimateResult', 'run_estimator',
]
