"""
walkstream: random walks, return probability and PageRank from a single pass
over a random-order edge stream
"""

__version__ = "0.1.0"

from .core.graph import Graph, Walk
from .core.stream import Stream, make_stream
from .core.templates import WalkTemplate
from .errors import SamplingFailed, WalkStreamError
from .estimators import approx_pagerank, approx_rp
from .sampling import SamplerConfig, samples_with_reset, simulate_walks, walk_from_template

__all__ = [
    '__version__', 'Graph', 'Walk', 'Stream', 'make_stream', 'WalkTemplate',
    'SamplerConfig', 'walk_from_template', 'samples_with_reset', 'simulate_walks',
    'approx_rp', 'approx_pagerank', 'WalkStreamError', 'SamplingFailed',
]
