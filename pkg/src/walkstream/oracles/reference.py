"""
Full-memory reference consumers of a stream.

These store the entire stream and answer exactly. They stand in for the
streaming algorithms where a desk-scale run of the streaming version is out of
reach, and they are the "algorithm" side of the lower-bound protocols.
"""

import logging
from typing import TYPE_CHECKING, Any, List, Optional, Sequence

import numpy as np

from ..core.graph import Graph, Walk
from ..core.stream import Stream
from ..errors import GraphError, OracleError
from ..sampling.config import SamplerConfig
from ..utils.rng import SubstreamFactory
from .exact import target_members

if TYPE_CHECKING:
    from ..lowerbound.instances import PublicInstance

logger = logging.getLogger(__name__)


def store(stream: Stream) -> Graph:
    """Read the stream once and keep every edge."""
    return Graph.from_edges(stream.n, [event.edge for event in stream], directed=stream.directed)


class FullMemoryWalkSampler:
    """Samples exact random walks after reading the whole stream.

    Called as ``sampler(stream, cfg)`` it returns ``cfg.b`` independent
    ``cfg.k``-step walks from uniform start vertices, which makes it a drop-in
    ``sampler`` for the estimators. With ``start`` set every walk begins there.
    Directed streams are walked along out-edges.
    """

    def __init__(self, start: Optional[int] = None):
        self.start = start

    def __call__(self, stream: Stream, cfg: SamplerConfig) -> List[Walk]:
        graph = store(stream)
        rng = SubstreamFactory(cfg.seed).master()
        return [self.sample(graph, cfg.k, rng) for _ in range(cfg.b)]

    def sample(self, graph: Graph, k: int, rng: np.random.Generator, start: Optional[int] = None) -> Walk:
        if start is None:
            start = self.start
        u = int(rng.integers(0, graph.n)) if start is None else start
        vertices = [u]
        for step in range(k):
            neighbors = graph.neighbors(u)
            if not neighbors:
                raise GraphError(f"Walk reached vertex {u} with no neighbours at step {step + 1}")
            u = neighbors[int(rng.integers(0, len(neighbors)))]
            vertices.append(u)
        return Walk(tuple(vertices))


def stream_pagerank(stream: Stream, alpha: float, tol: float = 1e-12, max_iter: int = 100000) -> np.ndarray:
    """PageRank of the streamed graph by power iteration over the edge arrays.

    Each iteration costs O(n + m), so this runs on lower-bound instances far
    beyond the dense oracle's reach.
    """
    if not 0.0 < alpha < 1.0:
        raise OracleError(f"Reset probability must lie in (0, 1), got {alpha}")
    edges = np.array([event.edge for event in stream], dtype=np.int64).reshape(-1, 2)
    src, dst = edges[:, 0], edges[:, 1]
    if not stream.directed:
        src, dst = np.concatenate([src, dst]), np.concatenate([dst, src])
    n = stream.n
    out_degree = np.bincount(src, minlength=n).astype(float)
    if np.any(out_degree == 0):
        raise OracleError("PageRank of a graph with dangling vertices is not defined here")
    p = np.full(n, 1.0 / n)
    gap = float("inf")
    for _ in range(max_iter):
        nxt = alpha / n + (1.0 - alpha) * np.bincount(dst, weights=p[src] / out_degree[src], minlength=n)
        gap = float(np.abs(nxt - p).sum())
        p = nxt
        if gap < tol:
            break
    else:
        raise OracleError(f"PageRank did not converge in {max_iter} iterations (gap {gap:.3g}, tol {tol:.3g})")
    return p / p.sum()


class FullMemoryWalk:
    """Protocol algorithm: one exact k-step walk from the instance's start (uniform if none)."""

    def __init__(self, k: int):
        self.k = k
        self._sampler = FullMemoryWalkSampler()

    def __call__(self, instance: "PublicInstance", rng: np.random.Generator) -> Walk:
        graph = store(instance.stream)
        return self._sampler.sample(graph, self.k, rng, start=instance.start_vertex)


class FullMemoryPageRank:
    """Protocol algorithm: exact ``p_alpha(T)`` of the streamed graph.

    Without a target the mass of the instance's bit-0 sinks is reported.
    """

    def __init__(self, alpha: float, target: Optional[Sequence[int]] = None):
        if not 0.0 < alpha < 1.0:
            raise OracleError(f"Reset probability must lie in (0, 1), got {alpha}")
        self.alpha = alpha
        self.target = None if target is None else tuple(target)

    def __call__(self, instance: "PublicInstance", rng: np.random.Generator) -> float:
        p = stream_pagerank(instance.stream, self.alpha)
        chosen = self.target if self.target is not None else instance.sinks_for(0)
        return float(p[target_members(chosen, len(p))].sum())


class ConstantAnswer:
    """Protocol algorithm that ignores the stream and always outputs ``value``."""

    def __init__(self, value: Any):
        self.value = value

    def __call__(self, instance: "PublicInstance", rng: np.random.Generator) -> Any:
        return self.value
