"""
Test-bed graph families.

Every family is built with networkx and converted to :class:`Graph`, so the
result always passes :func:`validate_graph`.
"""

import logging
from typing import Callable, Dict, Optional

import networkx as nx

from ..errors import GraphError
from ..utils.rng import GENERATOR_KEY, generator
from .graph import Graph

logger = logging.getLogger(__name__)


def _path(n: int, d: Optional[int], seed: int) -> nx.Graph:
    return nx.path_graph(n)


def _cycle(n: int, d: Optional[int], seed: int) -> nx.Graph:
    if n < 3:
        raise GraphError(f"A simple cycle needs n >= 3, got {n}")
    return nx.cycle_graph(n)


def _complete(n: int, d: Optional[int], seed: int) -> nx.Graph:
    return nx.complete_graph(n)


def _star(n: int, d: Optional[int], seed: int) -> nx.Graph:
    """Center 0 joined to n-1 leaves."""
    if n < 2:
        raise GraphError(f"A star needs n >= 2, got {n}")
    return nx.star_graph(n - 1)


def _random_regular(n: int, d: Optional[int], seed: int) -> nx.Graph:
    if d is None:
        raise GraphError("random-regular needs a degree d")
    if not 0 < d < n:
        raise GraphError(f"random-regular needs 0 < d < n, got d={d}, n={n}")
    if (n * d) % 2:
        raise GraphError(f"random-regular needs n*d even, got n={n}, d={d}")
    nx_seed = int(generator(seed, GENERATOR_KEY).integers(0, 2 ** 32))
    try:
        return nx.random_regular_graph(d, n, seed=nx_seed)
    except nx.NetworkXError as e:
        raise GraphError(f"random-regular generation failed for n={n}, d={d}: {e}") from e


FAMILIES: Dict[str, Callable[[int, Optional[int], int], nx.Graph]] = {
    'path': _path,
    'cycle': _cycle,
    'complete': _complete,
    'star': _star,
    'random-regular': _random_regular,
}


def generate_graph(family: str,
                   n: int,
                   d: Optional[int] = None,
                   components: int = 2,
                   base: str = 'complete',
                   seed: int = 0) -> Graph:
    """Build a graph from a named family; deterministic for fixed arguments.

    Args:
        family: One of ``FAMILIES`` or ``'disjoint-union'``
        n: Vertex count (per component for disjoint unions)
        d: Degree, random-regular only
        components: Number of copies in a disjoint union
        base: Family of each copy in a disjoint union
        seed: Seed for random families
    """
    if n < 1:
        raise GraphError(f"n must be positive, got {n}")
    if family == 'disjoint-union':
        if base not in FAMILIES:
            raise GraphError(f"Unknown base family {base!r}")
        if components < 1:
            raise GraphError(f"components must be positive, got {components}")
        parts = [FAMILIES[base](n, d, seed + i) for i in range(components)]
        nx_graph = nx.disjoint_union_all(parts)
    elif family in FAMILIES:
        nx_graph = FAMILIES[family](n, d, seed)
    else:
        raise GraphError(f"Unknown graph family {family!r}. Available: {sorted(FAMILIES) + ['disjoint-union']}")
    graph = Graph.from_networkx(nx_graph)
    logger.debug("Generated %s graph: %r", family, graph)
    return graph
