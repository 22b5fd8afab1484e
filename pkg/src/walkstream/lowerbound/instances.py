"""
Hard instances embedding the Indexing problem in a random-order stream.

Alice holds ``x`` and Bob holds ``I``. A uniform permutation ``pi`` and a cut
``J`` split the stream: Alice's edges come first in ``pi`` order, then Bob's
edge pointing at ``I``, then edges labelled by a uniform guess string ``y``.
Because ``x`` and ``y`` are both uniform, the result is a uniformly ordered
stream of a random graph.

Two families are built:

* ``digraph``: ``beta*n`` vertices ``a_i`` funnel into ``b``, ``b -> c_I``,
  each ``c_i`` points at ``d_0`` or ``d_1``, and ``{d_z, e_z}`` are 2-loops.
* ``chosen-vertex``: undirected; ``a - b_I`` plus one edge from each ``b_i``
  to ``c_0`` or ``c_1``, with ``n - 3`` middle vertices ``b_i``.

Indices are zero-based: ``0 <= I < len(x)``.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from ..core.graph import Edge, Graph, edge_key
from ..core.stream import Stream
from ..errors import ConfigError
from ..utils.rng import STREAM_KEY, generator

logger = logging.getLogger(__name__)

InstanceKind = Literal["digraph", "chosen-vertex"]


class IndexingInput(BaseModel):
    """Alice's bit string and Bob's index."""

    model_config = ConfigDict(frozen=True)

    x: Tuple[int, ...]
    I: int

    @field_validator("x")
    @classmethod
    def _bits(cls, x: Tuple[int, ...]) -> Tuple[int, ...]:
        if not x:
            raise ValueError("x must have at least one bit")
        if any(bit not in (0, 1) for bit in x):
            raise ValueError("x must be a bit string")
        return x

    @model_validator(mode="after")
    def _index_in_range(self) -> "IndexingInput":
        if not 0 <= self.I < len(self.x):
            raise ValueError(f"I={self.I} outside 0..{len(self.x) - 1}")
        return self

    @property
    def n(self) -> int:
        return len(self.x)

    @property
    def answer(self) -> int:
        return self.x[self.I]


def random_indexing_input(n: int, rng: np.random.Generator) -> IndexingInput:
    """Uniform ``x`` in {0,1}^n and uniform ``I``."""
    return IndexingInput(x=tuple(rng.integers(0, 2, size=n).tolist()), I=int(rng.integers(0, n)))


@dataclass(frozen=True)
class PublicInstance:
    """Everything an algorithm under test may see."""
    kind: InstanceKind
    stream: Stream
    sinks: Dict[int, Tuple[int, ...]]
    start_vertex: Optional[int] = None

    @property
    def m(self) -> int:
        return self.stream.m

    @property
    def directed(self) -> bool:
        return self.stream.directed

    def sinks_for(self, z: int) -> Tuple[int, ...]:
        return self.sinks[z]


@dataclass(frozen=True)
class GroundTruth:
    """The hidden side of an instance: inputs, shared randomness and vertex roles."""
    x: Tuple[int, ...]
    I: int
    J: int
    pi: Tuple[int, ...]
    y: Tuple[int, ...]
    roles: Dict[str, Tuple[int, ...]] = field(repr=False)
    event_holds: bool = False

    @property
    def hidden_bit(self) -> int:
        return self.x[self.I]


@dataclass(frozen=True)
class HardInstance:
    kind: InstanceKind
    graph: Graph
    public: PublicInstance
    truth: GroundTruth
    beta: Optional[int] = None

    @property
    def stream(self) -> Stream:
        return self.public.stream

    @property
    def hidden_bit(self) -> int:
        return self.truth.hidden_bit

    @property
    def J(self) -> int:
        return self.truth.J

    @property
    def pi(self) -> Tuple[int, ...]:
        return self.truth.pi

    @property
    def y(self) -> Tuple[int, ...]:
        return self.truth.y

    @property
    def labeled_vertices(self) -> Dict[str, Tuple[int, ...]]:
        return self.truth.roles


def _split_edges(x: Tuple[int, ...], I: int, pi: np.ndarray, J: int, y: np.ndarray,
                 source: List[int], sink: List[int], pointer: Edge) -> List[Edge]:
    """Alice's edges, Bob's pointer edge, then the guessed edges, in protocol order."""
    order = pi.tolist()
    guesses = y.tolist()
    alice = [(source[p], sink[x[p]]) for p in order[:J]]
    bob = [(source[p], sink[guesses[p]]) for p in order[J:]]
    return alice + [pointer] + bob


def _stream(edges: List[Edge], times: np.ndarray, rng: np.random.Generator, directed: bool, n: int) -> Stream:
    u = np.array([e[0] for e in edges], dtype=np.int64)
    v = np.array([e[1] for e in edges], dtype=np.int64)
    tiebreak = rng.integers(0, 2 ** 64, size=len(edges), dtype=np.uint64)
    return Stream(u, v, times, tiebreak, directed=directed, n=n)


def _event_holds(x: Tuple[int, ...], I: int, pi: np.ndarray, J: int, y: np.ndarray) -> bool:
    """Whether the edge leaving Bob's index points at ``x_I``."""
    position = int(np.flatnonzero(pi == I)[0])
    return position < J or int(y[I]) == x[I]


def gen_digraph_instance(n: int, beta: int, indexing: IndexingInput, seed: int) -> HardInstance:
    """The directed funnel instance with ``beta*n + 1 + n + 4`` vertices.

    The n+1 ordered edges receive sorted uniform timestamps in protocol order;
    the fixed edges (the ``a_i -> b`` star and the two 2-loops) receive
    independent uniform timestamps from the same generator.
    """
    if n < 1 or beta < 1:
        raise ConfigError(f"Need n >= 1 and beta >= 1, got n={n}, beta={beta}")
    if indexing.n != n:
        raise ConfigError(f"Indexing input has {indexing.n} bits, expected {n}")
    rng = generator(seed, STREAM_KEY)
    x, I = indexing.x, indexing.I

    a = list(range(beta * n))
    b = beta * n
    c = list(range(b + 1, b + 1 + n))
    d0, e0, d1, e1 = range(b + 1 + n, b + 5 + n)
    num_vertices = b + 5 + n

    pi = rng.permutation(n)
    J = int(rng.integers(0, n + 1))
    y = rng.integers(0, 2, size=n)

    ordered = _split_edges(x, I, pi, J, y, c, [d0, d1], (b, c[I]))
    fixed = [(ai, b) for ai in a] + [(d0, e0), (e0, d0), (d1, e1), (e1, d1)]
    times = np.concatenate([np.sort(rng.random(len(ordered))), rng.random(len(fixed))])
    edges = ordered + fixed
    stream = _stream(edges, times, rng, directed=True, n=num_vertices)
    graph = Graph.from_edges(num_vertices, edges, directed=True)

    roles = {"a": tuple(a), "b": (b,), "c": tuple(c), "d0": (d0,), "e0": (e0,), "d1": (d1,), "e1": (e1,)}
    truth = GroundTruth(x=x, I=I, J=J, pi=tuple(pi.tolist()), y=tuple(y.tolist()), roles=roles,
                        event_holds=_event_holds(x, I, pi, J, y))
    public = PublicInstance("digraph", stream, {0: (d0, e0), 1: (d1, e1)})
    logger.debug("digraph instance n=%d beta=%d J=%d event=%s", n, beta, J, truth.event_holds)
    return HardInstance("digraph", graph, public, truth, beta=beta)


def gen_chosen_vertex_instance(n: int, indexing: IndexingInput, seed: int) -> HardInstance:
    """The undirected instance on n vertices: ``a``, ``b_0..b_{n-4}``, ``c_0``, ``c_1``.

    Walks must start from ``a``, which is published as the start vertex.
    """
    if n < 4:
        raise ConfigError(f"Need n >= 4, got n={n}")
    middle = n - 3
    if indexing.n != middle:
        raise ConfigError(f"Indexing input has {indexing.n} bits, expected n-3={middle}")
    rng = generator(seed, STREAM_KEY)
    x, I = indexing.x, indexing.I

    a = 0
    b = list(range(1, 1 + middle))
    c0, c1 = n - 2, n - 1

    pi = rng.permutation(middle)
    J = int(rng.integers(0, middle + 1))
    y = rng.integers(0, 2, size=middle)

    ordered = [edge_key(u, v) for u, v in _split_edges(x, I, pi, J, y, b, [c0, c1], (a, b[I]))]
    stream = _stream(ordered, np.sort(rng.random(len(ordered))), rng, directed=False, n=n)
    graph = Graph.from_edges(n, ordered)

    roles = {"a": (a,), "b": tuple(b), "c0": (c0,), "c1": (c1,)}
    truth = GroundTruth(x=x, I=I, J=J, pi=tuple(pi.tolist()), y=tuple(y.tolist()), roles=roles,
                        event_holds=_event_holds(x, I, pi, J, y))
    public = PublicInstance("chosen-vertex", stream, {0: (c0,), 1: (c1,)}, start_vertex=a)
    return HardInstance("chosen-vertex", graph, public, truth)
