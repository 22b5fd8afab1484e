"""
Random-order edge streams.

A random-order stream is modelled by giving every edge an independent uniform
timestamp in [0, 1) and presenting edges in ascending ``(t, tiebreak)`` order.
Windows ``sigma[lo, hi)`` select edges by timestamp.
"""

import logging
from typing import Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from ..errors import StreamError
from ..utils.rng import STREAM_KEY, generator
from .graph import Edge, Graph

logger = logging.getLogger(__name__)


class TimestampedEdge(NamedTuple):
    u: int
    v: int
    t: float
    tiebreak: int

    @property
    def edge(self) -> Edge:
        return (self.u, self.v)


class Stream:
    """An immutable, replayable sequence of timestamped edges.

    ``passes`` counts how many iterations have been started; samplers are
    single-pass and tests assert on it. The vertex count ``n`` and edge count
    ``m`` are known to consumers up front.
    """

    def __init__(self,
                 u: np.ndarray,
                 v: np.ndarray,
                 t: np.ndarray,
                 tiebreak: np.ndarray,
                 directed: bool = False,
                 n: Optional[int] = None):
        order = np.lexsort((np.asarray(tiebreak, dtype=np.uint64), np.asarray(t, dtype=np.float64)))
        self._u = np.asarray(u, dtype=np.int64)[order]
        self._v = np.asarray(v, dtype=np.int64)[order]
        self._t = np.asarray(t, dtype=np.float64)[order]
        self._tiebreak = np.asarray(tiebreak, dtype=np.uint64)[order]
        for arr in (self._u, self._v, self._t, self._tiebreak):
            arr.setflags(write=False)
        self.directed = directed
        inferred = int(max(self._u.max(initial=-1), self._v.max(initial=-1))) + 1
        if n is not None and n < inferred:
            raise StreamError(f"Stream mentions vertex {inferred - 1} but n={n}")
        self.n = inferred if n is None else n
        self.passes = 0
        self._check()

    def _check(self) -> None:
        if not (len(self._u) == len(self._v) == len(self._t) == len(self._tiebreak)):
            raise StreamError("Stream columns have different lengths")
        if len(self._t) and (self._t[0] < 0.0 or self._t[-1] >= 1.0):
            raise StreamError("Timestamps must lie in [0, 1)")
        same_t = self._t[1:] == self._t[:-1]
        if np.any(same_t & (self._tiebreak[1:] == self._tiebreak[:-1])):
            raise StreamError("Duplicate (timestamp, tiebreak) pair in stream")

    @classmethod
    def from_events(cls,
                    events: Iterable[Sequence],
                    directed: bool = False,
                    n: Optional[int] = None) -> "Stream":
        """Build from ``(u, v, t)`` or ``(u, v, t, tiebreak)`` rows.

        Rows without a tiebreak get their row index.
        """
        rows = [tuple(e) for e in events]
        u = np.array([r[0] for r in rows], dtype=np.int64)
        v = np.array([r[1] for r in rows], dtype=np.int64)
        t = np.array([r[2] for r in rows], dtype=np.float64)
        tiebreak = np.array([r[3] if len(r) > 3 else i for i, r in enumerate(rows)], dtype=np.uint64)
        return cls(u, v, t, tiebreak, directed=directed, n=n)

    @property
    def m(self) -> int:
        return len(self._t)

    def __len__(self) -> int:
        return self.m

    @property
    def timestamps(self) -> np.ndarray:
        return self._t

    def __iter__(self) -> Iterator[TimestampedEdge]:
        self.passes += 1
        return map(TimestampedEdge._make,
                   zip(self._u.tolist(), self._v.tolist(), self._t.tolist(), self._tiebreak.tolist()))

    def event(self, index: int) -> TimestampedEdge:
        return TimestampedEdge(int(self._u[index]), int(self._v[index]),
                               float(self._t[index]), int(self._tiebreak[index]))

    def edges(self) -> List[Edge]:
        """Edges in arrival order, without counting a pass."""
        return list(zip(self._u.tolist(), self._v.tolist()))

    def to_graph(self) -> Graph:
        """The graph whose edges this stream carries."""
        return Graph.from_edges(self.n, self.edges(), directed=self.directed)

    def __repr__(self) -> str:
        return f"Stream(n={self.n}, m={self.m}, directed={self.directed})"


def make_stream(g: Graph, seed: int) -> Stream:
    """Assign each edge of g an independent uniform timestamp and sort.

    Deterministic for fixed ``(g, seed)``.
    """
    edges = list(g.edges())
    rng = generator(seed, STREAM_KEY)
    m = len(edges)
    t = rng.random(m)
    tiebreak = rng.integers(0, 2 ** 64, size=m, dtype=np.uint64)
    u = np.array([e[0] for e in edges], dtype=np.int64)
    v = np.array([e[1] for e in edges], dtype=np.int64)
    logger.debug("Materialized stream of %d edges (seed=%d)", m, seed)
    return Stream(u, v, t, tiebreak, directed=g.directed, n=g.n)


def window(s: Stream, lo: float, hi: float, closed_hi: bool = False) -> List[TimestampedEdge]:
    """Events with ``t`` in ``[lo, hi)`` (``[lo, hi]`` when closed_hi), in stream order."""
    if not 0.0 <= lo <= hi <= 1.0:
        raise StreamError(f"Window bounds must satisfy 0 <= lo <= hi <= 1, got [{lo}, {hi}]")
    start = int(np.searchsorted(s.timestamps, lo, side="left"))
    end = int(np.searchsorted(s.timestamps, hi, side="right" if closed_hi else "left"))
    return [s.event(i) for i in range(start, end)]


class OrderStatisticStream:
    """Emits n sorted uniforms on (0, 1) one at a time.

    Given ``X_i``, the remaining ``n - i`` order statistics are distributed as
    ``n - i`` uniforms on ``(X_i, 1)``, so ``X_{i+1}`` is drawn as their
    minimum: ``1 - (1 - X_i) * U^(1/(n-i))``. Only the previous value and the
    index are retained. Precision is that of float64.
    """

    retained_values = 2

    def __init__(self, n: int, rng: np.random.Generator):
        if n < 1:
            raise StreamError(f"Need at least one order statistic, got n={n}")
        self.n = n
        self._rng = rng
        self._previous = 0.0
        self._index = 0

    def __iter__(self) -> "OrderStatisticStream":
        return self

    def __next__(self) -> float:
        if self._index >= self.n:
            raise StopIteration
        remaining = self.n - self._index
        u = 1.0 - self._rng.random()  # (0, 1]
        value = 1.0 - (1.0 - self._previous) * u ** (1.0 / remaining)
        self._previous = value
        self._index += 1
        return value


def gen_order_statistics(n: int, seed: int) -> OrderStatisticStream:
    return OrderStatisticStream(n, generator(seed, STREAM_KEY))


def attach_timestamps(edges: Sequence[Tuple[int, int]],
                      seed: int,
                      directed: bool = False,
                      n: Optional[int] = None) -> Stream:
    """Stamp an edge sequence that already arrives in random order.

    Timestamps come from :func:`gen_order_statistics`, so the result has the
    same law as :func:`make_stream` when the input order is uniform.
    """
    stamps = gen_order_statistics(len(edges), seed) if edges else iter(())
    rows = [(u, v, t, i) for i, ((u, v), t) in enumerate(zip(edges, stamps))]
    return Stream.from_events(rows, directed=directed, n=n)
