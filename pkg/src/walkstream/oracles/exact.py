"""
Exact references for walk laws, return probability and PageRank.

Everything here is dense and brute force. Guard rails keep the oracles at
desk scale: walk enumeration stops at ``MAX_ENUMERATED_WALKS`` walks and the
matrix routines at ``MAX_DENSE_VERTICES`` vertices.

The transition matrix is column-stochastic, ``M[v, u] = 1/d(u)`` for every
edge (arc) ``u -> v``, so one step of the walk maps a distribution ``p`` to
``M @ p``.
"""

import logging
from collections import Counter
from typing import Callable, Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from ..core.graph import Graph, Walk
from ..errors import OracleError

logger = logging.getLogger(__name__)

MAX_ENUMERATED_WALKS = 10 ** 7
MAX_DENSE_VERTICES = 2000
SUM_TOLERANCE = 1e-12

Target = Union[Callable[[int], bool], Iterable[int]]


class WalkDistribution(Mapping[Walk, float]):
    """Probability law over walks of one fixed length.

    Missing walks have probability zero; indexing never raises ``KeyError``.
    """

    def __init__(self, entries: Mapping[Walk, float], k: int, check: bool = True):
        self.k = k
        self._entries: Dict[Walk, float] = dict(entries)
        if check:
            self._check()

    def _check(self) -> None:
        total = 0.0
        for walk, prob in self._entries.items():
            if walk.length != self.k:
                raise OracleError(f"Walk {walk.vertices} has length {walk.length}, expected {self.k}")
            if prob < 0.0:
                raise OracleError(f"Negative probability {prob} for {walk.vertices}")
            total += prob
        if self._entries and abs(total - 1.0) > SUM_TOLERANCE * max(1, len(self._entries)):
            raise OracleError(f"Probabilities sum to {total}, not 1")

    def __getitem__(self, walk: Walk) -> float:
        return self._entries.get(walk, 0.0)

    def __contains__(self, walk: object) -> bool:
        return walk in self._entries

    def __iter__(self) -> Iterator[Walk]:
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def endpoint_masses(self, n: int) -> np.ndarray:
        """Total probability of walks ending at each vertex."""
        masses = np.zeros(n)
        for walk, prob in self._entries.items():
            masses[walk.end] += prob
        return masses

    def __repr__(self) -> str:
        return f"WalkDistribution(k={self.k}, support={len(self._entries)})"


def _start_law(g: Graph, start: Optional[int]) -> np.ndarray:
    if g.n == 0:
        raise OracleError("Graph has no vertices")
    if start is None:
        return np.full(g.n, 1.0 / g.n)
    if not 0 <= start < g.n:
        raise OracleError(f"Start vertex {start} outside 0..{g.n - 1}")
    law = np.zeros(g.n)
    law[start] = 1.0
    return law


def exact_walk_distribution(g: Graph, k: int, start: Optional[int] = None) -> WalkDistribution:
    """Every length-k walk with its probability ``P[start] * prod_j 1/d(w_{j-1})``.

    ``start=None`` means a uniform start vertex. Walks that reach a vertex
    with no (out-)neighbours cannot continue and the law would lose mass, so
    such graphs are refused.
    """
    if k < 0:
        raise OracleError(f"k must be non-negative, got {k}")
    starts = range(g.n) if start is None else [start]
    law = _start_law(g, start)
    bound = len(starts) * max(g.degrees(), default=0) ** k
    if bound > MAX_ENUMERATED_WALKS:
        raise OracleError(f"Up to {bound} walks of length {k}; enumeration stops at {MAX_ENUMERATED_WALKS}")

    entries: Dict[Walk, float] = {}
    stack = [((u,), float(law[u])) for u in reversed(starts)]
    while stack:
        path, prob = stack.pop()
        if len(path) == k + 1:
            entries[Walk(path)] = prob
            continue
        u = path[-1]
        d = g.degree(u)
        if d == 0:
            raise OracleError(f"Vertex {u} has no neighbours; the {k}-step walk law is undefined")
        for v in reversed(g.neighbors(u)):
            stack.append((path + (v,), prob / d))
    return WalkDistribution(entries, k)


def empirical_distribution(samples: Sequence[Walk]) -> WalkDistribution:
    """Normalized frequencies of the sampled walks."""
    if not samples:
        raise OracleError("Empirical distribution of an empty sample")
    lengths = {w.length for w in samples}
    if len(lengths) != 1:
        raise OracleError(f"Samples mix walk lengths {sorted(lengths)}")
    counts = Counter(samples)
    total = len(samples)
    return WalkDistribution({w: c / total for w, c in counts.items()}, lengths.pop())


def _dense_guard(g: Graph) -> None:
    if g.n > MAX_DENSE_VERTICES:
        raise OracleError(f"Dense oracle limited to {MAX_DENSE_VERTICES} vertices, got n={g.n}")


def transition_matrix(g: Graph) -> np.ndarray:
    """Column-stochastic walk matrix; out-neighbours for directed graphs."""
    _dense_guard(g)
    M = np.zeros((g.n, g.n))
    for u in range(g.n):
        d = g.degree(u)
        if d == 0:
            raise OracleError(f"Vertex {u} has no neighbours; the walk matrix is not stochastic")
        M[list(g.neighbors(u)), u] = 1.0 / d
    return M


def endpoint_distribution(g: Graph, k: int, start: Optional[int] = None) -> np.ndarray:
    """Law of the k-th vertex of the walk by repeated matrix-vector products."""
    M = transition_matrix(g)
    p = _start_law(g, start)
    for _ in range(k):
        p = M @ p
    return p


def exact_rp(g: Graph, k: int) -> float:
    """Average k-step return probability ``(1/n) * trace(M^k)``."""
    if k < 0:
        raise OracleError(f"k must be non-negative, got {k}")
    M = transition_matrix(g)
    P = np.eye(g.n)
    for _ in range(k):
        P = M @ P
    return float(np.trace(P) / g.n)


def _check_alpha(alpha: float) -> None:
    if not 0.0 < alpha < 1.0:
        raise OracleError(f"Reset probability must lie in (0, 1), got {alpha}")


def exact_pagerank(g: Graph, alpha: float, tol: float = 1e-12, max_iter: int = 100000) -> np.ndarray:
    """Fixed point of ``p = alpha/n + (1 - alpha) M p`` by power iteration.

    Iterates until successive vectors differ by less than ``tol`` in L1.
    """
    _check_alpha(alpha)
    M = transition_matrix(g)
    reset = np.full(g.n, alpha / g.n)
    p = np.full(g.n, 1.0 / g.n)
    gap = float("inf")
    for iteration in range(1, max_iter + 1):
        nxt = reset + (1.0 - alpha) * (M @ p)
        gap = float(np.abs(nxt - p).sum())
        p = nxt
        if gap < tol:
            logger.debug("PageRank converged after %d iterations (gap %.3g)", iteration, gap)
            break
    else:
        raise OracleError(f"PageRank did not converge in {max_iter} iterations (gap {gap:.3g}, tol {tol:.3g})")
    return p / p.sum()


def solve_pagerank(g: Graph, alpha: float) -> np.ndarray:
    """PageRank by a dense linear solve of ``(I - (1 - alpha) M) p = alpha/n``."""
    _check_alpha(alpha)
    M = transition_matrix(g)
    A = np.eye(g.n) - (1.0 - alpha) * M
    return np.linalg.solve(A, np.full(g.n, alpha / g.n))


def truncated_pagerank(g: Graph, alpha: float, K: int) -> np.ndarray:
    """``sum_{j=0..K} alpha (1 - alpha)^j M^j u`` for the uniform vector u.

    Not normalized: the missing mass is exactly ``(1 - alpha)^(K + 1)``.
    """
    _check_alpha(alpha)
    if K < 0:
        raise OracleError(f"K must be non-negative, got {K}")
    M = transition_matrix(g)
    term = np.full(g.n, 1.0 / g.n)
    total = alpha * term
    for j in range(1, K + 1):
        term = M @ term
        total = total + alpha * (1.0 - alpha) ** j * term
    return total


def target_members(target: Target, n: int) -> np.ndarray:
    """Boolean mask of the vertices in a predicate or vertex collection."""
    if callable(target):
        return np.array([bool(target(v)) for v in range(n)], dtype=bool)
    mask = np.zeros(n, dtype=bool)
    for v in target:
        if not 0 <= v < n:
            raise OracleError(f"Target vertex {v} outside 0..{n - 1}")
        mask[v] = True
    return mask


def pagerank_mass(p: np.ndarray, target: Target) -> float:
    """``p(T)``: total mass the vector puts on T."""
    return float(p[target_members(target, len(p))].sum())


def return_probabilities(g: Graph, k: int) -> Tuple[float, ...]:
    """Per-vertex k-step return probabilities ``p^k_u(u)``."""
    M = transition_matrix(g)
    P = np.linalg.matrix_power(M, k)
    return tuple(float(x) for x in np.diag(P))
