"""
Graph and walk primitives.

Vertices are dense integers ``0..n-1``. Adjacency lists are kept sorted so
degree and membership queries are deterministic. Undirected graphs store each
edge in both endpoint lists; directed graphs store out-neighbours only.
"""

import bisect
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import networkx as nx

from ..errors import GraphError

Edge = Tuple[int, int]


def edge_key(u: int, v: int, directed: bool = False) -> Edge:
    """Identity of the edge between u and v (unordered pair unless directed)."""
    if directed or u < v:
        return (u, v)
    return (v, u)


class Graph:
    """Simple graph with sorted adjacency lists.

    The constructor stores what it is given; call :func:`validate_graph` (or
    build through :meth:`from_edges`, which validates by default) to enforce
    the simple-graph invariants.
    """

    __slots__ = ("n", "adjacency", "directed")

    def __init__(self, n: int, adjacency: Sequence[Sequence[int]], directed: bool = False):
        if n < 0:
            raise GraphError(f"Vertex count must be non-negative, got {n}")
        if len(adjacency) != n:
            raise GraphError(f"Expected {n} adjacency lists, got {len(adjacency)}")
        self.n = n
        self.adjacency: Tuple[Tuple[int, ...], ...] = tuple(
            tuple(sorted(neighbors)) for neighbors in adjacency
        )
        self.directed = directed

    @classmethod
    def from_edges(cls,
                   n: int,
                   edges: Iterable[Edge],
                   directed: bool = False,
                   validate: bool = True,
                   require_no_isolated: bool = False) -> "Graph":
        """Build a graph from an edge list.

        Args:
            n: Number of vertices
            edges: Pairs ``(u, v)``; for undirected graphs each pair once
            directed: Treat pairs as arcs ``u -> v``
            validate: Run :func:`validate_graph` on the result
            require_no_isolated: Passed through to validation
        """
        adjacency: List[List[int]] = [[] for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"Edge ({u}, {v}) references a vertex outside 0..{n - 1}")
            adjacency[u].append(v)
            if not directed and u != v:
                adjacency[v].append(u)
        graph = cls(n, adjacency, directed=directed)
        if validate:
            validate_graph(graph, require_no_isolated=require_no_isolated)
        return graph

    @classmethod
    def from_networkx(cls, nx_graph: nx.Graph) -> "Graph":
        """Relabel the nodes of a networkx graph to 0..n-1 in sorted order."""
        nodes = sorted(nx_graph.nodes())
        index = {node: i for i, node in enumerate(nodes)}
        edges = [(index[u], index[v]) for u, v in nx_graph.edges()]
        if not nx_graph.is_directed():
            edges = [edge_key(u, v) for u, v in edges]
        return cls.from_edges(len(nodes), edges, directed=nx_graph.is_directed())

    def to_networkx(self) -> nx.Graph:
        nx_graph = nx.DiGraph() if self.directed else nx.Graph()
        nx_graph.add_nodes_from(range(self.n))
        nx_graph.add_edges_from(self.edges())
        return nx_graph

    def degree(self, v: int) -> int:
        """Degree (out-degree for directed graphs) of v."""
        return len(self.adjacency[v])

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        neighbors = self.adjacency[u]
        idx = bisect.bisect_left(neighbors, v)
        return idx < len(neighbors) and neighbors[idx] == v

    def edges(self) -> Iterator[Edge]:
        """Each edge once: ``u < v`` pairs for undirected graphs, arcs otherwise."""
        for u, neighbors in enumerate(self.adjacency):
            for v in neighbors:
                if self.directed or u < v:
                    yield (u, v)

    @property
    def num_edges(self) -> int:
        total = sum(len(neighbors) for neighbors in self.adjacency)
        return total if self.directed else total // 2

    def degrees(self) -> List[int]:
        return [len(neighbors) for neighbors in self.adjacency]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.n, self.directed, self.adjacency) == (other.n, other.directed, other.adjacency)

    def __hash__(self) -> int:
        return hash((self.n, self.directed, self.adjacency))

    def __repr__(self) -> str:
        kind = "directed" if self.directed else "undirected"
        return f"Graph(n={self.n}, m={self.num_edges}, {kind})"


def validate_graph(g: Graph, require_no_isolated: bool = False) -> None:
    """Raise :class:`GraphError` on the first violated graph invariant.

    Checks, in order: vertex ids in range, no self-loops, no parallel edges,
    symmetric adjacency for undirected graphs and, when requested, every
    vertex having degree (out-degree for directed graphs) at least one.
    """
    for u, neighbors in enumerate(g.adjacency):
        for v in neighbors:
            if not 0 <= v < g.n:
                raise GraphError(f"Vertex {u} lists neighbor {v} outside 0..{g.n - 1}")
            if v == u:
                raise GraphError(f"Self-loop at vertex {u}")
        for a, b in zip(neighbors, neighbors[1:]):
            if a == b:
                raise GraphError(f"Parallel edge ({u}, {a})")
    if not g.directed:
        for u, neighbors in enumerate(g.adjacency):
            for v in neighbors:
                if not g.has_edge(v, u):
                    raise GraphError(f"Asymmetric adjacency: {v} in adj({u}) but {u} not in adj({v})")
    if require_no_isolated:
        for u, neighbors in enumerate(g.adjacency):
            if not neighbors:
                raise GraphError(f"Isolated vertex {u}")


@dataclass(frozen=True)
class Walk:
    """A walk ``(v_0, ..., v_l)``; length ``l = 0`` is allowed."""
    vertices: Tuple[int, ...]

    def __post_init__(self):
        if not self.vertices:
            raise GraphError("A walk needs at least its start vertex")
        object.__setattr__(self, "vertices", tuple(int(v) for v in self.vertices))

    @classmethod
    def of(cls, *vertices: int) -> "Walk":
        return cls(tuple(vertices))

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[-1]

    def edges(self, directed: bool = False) -> List[Edge]:
        """Edge identities ``e_1..e_l`` with ``e_j = {v_{j-1}, v_j}``."""
        return [edge_key(a, b, directed) for a, b in zip(self.vertices, self.vertices[1:])]

    def truncate(self, steps: int) -> "Walk":
        """Prefix of the first ``steps`` steps."""
        if not 0 <= steps <= self.length:
            raise GraphError(f"Cannot truncate a length-{self.length} walk to {steps} steps")
        return Walk(self.vertices[:steps + 1])

    def __len__(self) -> int:
        return self.length

    def __iter__(self):
        return iter(self.vertices)


def validate_walk(w: Walk, g: Graph) -> None:
    """Raise :class:`GraphError` unless consecutive vertices are adjacent in g."""
    for v in w.vertices:
        if not 0 <= v < g.n:
            raise GraphError(f"Walk vertex {v} outside 0..{g.n - 1}")
    for step, (a, b) in enumerate(zip(w.vertices, w.vertices[1:]), start=1):
        if not g.has_edge(a, b):
            raise GraphError(f"Step {step} of walk uses missing edge ({a}, {b})")


def read_edge_list(path: Union[str, Path]) -> Graph:
    """Parse the whitespace edge-list format.

    One ``u v`` pair per line; ``#`` lines are comments; a ``directed`` line
    marks arcs; ``n=<count>`` fixes the vertex count (otherwise max id + 1).
    """
    directed = False
    n: Optional[int] = None
    edges: List[Edge] = []
    with open(path, "r") as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if line == "directed":
                directed = True
                continue
            if line.startswith("n="):
                n = int(line[2:])
                continue
            parts = line.split()
            if len(parts) != 2:
                raise GraphError(f"{path}:{lineno}: expected 'u v', got {line!r}")
            edges.append((int(parts[0]), int(parts[1])))
    if n is None:
        n = max((max(u, v) for u, v in edges), default=-1) + 1
    return Graph.from_edges(n, edges, directed=directed)


def write_edge_list(g: Graph, path: Union[str, Path]) -> None:
    """Write g in the format read by :func:`read_edge_list`."""
    with open(path, "w") as f:
        if g.directed:
            f.write("directed\n")
        f.write(f"n={g.n}\n")
        for u, v in g.edges():
            f.write(f"{u} {v}\n")
