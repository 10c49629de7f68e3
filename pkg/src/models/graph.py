from dataclasses import dataclass
from typing import Dict, Iterable, List, Tuple

import networkx as nx
import numpy as np

from src.utils.errors import MalformedInput


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on {0, ..., n-1} as a symmetric boolean matrix."""

    adjacency: np.ndarray

    def __post_init__(self):
        adj = np.array(self.adjacency, dtype=bool)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise MalformedInput(f"adjacency must be square, got shape {adj.shape}")
        if not np.array_equal(adj, adj.T):
            raise MalformedInput("adjacency is not symmetric")
        if adj.diagonal().any():
            raise MalformedInput("graphs may not have self-loops")
        adj.setflags(write=False)
        object.__setattr__(self, "adjacency", adj)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]]) -> "Graph":
        adj = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise MalformedInput(f"edge ({u}, {v}) leaves the vertex range [0, {n})")
            if u == v:
                raise MalformedInput(f"self-loop at vertex {u}")
            adj[u, v] = adj[v, u] = True
        return cls(adj)

    @property
    def n(self) -> int:
        return int(self.adjacency.shape[0])

    @property
    def edges(self) -> List[Tuple[int, int]]:
        rows, cols = np.nonzero(np.triu(self.adjacency, k=1))
        return [(int(u), int(v)) for u, v in zip(rows, cols)]

    @property
    def degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1)

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edges)
        return graph


@dataclass(frozen=True)
class GadgetGraph:
    """A graph built from a points coloring.

    provenance[v] is ("point", x), ("hub", c) or ("clique", c, j); colors
    are the normalized ones (at least 1).
    """

    graph: Graph
    provenance: Tuple[Tuple, ...]
    points: int
    hubs: Dict[int, int]
    cliques: Dict[int, Tuple[int, ...]]

    @property
    def n(self) -> int:
        return self.graph.n
