"""Simple undirected graph used both for full graphs and evolving samples."""
from __future__ import annotations

import logging
from typing import Iterable, Iterator

import numpy as np

logger = logging.getLogger(__name__)


def canonical(u: int, v: int) -> tuple[int, int]:
    """Return the edge ``(u, v)`` with the smaller endpoint first."""
    return (u, v) if u < v else (v, u)


class SampledGraph:
    """Hash-set adjacency graph: simple, undirected, no self-loops.

    Mutating methods return ``self`` so calls can be chained. Removing a node
    that is not present is tolerated and counted in ``missing_removals``.
    """

    __slots__ = ("adj", "edge_count", "missing_removals")

    def __init__(self, nodes: Iterable[int] = (), edges: Iterable[tuple[int, int]] = ()):
        self.adj: dict[int, set[int]] = {}
        self.edge_count = 0
        self.missing_removals = 0
        for u in nodes:
            self.add_node(u)
        for u, v in edges:
            self.add_node(u)
            self.add_node(v)
            self.add_edge(u, v)

    @property
    def nodes(self):
        return self.adj.keys()

    def __len__(self) -> int:
        return len(self.adj)

    def __contains__(self, u) -> bool:
        return u in self.adj

    def __eq__(self, other) -> bool:
        if not isinstance(other, SampledGraph):
            return NotImplemented
        return self.adj == other.adj

    def __repr__(self) -> str:
        return f"SampledGraph(nodes={len(self.adj)}, edges={self.edge_count})"

    def add_node(self, u: int) -> SampledGraph:
        if u not in self.adj:
            self.adj[u] = set()
        return self

    def add_edge(self, u: int, v: int) -> SampledGraph:
        """Insert edge ``u--v``; both endpoints must already be nodes."""
        if u == v:
            raise ValueError(f"self-loop on node {u}")
        try:
            nu = self.adj[u]
            nv = self.adj[v]
        except KeyError as exc:
            raise ValueError(f"edge ({u}, {v}) has an endpoint outside the node set") from exc
        if v not in nu:
            nu.add(v)
            nv.add(u)
            self.edge_count += 1
        return self

    def has_edge(self, u: int, v: int) -> bool:
        nu = self.adj.get(u)
        return nu is not None and v in nu

    def remove_edge(self, u: int, v: int) -> SampledGraph:
        nu = self.adj.get(u)
        if nu is not None and v in nu:
            nu.discard(v)
            self.adj[v].discard(u)
            self.edge_count -= 1
        return self

    def remove_node(self, u: int) -> SampledGraph:
        """Drop ``u`` together with all its incident edges."""
        nbrs = self.adj.pop(u, None)
        if nbrs is None:
            self.missing_removals += 1
            logger.debug("remove_node: %s not in graph", u)
            return self
        for w in nbrs:
            self.adj[w].discard(u)
        self.edge_count -= len(nbrs)
        return self

    # alias matching the operation name used throughout the samplers
    remove_node_with_incident_edges = remove_node

    def degree(self, u: int) -> int:
        return len(self.adj[u])

    def neighbors(self, u: int) -> set[int]:
        return self.adj[u]

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, nbrs in self.adj.items():
            for v in nbrs:
                if u < v:
                    yield (u, v)

    def edge_set(self) -> set[tuple[int, int]]:
        return set(self.edges())

    def copy(self) -> SampledGraph:
        g = SampledGraph.__new__(SampledGraph)
        g.adj = {u: set(nbrs) for u, nbrs in self.adj.items()}
        g.edge_count = self.edge_count
        g.missing_removals = self.missing_removals
        return g

    def subgraph(self, nodes: Iterable[int]) -> SampledGraph:
        """Induced subgraph on ``nodes`` (nodes absent from the graph are ignored)."""
        keep = {u for u in nodes if u in self.adj}
        g = SampledGraph(keep)
        for u in keep:
            for v in self.adj[u]:
                if u < v and v in keep:
                    g.add_edge(u, v)
        return g

    def check_invariants(self) -> None:
        """Raise AssertionError if symmetry or the edge-count identity is broken."""
        total = 0
        for u, nbrs in self.adj.items():
            assert u not in nbrs, f"self-loop at {u}"
            for v in nbrs:
                assert v in self.adj, f"dangling neighbor {v} of {u}"
                assert u in self.adj[v], f"asymmetric edge {u}-{v}"
            total += len(nbrs)
        assert total == 2 * self.edge_count, "edge_count out of sync with adjacency"

    def to_csr(self):
        """Return ``(node_ids, csr_adjacency)`` with rows ordered as ``node_ids``."""
        from scipy import sparse

        ids = np.fromiter(self.adj.keys(), dtype=np.int64, count=len(self.adj))
        index = {int(u): i for i, u in enumerate(ids)}
        rows = np.empty(2 * self.edge_count, dtype=np.int64)
        cols = np.empty(2 * self.edge_count, dtype=np.int64)
        k = 0
        for u, nbrs in self.adj.items():
            iu = index[u]
            for v in nbrs:
                rows[k] = iu
                cols[k] = index[v]
                k += 1
        n = len(ids)
        data = np.ones(k, dtype=np.float64)
        mat = sparse.csr_matrix((data, (rows, cols)), shape=(n, n))
        return ids, mat

    @classmethod
    def from_edges(cls, num_nodes: int | None, edges) -> SampledGraph:
        """Build a graph from an ``(M, 2)`` array or iterable of pairs.

        With ``num_nodes`` given, nodes ``0..num_nodes-1`` are all present,
        isolated ones included.
        """
        g = cls(range(num_nodes) if num_nodes is not None else ())
        if isinstance(edges, np.ndarray):
            edges = edges.tolist()
        adj = g.adj
        for u, v in edges:
            if u == v:
                continue
            if u not in adj:
                adj[u] = set()
            if v not in adj:
                adj[v] = set()
            g.add_edge(u, v)
        return g
