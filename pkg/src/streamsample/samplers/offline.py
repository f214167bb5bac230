"""Baselines that need random access to the whole graph."""
from __future__ import annotations

from collections import deque

import numpy as np

from ..graph import SampledGraph


def burn_count(rng: np.random.Generator, p_f: float) -> int:
    """Number of neighbours to burn: Geometric on {0, 1, ...} with mean p_f/(1-p_f)."""
    return int(rng.geometric(1.0 - p_f)) - 1


def offline_ffs(graph: SampledGraph, n: int, p_f: float = 0.7, seed: int = 0,
                start: int | None = None) -> SampledGraph:
    """Forest fire sampling.

    A fire starts at a uniform random node (or ``start``), burns a
    geometrically distributed number of not-yet-burned neighbours of each
    burning node, and spreads breadth-first from them. When the fire dies out
    a new one is lit at a uniform unburned node. Burning stops at ``n``
    nodes and the sample is the subgraph induced on the burned nodes.
    """
    if not 0.0 < p_f < 1.0:
        raise ValueError(f"p_f must lie in (0, 1), got {p_f}")
    n = min(n, len(graph))
    rng = np.random.default_rng(seed)
    nodes = np.fromiter(graph.adj.keys(), dtype=np.int64, count=len(graph))
    sample = SampledGraph()
    if n <= 0:
        return sample
    while len(sample) < n:
        if start is not None and start not in sample.adj:
            seed_node = start
        else:
            unburned = nodes[[u not in sample.adj for u in nodes.tolist()]]
            seed_node = int(unburned[rng.integers(len(unburned))])
        start = None
        sample.add_node(seed_node)
        fire = deque([seed_node])
        while fire and len(sample) < n:
            x = fire.popleft()
            fresh = sorted(w for w in graph.adj[x] if w not in sample.adj)
            k = min(burn_count(rng, p_f), len(fresh))
            if k == 0:
                continue
            for w in rng.choice(fresh, size=k, replace=False).tolist():
                if len(sample) >= n:
                    break
                sample.add_node(w)
                fire.append(w)
    return graph.subgraph(sample.adj)


def offline_es_induced(graph: SampledGraph, n: int, seed: int = 0,
                       edges: np.ndarray | None = None) -> SampledGraph:
    """Edge sampling with full induction (two passes over the graph).

    Edges are drawn uniformly without replacement; an edge that would take
    the node set past ``n`` is skipped. Once ``n`` nodes are collected (or
    the edges run out) every graph edge among them is added.
    """
    if edges is None:
        edges = np.array(sorted(graph.edges()), dtype=np.int64).reshape(-1, 2)
    n = min(n, len(graph))
    rng = np.random.default_rng(seed)
    chosen: set[int] = set()
    for u, v in edges[rng.permutation(len(edges))].tolist():
        if len(chosen) >= n:
            break
        new = (u not in chosen) + (v not in chosen)
        if len(chosen) + new > n:
            continue
        chosen.add(u)
        chosen.add(v)
    return graph.subgraph(chosen)
