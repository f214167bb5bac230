"""Graph-property distributions and distances between them.

The four properties are node degree, shortest-path hop count, local
clustering coefficient and weakly connected component size. Distributions
are compared with the Kolmogorov-Smirnov statistic and skew divergence.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph

from .graph import SampledGraph

PROPERTIES = ("degree", "path_length", "clustering", "wcc_size")


class EmptyDistributionError(ValueError):
    """A property distribution was requested from a graph that has none."""


@dataclass(frozen=True)
class Distribution:
    """Empirical discrete distribution over a sorted numeric support."""

    support: np.ndarray
    pdf: np.ndarray
    cdf: np.ndarray
    sample_count: int

    @classmethod
    def from_values(cls, values) -> Distribution:
        values = np.asarray(values, dtype=np.float64).ravel()
        if values.size == 0:
            raise EmptyDistributionError("no values")
        support, counts = np.unique(values, return_counts=True)
        return cls.from_counts(support, counts)

    @classmethod
    def from_counts(cls, support, counts) -> Distribution:
        support = np.asarray(support, dtype=np.float64)
        counts = np.asarray(counts, dtype=np.int64)
        keep = counts > 0
        support, counts = support[keep], counts[keep]
        total = int(counts.sum())
        if total == 0:
            raise EmptyDistributionError("no values")
        order = np.argsort(support, kind="stable")
        support, counts = support[order], counts[order]
        cum = np.cumsum(counts)
        return cls(support, counts / total, cum / total, total)

    @property
    def ccdf(self) -> np.ndarray:
        return 1.0 - self.cdf

    def cdf_at(self, x) -> np.ndarray:
        """Right-continuous step CDF evaluated at ``x``."""
        idx = np.searchsorted(self.support, x, side="right")
        padded = np.concatenate([[0.0], self.cdf])
        return padded[idx]

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["value", "pdf", "cdf", "ccdf"])
            for row in zip(self.support, self.pdf, self.cdf, self.ccdf):
                w.writerow([repr(float(x)) for x in row])

    def mean(self) -> float:
        return float(np.dot(self.support, self.pdf))


def _csr(g: SampledGraph):
    return g.to_csr()[1]


def degrees(g: SampledGraph) -> np.ndarray:
    return np.fromiter((len(nb) for nb in g.adj.values()), dtype=np.int64, count=len(g))


def degree_distribution(g: SampledGraph) -> Distribution:
    if len(g) == 0:
        raise EmptyDistributionError("degree distribution of an empty graph")
    return Distribution.from_values(degrees(g))


def local_clustering(g: SampledGraph) -> np.ndarray:
    """Per-node clustering coefficient; nodes of degree below 2 get 0."""
    if len(g) == 0:
        return np.empty(0)
    a = _csr(g)
    deg = np.asarray(a.sum(axis=1)).ravel()
    # closed 2-paths through each node = 2 * triangles
    tri2 = np.asarray((a @ a).multiply(a).sum(axis=1)).ravel()
    out = np.zeros(len(deg))
    mask = deg >= 2
    out[mask] = tri2[mask] / (deg[mask] * (deg[mask] - 1))
    return out


def clustering_distribution(g: SampledGraph) -> Distribution:
    if len(g) == 0:
        raise EmptyDistributionError("clustering distribution of an empty graph")
    return Distribution.from_values(local_clustering(g))


def component_sizes(g: SampledGraph) -> np.ndarray:
    if len(g) == 0:
        return np.empty(0, dtype=np.int64)
    ncomp, labels = csgraph.connected_components(_csr(g), directed=False)
    return np.bincount(labels, minlength=ncomp)


def wcc_size_distribution(g: SampledGraph) -> Distribution:
    if len(g) == 0:
        raise EmptyDistributionError("component distribution of an empty graph")
    return Distribution.from_values(component_sizes(g))


def path_length_counts(g: SampledGraph, source_budget: int = 1000, seed: int = 0,
                       chunk: int = 256) -> np.ndarray:
    """Histogram of BFS hop counts over reachable ordered pairs ``(s, t)``, ``s != t``.

    All nodes act as sources when the graph has at most ``source_budget``
    nodes; otherwise ``source_budget`` sources are drawn uniformly without
    replacement. Index ``k`` of the result counts pairs at distance ``k``
    (index 0 is always 0).
    """
    ids, a = g.to_csr()
    n = len(ids)
    if n <= source_budget:
        sources = np.arange(n)
    else:
        sources = np.sort(np.random.default_rng(seed).choice(n, size=source_budget, replace=False))
    counts = np.zeros(1, dtype=np.int64)
    for start in range(0, len(sources), chunk):
        d = csgraph.shortest_path(a, method="D", unweighted=True, directed=False,
                                  indices=sources[start:start + chunk])
        d = d[np.isfinite(d)].astype(np.int64)
        c = np.bincount(d)
        if len(c) > len(counts):
            c[: len(counts)] += counts
            counts = c
        else:
            counts[: len(c)] += c
    counts[0] = 0
    return counts


def path_length_distribution(g: SampledGraph, source_budget: int = 1000,
                             seed: int = 0) -> Distribution:
    if len(g) == 0 or g.edge_count == 0:
        raise EmptyDistributionError("no finite paths in a graph without edges")
    counts = path_length_counts(g, source_budget=source_budget, seed=seed)
    return Distribution.from_counts(np.arange(len(counts)), counts)


def property_distribution(name: str, g: SampledGraph, **kwargs) -> Distribution:
    if name == "degree":
        return degree_distribution(g)
    if name == "path_length":
        return path_length_distribution(g, **kwargs)
    if name == "clustering":
        return clustering_distribution(g)
    if name == "wcc_size":
        return wcc_size_distribution(g)
    raise KeyError(name)


def ks_distance(f1: Distribution, f2: Distribution) -> float:
    """Largest absolute gap between the two step CDFs over the merged support."""
    xs = np.union1d(f1.support, f2.support)
    return float(np.max(np.abs(f1.cdf_at(xs) - f2.cdf_at(xs))))


def skew_divergence(p: Distribution, q: Distribution, alpha: float = 0.99) -> float:
    """KL(p || alpha*q + (1-alpha)*p) in nats, finite whatever the supports.

    Not symmetric in ``p`` and ``q``.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    xs = np.union1d(p.support, q.support)
    pp = np.zeros(len(xs))
    qq = np.zeros(len(xs))
    pp[np.searchsorted(xs, p.support)] = p.pdf
    qq[np.searchsorted(xs, q.support)] = q.pdf
    mask = pp > 0
    mix = alpha * qq[mask] + (1.0 - alpha) * pp[mask]
    return float(max(0.0, np.sum(pp[mask] * np.log(pp[mask] / mix))))


def sparse_adjacency(num_nodes: int, edges: np.ndarray):
    """Symmetric CSR adjacency for a dense-id edge array."""
    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    r = np.concatenate([edges[:, 0], edges[:, 1]])
    c = np.concatenate([edges[:, 1], edges[:, 0]])
    return sparse.csr_matrix((np.ones(len(r)), (r, c)), shape=(num_nodes, num_nodes))
