"""Edge-list ingestion, stream permutation/replay and synthetic fixtures."""
from __future__ import annotations

import json
import math
import random
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .graph import SampledGraph


class EdgeListParseError(ValueError):
    def __init__(self, path, lineno: int, line: str):
        super().__init__(f"{path}:{lineno}: cannot parse edge from {line!r}")
        self.lineno = lineno


class ConfigError(ValueError):
    """Invalid parameters for a generator, sampler or experiment."""


@dataclass
class EdgeList:
    """A simplified undirected graph as dense ids plus canonical edges.

    ``edges`` is an ``(M, 2)`` int64 array with ``u < v`` in every row, rows
    sorted lexicographically. ``original_ids[i]`` is the file identifier of
    dense node ``i`` (``None`` for generated graphs).
    """

    num_nodes: int
    edges: np.ndarray
    original_ids: np.ndarray | None = None

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def to_graph(self) -> SampledGraph:
        return SampledGraph.from_edges(self.num_nodes, self.edges)


def simplify(edges, num_nodes: int | None = None) -> EdgeList:
    """Drop self-loops, orient every edge ``u < v`` and collapse duplicates."""
    arr = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    arr = arr[arr[:, 0] != arr[:, 1]]
    arr = np.sort(arr, axis=1)
    if len(arr):
        arr = np.unique(arr, axis=0)
    if num_nodes is None:
        num_nodes = int(arr.max()) + 1 if len(arr) else 0
    return EdgeList(num_nodes, arr)


def ingest_edge_list(path, format: str = "whitespace") -> EdgeList:
    """Read an edge list file into a simplified graph with dense node ids.

    Lines starting with ``#`` or ``%`` are comments; blank lines are skipped.
    Each data line must begin with two integer tokens separated by whitespace
    (``format="whitespace"``) or a comma (``format="csv"``); trailing columns
    such as weights or timestamps are ignored. Node ids are remapped to
    ``0..N-1`` in increasing order of the original identifier.
    """
    if format not in ("whitespace", "csv"):
        raise ConfigError(f"unknown edge list format {format!r}")
    sep = "," if format == "csv" else None
    src: list[int] = []
    dst: list[int] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            s = line.strip()
            if not s or s[0] in "#%":
                continue
            parts = s.split(sep)
            try:
                a, b = int(parts[0]), int(parts[1])
            except (ValueError, IndexError):
                raise EdgeListParseError(path, lineno, line.rstrip("\n")) from None
            src.append(a)
            dst.append(b)
    if not src:
        return EdgeList(0, np.empty((0, 2), dtype=np.int64), np.empty(0, dtype=np.int64))
    raw = np.column_stack([np.asarray(src, dtype=np.int64), np.asarray(dst, dtype=np.int64)])
    ids, inverse = np.unique(raw, return_inverse=True)
    dense = inverse.reshape(raw.shape)
    el = simplify(dense, num_nodes=len(ids))
    el.original_ids = ids
    return el


def write_edge_list(path, edges, original_ids=None) -> None:
    """Write edges in the whitespace format accepted by ``ingest_edge_list``."""
    with open(path, "w", encoding="utf-8") as fh:
        for u, v in edges:
            if original_ids is not None:
                u, v = original_ids[u], original_ids[v]
            fh.write(f"{int(u)} {int(v)}\n")


class StreamSource:
    """A fixed edge order replayed once, with a 1-based position counter.

    Iterating yields ``(u, v)`` tuples; ``position`` holds the index ``t`` of
    the edge most recently handed out. A second iteration raises unless
    ``rewind()`` is called first, so one-pass use is enforced.
    """

    def __init__(self, edges):
        self.edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        self.edges.flags.writeable = False
        self.position = 0
        self.passes = 0

    @property
    def total(self) -> int:
        return len(self.edges)

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self):
        if self.passes:
            raise RuntimeError("stream already consumed; call rewind() to replay")
        self.passes += 1
        return self._gen()

    def _gen(self):
        chunk = 1 << 16
        for start in range(0, len(self.edges), chunk):
            for u, v in self.edges[start:start + chunk].tolist():
                self.position += 1
                yield u, v

    def rewind(self) -> StreamSource:
        self.position = 0
        self.passes = 0
        return self

    def prefix(self, k: int) -> np.ndarray:
        """The first ``k`` edges of the stream order."""
        return self.edges[:k]


def permute_stream(edges, seed: int) -> StreamSource:
    """Uniformly shuffle ``edges`` (Fisher-Yates under a seeded PCG64)."""
    if isinstance(edges, EdgeList):
        edges = edges.edges
    arr = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    order = np.random.default_rng(seed).permutation(len(arr))
    return StreamSource(arr[order])


def _pair_from_index(k: np.ndarray, n: int) -> np.ndarray:
    # row-major enumeration of pairs (i, j), i < j
    k = k.astype(np.float64)
    i = (n - 2 - np.floor(np.sqrt(-8 * k + 4 * n * (n - 1) - 7) / 2.0 - 0.5)).astype(np.int64)
    k = k.astype(np.int64)
    j = k + i + 1 - n * (n - 1) // 2 + (n - i) * ((n - i) - 1) // 2
    return np.column_stack([i, j])


def erdos_renyi(n: int, p: float, seed: int) -> EdgeList:
    """G(n, p): draw the edge count from Binomial(C(n,2), p), then that many distinct pairs."""
    if n < 2 or not 0.0 < p <= 1.0:
        raise ConfigError(f"erdos_renyi needs n >= 2 and 0 < p <= 1, got n={n}, p={p}")
    rng = np.random.default_rng(seed)
    pairs = n * (n - 1) // 2
    if p == 1.0:
        idx = np.arange(pairs)
    else:
        m = int(rng.binomial(pairs, p))
        idx = np.sort(rng.choice(pairs, size=m, replace=False))
    return EdgeList(n, _pair_from_index(idx, n))


def preferential_attachment(n: int, m: int, seed: int) -> EdgeList:
    """Barabasi-Albert growth seeded with a clique on ``m`` nodes.

    Nodes ``m..n-1`` each attach to ``m`` distinct earlier nodes chosen with
    probability proportional to degree, giving ``m*(n-m) + m*(m-1)/2`` edges.
    For ``m == 1`` the seed is a single node, so node 1 attaches to node 0.
    """
    if n < 2 or m < 1 or m >= n:
        raise ConfigError(f"preferential_attachment needs n >= 2 and 1 <= m < n, got n={n}, m={m}")
    rng = random.Random(seed)
    edges = [(i, j) for i in range(m) for j in range(i + 1, m)]
    # each node appears once per incident edge; a lone seed node gets one slot
    repeated = [u for e in edges for u in e] or [0]
    for new in range(m, n):
        targets: set[int] = set()
        while len(targets) < m:
            targets.add(rng.choice(repeated))
        for t in sorted(targets):
            edges.append((t, new))
            repeated.append(t)
            repeated.append(new)
    return simplify(edges, num_nodes=n)


def generate_synthetic(model: str, n: int, param: float, seed: int) -> EdgeList:
    """Dispatch to a generator; ``param`` is ``m`` for PA and ``p`` for ER."""
    if model in ("preferential_attachment", "pa"):
        if param != int(param):
            raise ConfigError(f"attachment edges per node must be an integer, got {param}")
        return preferential_attachment(n, int(param), seed)
    if model in ("erdos_renyi", "er"):
        return erdos_renyi(n, float(param), seed)
    raise ConfigError(f"unknown synthetic model {model!r}")


@dataclass
class GraphSummary:
    nodes: int
    edges: int
    num_weakly_connected_components: int
    avg_path_length: float
    density: float
    avg_clustering: float
    extra: dict = field(default_factory=dict, repr=False)

    def to_json(self, **kwargs) -> str:
        d = asdict(self)
        d.pop("extra")
        return json.dumps(d, **kwargs)


def summarize(graph, exact_threshold: int = 5000, source_budget: int = 1000,
              seed: int = 0) -> GraphSummary:
    """Dataset characteristics: counts, components, density, clustering, path length.

    The average path length runs over reachable ordered pairs only; it is exact
    up to ``exact_threshold`` nodes and otherwise estimated from
    ``source_budget`` uniformly drawn BFS sources.
    """
    from . import metrics

    if isinstance(graph, EdgeList):
        graph = graph.to_graph()
    n = len(graph)
    m = graph.edge_count
    density = 2.0 * m / (n * (n - 1)) if n > 1 else 0.0
    if n == 0:
        return GraphSummary(0, 0, 0, math.nan, 0.0, 0.0)
    comps = metrics.component_sizes(graph)
    clust = metrics.local_clustering(graph)
    if m:
        budget = n if n <= exact_threshold else source_budget
        counts = metrics.path_length_counts(graph, source_budget=budget, seed=seed)
        lengths = np.arange(len(counts))
        avg_path = float((lengths * counts).sum() / counts.sum())
    else:
        avg_path = math.nan
    return GraphSummary(
        nodes=n,
        edges=m,
        num_weakly_connected_components=len(comps),
        avg_path_length=avg_path,
        density=density,
        avg_clustering=float(np.mean(clust)),
    )
