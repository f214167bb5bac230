"""One-pass graph-stream samplers: node, edge, windowed BFS and PIES.

Every sampler consumes ``(u, v)`` edges through ``process`` and keeps its
current sample in ``self.sample``. ``snapshot()`` returns the sample as it
would be reported at this point of the stream, without disturbing the
sampler; ``finish()`` closes the pass and returns the final sample.
``peak_state`` tracks the largest number of stored entries (nodes, edges,
reservoir slots, window and queue entries) seen during the pass.
"""
from __future__ import annotations

import random
from collections import deque

from ..graph import SampledGraph
from .minhash import MinHashReservoir, edge_key, hash_with_key, salt_key


class UndersizedReservoirError(RuntimeError):
    def __init__(self, achieved: int, target: int):
        super().__init__(f"edge reservoir covers only {achieved} nodes, {target} requested")
        self.achieved = achieved
        self.target = target


class StreamingSampler:
    name = "base"

    def __init__(self, n: int, seed: int = 0):
        if n < 1:
            raise ValueError(f"sample size must be at least 1, got {n}")
        self.n = n
        self.seed = seed
        self.sample = SampledGraph()
        self.t = 0
        self.peak_state = 0

    def process(self, u: int, v: int) -> None:
        raise NotImplementedError

    def state_size(self) -> int:
        return len(self.sample) + self.sample.edge_count

    def snapshot(self) -> SampledGraph:
        return self.sample.copy()

    def finish(self) -> SampledGraph:
        return self.sample

    def run(self, stream, on_step=None, checkpoints=(), on_checkpoint=None) -> SampledGraph:
        """Feed the whole stream through ``process`` and return ``finish()``.

        ``on_step(self)`` is called after every edge. For each 1-based stream
        position in ``checkpoints``, ``on_checkpoint(position, self)`` is called
        right after that edge has been processed.
        """
        marks = set(checkpoints)
        for u, v in stream:
            self.process(u, v)
            if on_step is not None:
                on_step(self)
            if self.t in marks and on_checkpoint is not None:
                on_checkpoint(self.t, self)
        return self.finish()


class StreamingNS(StreamingSampler):
    """Node sampling through a bottom-n min-hash reservoir over node ids.

    A node enters when its hash is among the ``n`` smallest seen so far,
    evicting the current largest-hash node together with its sample edges.
    An edge is kept when both endpoints are resident on arrival.
    """

    name = "ns"

    def __init__(self, n: int, seed: int = 0):
        super().__init__(n, seed)
        self.reservoir = MinHashReservoir(n)
        self._salt = salt_key(seed)

    def node_hash(self, u: int) -> float:
        return hash_with_key(u, self._salt)

    def process(self, u, v):
        self.t += 1
        s = self.sample
        for x in (u, v):
            if x not in s.adj:
                admitted, evicted = self.reservoir.offer(x, hash_with_key(x, self._salt))
                if admitted:
                    if evicted is not None:
                        s.remove_node(evicted)
                    s.add_node(x)
        if u in s.adj and v in s.adj:
            s.add_edge(u, v)
        size = len(s.adj) + s.edge_count + self.reservoir.state_size()
        if size > self.peak_state:
            self.peak_state = size

    def state_size(self):
        return len(self.sample) + self.sample.edge_count + self.reservoir.state_size()


class StreamingES(StreamingSampler):
    """Edge sampling through a bottom-m min-hash reservoir over edges.

    The sample holds the ``m`` smallest-hash edges and their endpoints. At
    report time the largest-hash edges are pruned, one at a time, until the
    node count first drops to ``n`` or below. ``m`` defaults to ``4 * n``.
    """

    name = "es"

    def __init__(self, n: int, seed: int = 0, m: int | None = None):
        super().__init__(n, seed)
        self.m = 4 * n if m is None else m
        if self.m < 1:
            raise ValueError("edge reservoir size must be at least 1")
        self.reservoir = MinHashReservoir(self.m)
        self._salt = salt_key(seed)

    def edge_hash(self, u: int, v: int) -> float:
        return hash_with_key(edge_key(u, v), self._salt)

    def process(self, u, v):
        self.t += 1
        key = (u, v) if u < v else (v, u)
        h = hash_with_key(edge_key(u, v), self._salt)
        admitted, evicted = self.reservoir.offer(key, h)
        s = self.sample
        if admitted:
            if evicted is not None:
                a, b = evicted
                s.remove_edge(a, b)
                if not s.adj[a]:
                    s.remove_node(a)
                if not s.adj[b]:
                    s.remove_node(b)
            s.add_node(u).add_node(v).add_edge(u, v)
        size = len(s.adj) + s.edge_count + self.reservoir.state_size()
        if size > self.peak_state:
            self.peak_state = size

    def state_size(self):
        return len(self.sample) + self.sample.edge_count + self.reservoir.state_size()

    def pruned(self, strict: bool = True) -> SampledGraph:
        g = self.sample.copy()
        if len(g) < self.n:
            if strict:
                raise UndersizedReservoirError(len(g), self.n)
            return g
        ranked = sorted(self.reservoir.entries.items(), key=lambda kv: kv[1], reverse=True)
        for (a, b), _ in ranked:
            if len(g) <= self.n:
                break
            g.remove_edge(a, b)
            if not g.adj[a]:
                g.remove_node(a)
            if not g.adj[b]:
                g.remove_node(b)
        return g

    def snapshot(self):
        return self.pruned(strict=False)

    def finish(self):
        return self.pruned(strict=True)


class StreamingBFS(StreamingSampler):
    """Breadth-first burning over a sliding window of unsampled stream edges.

    The window holds at most ``wsize`` unsampled edges, oldest evicted first.
    Each stream step performs one action on the focus node: burn one of its
    window edges chosen uniformly (enqueueing the far endpoint), or move the
    focus to the next queued node, or jump to a uniform window vertex when
    the queue is empty. After the stream ends the remaining window is worked
    off the same way. Burning continues while the sample has at most ``n``
    nodes; the first step that exceeds ``n`` ends sampling, and only the
    first ``n`` nodes in insertion order (with their edges) are kept.
    """

    name = "bfs"

    def __init__(self, n: int, seed: int = 0, wsize: int = 100):
        super().__init__(n, seed)
        if wsize < 1:
            raise ValueError("window size must be at least 1")
        self.wsize = wsize
        self.rng = random.Random(seed)
        self.window: dict[int, tuple[int, int]] = {}
        self.incident: dict[int, set[int]] = {}
        self.queue: deque = deque()
        self.focus = None
        self.done = False
        self._final = None

    def _push(self, t, u, v):
        self.window[t] = (u, v)
        self.incident.setdefault(u, set()).add(t)
        self.incident.setdefault(v, set()).add(t)
        while len(self.window) > self.wsize:
            self._drop(next(iter(self.window)))

    def _drop(self, t):
        u, v = self.window.pop(t)
        for x in (u, v):
            ts = self.incident[x]
            ts.discard(t)
            if not ts:
                del self.incident[x]

    def _random_window_vertex(self):
        if not self.incident:
            return None
        return self.rng.choice(list(self.incident))

    def _step(self):
        s = self.sample
        u = self.focus
        if u is None:
            self.focus = self._random_window_vertex()
            return
        if u not in s.adj:
            s.add_node(u)
        ts = self.incident.get(u)
        if ts:
            t = self.rng.choice(sorted(ts))
            a, b = self.window[t]
            self._drop(t)
            v = b if a == u else a
            s.add_node(v).add_edge(u, v)
            self.queue.append(v)
        elif self.queue:
            self.focus = self.queue.popleft()
        else:
            self.focus = self._random_window_vertex()
        if len(s.adj) > self.n:
            self.done = True

    def process(self, u, v):
        self.t += 1
        if not self.done:
            if self.t > self.wsize:
                self._step()
            if not self.done:
                self._push(self.t, u, v)
                if self.t == self.wsize:
                    self.focus = self._random_window_vertex()
        size = (len(self.sample.adj) + self.sample.edge_count + len(self.window)
                + len(self.queue))
        if size > self.peak_state:
            self.peak_state = size

    def state_size(self):
        return len(self.sample) + self.sample.edge_count + len(self.window) + len(self.queue)

    def _trimmed(self, g):
        if len(g) <= self.n:
            return g
        return g.subgraph(list(g.adj)[: self.n])

    def snapshot(self):
        return self._trimmed(self.sample.copy())

    def finish(self):
        if self._final is None:
            while not self.done and (self.focus is not None or self.window):
                self._step()
            self.done = True
            self._final = self._trimmed(self.sample)
            self.sample = self._final
        return self._final


class PIES(StreamingSampler):
    """Partially-induced edge sampling.

    Until ``n`` nodes are resident every edge and its endpoints are taken.
    Afterwards, with probability ``|E_s| / t`` each new endpoint replaces a
    uniformly chosen resident node (and that node's sample edges), and the
    edge is kept whenever both endpoints are resident after that step.
    """

    name = "pies"

    def __init__(self, n: int, seed: int = 0):
        super().__init__(n, seed)
        self.rng = random.Random(seed)
        self.slots: list[int] = []
        self.slot_of: dict[int, int] = {}

    def _insert(self, x):
        self.slot_of[x] = len(self.slots)
        self.slots.append(x)
        self.sample.add_node(x)

    def _evict(self, x):
        i = self.slot_of.pop(x)
        last = self.slots.pop()
        if last != x:
            self.slots[i] = last
            self.slot_of[last] = i
        self.sample.remove_node(x)

    def process(self, u, v):
        self.t += 1
        s = self.sample
        adj = s.adj
        if len(adj) < self.n:
            if u not in adj:
                self._insert(u)
            if v not in adj and len(adj) < self.n:
                self._insert(v)
        elif self.rng.random() <= s.edge_count / self.t:
            new_u = u not in adj
            new_v = v not in adj
            k = len(self.slots)
            randrange = self.rng.randrange
            if new_u and new_v and k >= 2:
                i = randrange(k)
                j = randrange(k)
                while j == i:
                    j = randrange(k)
                victim_u, victim_v = self.slots[i], self.slots[j]
                self._evict(victim_u)
                self._insert(u)
                self._evict(victim_v)
                self._insert(v)
            elif new_u:
                self._evict(self.slots[randrange(k)])
                self._insert(u)
            elif new_v:
                self._evict(self.slots[randrange(k)])
                self._insert(v)
        if u in adj and v in adj:
            s.add_edge(u, v)
        size = len(adj) + s.edge_count + len(self.slots) + len(self.slot_of)
        if size > self.peak_state:
            self.peak_state = size

    def state_size(self):
        return (len(self.sample) + self.sample.edge_count + len(self.slots)
                + len(self.slot_of))


def streaming_ns(stream, n: int, seed: int = 0) -> SampledGraph:
    return StreamingNS(n, seed).run(stream)


def streaming_es(stream, n: int, m: int | None = None, seed: int = 0) -> SampledGraph:
    return StreamingES(n, seed, m=m).run(stream)


def streaming_bfs(stream, n: int, wsize: int = 100, seed: int = 0) -> SampledGraph:
    return StreamingBFS(n, seed, wsize=wsize).run(stream)


def pies(stream, n: int, seed: int = 0) -> SampledGraph:
    return PIES(n, seed).run(stream)
