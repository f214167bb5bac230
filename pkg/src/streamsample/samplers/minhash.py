"""Seeded uniform hashing and a bottom-k (min-hash) reservoir."""
from __future__ import annotations

import heapq

import numpy as np

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _mix64(x: int) -> int:
    # splitmix64 finalizer
    x = (x + _GOLDEN) & _MASK
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK
    return x ^ (x >> 31)


def salt_key(salt: int) -> int:
    """Pre-mixed salt; pass it to ``hash_with_key`` inside hot loops."""
    return _mix64(_mix64(salt & _MASK) ^ 0x5851F42D4C957F2D)


def hash_with_key(key: int, mixed_salt: int) -> float:
    return (_mix64((key & _MASK) ^ mixed_salt) >> 11) * (1.0 / (1 << 53))


def uniform_hash(key: int, salt: int) -> float:
    """Deterministic pseudo-random value in [0, 1) for an integer key.

    Different salts give independent-looking hash functions.
    """
    return hash_with_key(key, salt_key(salt))


def edge_key(u: int, v: int) -> int:
    """Order-independent integer key for the undirected edge ``u--v``."""
    if u > v:
        u, v = v, u
    return (u << 32) | v


def uniform_hash_array(keys, salt: int) -> np.ndarray:
    """Vectorised ``uniform_hash`` over an integer array (same values)."""
    k = np.asarray(keys).astype(np.uint64)
    s = np.uint64(salt_key(salt))
    with np.errstate(over="ignore"):
        x = (k ^ s) + np.uint64(_GOLDEN)
        x = (x ^ (x >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        x = (x ^ (x >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
        x = x ^ (x >> np.uint64(31))
    return (x >> np.uint64(11)).astype(np.float64) * (1.0 / (1 << 53))


class MinHashReservoir:
    """Keeps the ``capacity`` keys with the smallest hash values seen so far.

    ``offer`` returns ``(admitted, evicted_key)``. Eviction always removes the
    current maximum stored hash, found through a max-heap kept in lockstep
    with the membership dict (keys only ever leave by being the maximum).
    """

    def __init__(self, capacity: int):
        if capacity < 1:
            raise ValueError("capacity must be at least 1")
        self.capacity = capacity
        self.entries: dict = {}
        self._heap: list = []  # (-hash, key)

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, key) -> bool:
        return key in self.entries

    def threshold(self) -> float:
        """Largest stored hash once full, else 1.0 (anything is admitted)."""
        if len(self.entries) < self.capacity:
            return 1.0
        return -self._heap[0][0]

    def offer(self, key, h: float):
        if key in self.entries:
            return False, None
        if len(self.entries) < self.capacity:
            self.entries[key] = h
            heapq.heappush(self._heap, (-h, key))
            return True, None
        if h >= -self._heap[0][0]:
            return False, None
        _, evicted = heapq.heapreplace(self._heap, (-h, key))
        del self.entries[evicted]
        self.entries[key] = h
        return True, evicted

    def state_size(self) -> int:
        return len(self.entries) + len(self._heap)
