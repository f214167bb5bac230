from .minhash import MinHashReservoir, edge_key, uniform_hash, uniform_hash_array
from .offline import burn_count, offline_es_induced, offline_ffs
from .streaming import (
    PIES,
    StreamingBFS,
    StreamingES,
    StreamingNS,
    StreamingSampler,
    UndersizedReservoirError,
    pies,
    streaming_bfs,
    streaming_es,
    streaming_ns,
)

STREAMING = {"ns": StreamingNS, "es": StreamingES, "bfs": StreamingBFS, "pies": PIES}
OFFLINE = {"ffs": offline_ffs, "es_i": offline_es_induced}
ALGORITHMS = tuple(STREAMING) + tuple(OFFLINE)

__all__ = [
    "ALGORITHMS",
    "MinHashReservoir",
    "OFFLINE",
    "PIES",
    "STREAMING",
    "StreamingBFS",
    "StreamingES",
    "StreamingNS",
    "StreamingSampler",
    "UndersizedReservoirError",
    "burn_count",
    "edge_key",
    "offline_es_induced",
    "offline_ffs",
    "pies",
    "streaming_bfs",
    "streaming_es",
    "streaming_ns",
    "uniform_hash",
    "uniform_hash_array",
]
