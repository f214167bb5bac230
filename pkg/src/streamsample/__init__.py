"""Single-pass sampling of graph streams and evaluation of sample quality."""
from .graph import SampledGraph, canonical
from .metrics import (
    Distribution,
    clustering_distribution,
    degree_distribution,
    ks_distance,
    path_length_distribution,
    skew_divergence,
    wcc_size_distribution,
)
from .samplers import (
    PIES,
    StreamingBFS,
    StreamingES,
    StreamingNS,
    offline_es_induced,
    offline_ffs,
    pies,
    streaming_bfs,
    streaming_es,
    streaming_ns,
    uniform_hash,
)
from .stream import (
    EdgeList,
    StreamSource,
    generate_synthetic,
    ingest_edge_list,
    permute_stream,
    summarize,
)

__version__ = "0.1.0"
