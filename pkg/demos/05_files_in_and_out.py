# Reading an edge list from disk, summarising it and writing a sample back

import tempfile
from pathlib import Path

from streamsample import ingest_edge_list, permute_stream, pies, summarize
from streamsample.stream import write_edge_list

data = Path(__file__).resolve().parents[1] / "data"
karate = ingest_edge_list(data / "karate.txt")
print(summarize(karate).to_json(indent=2))

# duplicates and self-loops are dropped while reading
messy = ingest_edge_list(data / "dup_selfloop.txt")
print("dup_selfloop:", messy.num_nodes, "nodes", messy.edges.tolist())

sample = pies(permute_stream(karate, 4), n=12, seed=4)
with tempfile.TemporaryDirectory() as tmp:
    out = Path(tmp) / "sample.txt"
    write_edge_list(out, sample.edges(), karate.original_ids)
    back = ingest_edge_list(out)
    # an edge list cannot carry isolated nodes, so those are lost on the way out
    print("sample:", len(sample), "nodes,", sample.edge_count, "edges; read back:",
          back.num_nodes, "nodes,", back.num_edges, "edges")
