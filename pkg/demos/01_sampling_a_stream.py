# Sampling a graph stream in one pass
#
# Build a preferential-attachment graph, shuffle its edges into a stream and
# let each streaming sampler look at every edge exactly once.

import numpy as np

from streamsample import generate_synthetic, permute_stream
from streamsample.samplers import PIES, StreamingBFS, StreamingES, StreamingNS

el = generate_synthetic("pa", 3000, 3, seed=0)
print("full graph:", el.num_nodes, "nodes,", el.num_edges, "edges")

n = 300  # node budget, 10% of the graph

for cls in (StreamingNS, StreamingES, StreamingBFS, PIES):
    sampler = cls(n, seed=1)
    sample = sampler.run(permute_stream(el, seed=1))
    print(f"{cls.name:5s} nodes={len(sample):4d} edges={sample.edge_count:5d} "
          f"peak state={sampler.peak_state}")

# PIES prefers nodes that show up often in the stream, so its nodes have
# a higher full-graph degree than a uniform node sample
full = el.to_graph()
for cls in (StreamingNS, PIES):
    sample = cls(n, seed=1).run(permute_stream(el, seed=1))
    print(cls.name, "mean full-graph degree of sampled nodes:",
          round(float(np.mean([full.degree(u) for u in sample.nodes])), 2))
print("graph mean degree:", round(2 * el.num_edges / el.num_nodes, 2))

# the stream can be watched while it flows; here we look at the PIES sample size
sizes = []
PIES(n, seed=1).run(permute_stream(el, seed=1), on_step=lambda s: sizes.append(len(s.sample)))
print("PIES sample size after 100, 1000, all edges:", sizes[99], sizes[999], sizes[-1])
