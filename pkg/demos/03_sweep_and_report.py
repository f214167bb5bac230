# A small comparison of all six samplers on one dataset
#
# run_sweep repeats a sampler over several seeded stream orders and scores
# the sample against the full graph at a few points of the stream.

from streamsample import experiment as ex

dataset = {"model": "pa", "n": 1000, "param": 3, "seed": 1}
name, el = ex.load_dataset(dataset)
ref = ex.Reference(el, name)  # full-graph distributions, computed once

results = []
for algo in ("pies", "ns", "es", "bfs", "ffs", "es_i"):
    cfg = ex.RunConfig(dataset=dataset, algorithm=algo, phi=0.2, runs=5,
                       eval_points=(0.5, 1.0))
    results.append(ex.run_sweep(cfg, reference=ref))

report = ex.compare_report(results)
print(report.to_text())

# the same numbers as rows, e.g. the mean KS over the four properties at the end of the stream
for row in report.lookup(property="average", eval_point=1.0):
    print(row["algorithm"], round(row["mean_ks"], 3))
