# Back in time: how well does a sample drawn from the full stream describe
# the graph as it looked after the first 20% of its edges?

from streamsample import experiment as ex

dataset = {"model": "pa", "n": 1000, "param": 3, "seed": 1}

results = [
    ex.run_back_in_time(ex.RunConfig(dataset=dataset, algorithm=algo, phi=0.2, runs=5,
                                     back_in_time_fraction=0.2))
    for algo in ("pies", "ns", "es", "bfs")
]
report = ex.compare_report(results)
for row in report.lookup(property="average"):
    print(f"{row['algorithm']:5s} mean KS {row['mean_ks']:.3f} (sd {row['std_ks']:.3f})")
