# Topological distributions and how far apart two of them are

from streamsample import generate_synthetic, permute_stream, pies
from streamsample import metrics as M

el = generate_synthetic("er", 1500, 0.004, seed=3)
g = el.to_graph()
sample = pies(permute_stream(el, 0), 300, seed=0)

for prop in M.PROPERTIES:
    full = M.property_distribution(prop, g)
    part = M.property_distribution(prop, sample)
    print(f"{prop:12s} support {len(full.support):4d} values, "
          f"KS={M.ks_distance(full, part):.3f} "
          f"skew={M.skew_divergence(full, part):.3f}")

# a distribution is a support with its pdf and cdf; the ccdf is handy for plots
deg = M.degree_distribution(g)
print("degree values:", deg.support[:5], "...")
print("P(degree > 8) =", float(deg.ccdf[deg.support == 8][0]))

# KS is the largest vertical gap between the two step CDFs
a = M.Distribution.from_counts([0, 1], [5, 5])
b = M.Distribution.from_counts([0, 1], [2, 8])
print("two-point KS:", M.ks_distance(a, b))
