"""Exit criteria for the package, one test per criterion.

Each test records a PASS/FAIL line; the lines are printed in the terminal
summary (see conftest.py) whatever the verbosity.
"""
import os
import random
import time

import networkx as nx
import numpy as np
import pytest

import oracles
from conftest import random_edgelist
from streamsample import experiment as ex
from streamsample.graph import SampledGraph
from streamsample import metrics as M
from streamsample.metrics import Distribution
from streamsample.samplers import (
    PIES,
    StreamingBFS,
    StreamingES,
    StreamingNS,
    UndersizedReservoirError,
    uniform_hash_array,
)
from streamsample.stream import (
    StreamSource,
    erdos_renyi,
    generate_synthetic,
    ingest_edge_list,
    permute_stream,
    summarize,
)

LINES = []


def record(criterion: str, ok: bool, detail: str) -> None:
    LINES.append(f"[{'PASS' if ok else 'FAIL'}] {criterion}: {detail}")
    print(LINES[-1])
    assert ok, detail


STREAMING = [StreamingNS, StreamingES, StreamingBFS, PIES]
FIXTURES = {
    "pa": {"model": "pa", "n": 2000, "param": 3, "seed": 1},
    "er": {"model": "er", "n": 2000, "param": 0.004, "seed": 1},
}
PHIS = (0.1, 0.2, 0.3)
BASELINES = ("ns", "es", "bfs")


# -- 1 ---------------------------------------------------------------------

class CountingStream(StreamSource):
    def __init__(self, edges):
        super().__init__(edges)
        self.handed_out = 0

    def _gen(self):
        for e in super()._gen():
            self.handed_out += 1
            yield e


def _run_contract(cls, el, n, seed):
    stream = CountingStream(permute_stream(el, seed).edges)
    steps = []
    sampler = cls(n, seed)
    try:
        g = sampler.run(stream, on_step=lambda s: steps.append(s.t))
        err = None
    except UndersizedReservoirError as exc:
        g, err = None, exc
    return stream, steps, sampler, g, err


def test_c1_contract_suite():
    rng = random.Random(2024)
    failures = []
    checks = 0
    for i in range(500):
        el = random_edgelist(rng, max_nodes=100)
        stream_edges = {tuple(e) for e in el.edges.tolist()}
        n = rng.randint(1, el.num_nodes)
        for cls in STREAMING:
            checks += 1
            stream, steps, sampler, g, err = _run_contract(cls, el, n, i)
            tag = f"stream {i} {cls.name}"
            if stream.passes != 1 or stream.handed_out != el.num_edges:
                failures.append(f"{tag}: not a single pass")
            if steps != list(range(1, el.num_edges + 1)):
                failures.append(f"{tag}: edges not examined once each in order")
            if err is not None:
                # only legitimate when the reservoir really covers fewer than n nodes
                if cls is not StreamingES or err.achieved >= n or len(sampler.sample) >= n:
                    failures.append(f"{tag}: unexpected {err!r}")
                continue
            try:
                g.check_invariants()
            except AssertionError as exc:
                failures.append(f"{tag}: {exc}")
            if not g.edge_set() <= stream_edges:
                failures.append(f"{tag}: sampled edge not in stream")
            if any(u not in g or v not in g for u, v in g.edges()):
                failures.append(f"{tag}: endpoint closure broken")
            _, _, _, g2, err2 = _run_contract(cls, el, n, i)
            if g2 != g or err2 is not None:
                failures.append(f"{tag}: not deterministic")
    record("C1 contract suite", not failures,
           f"{checks} sampler runs over 500 streams, {len(failures)} violations"
           + (f" (first: {failures[0]})" if failures else ""))


# -- 2 ---------------------------------------------------------------------

def test_c2_pies_cardinality():
    rng = random.Random(7)
    violations = 0
    steps_checked = 0
    saturated = 0
    for i in range(100):
        el = random_edgelist(rng, max_nodes=100)
        n = rng.randint(1, max(1, el.num_nodes - 1))
        sizes = []
        PIES(n, i).run(permute_stream(el, i), on_step=lambda s: sizes.append(len(s.sample)))
        if n not in sizes:
            continue
        saturated += 1
        tail = sizes[sizes.index(n):]
        steps_checked += len(tail)
        violations += sum(1 for s in tail if s != n)
    record("C2 PIES cardinality", violations == 0 and saturated > 90,
           f"{saturated}/100 streams saturated, {steps_checked} post-saturation steps, "
           f"{violations} violations")


# -- 3 ---------------------------------------------------------------------

def test_c3_forward_induction_oracle():
    rng = random.Random(11)
    mismatches = 0
    for i in range(200):
        el = random_edgelist(rng, max_nodes=60)
        n = rng.randint(1, el.num_nodes)
        stream = permute_stream(el, i)
        edges = stream.edges.tolist()
        residents = []
        g = PIES(n, i).run(stream, on_step=lambda s: residents.append(set(s.sample.nodes)))
        # an edge survives iff both endpoints are resident from its arrival to the end
        expected = set()
        stay = [set() for _ in edges]
        running = residents[-1].copy() if residents else set()
        for t in range(len(edges) - 1, -1, -1):
            running &= residents[t]
            stay[t] = set(running)
        for t, (u, v) in enumerate(edges):
            if u in stay[t] and v in stay[t]:
                expected.add((min(u, v), max(u, v)))
        if g.edge_set() != expected:
            mismatches += 1
    record("C3 PIES forward induction", mismatches == 0,
           f"200 streams (N <= 60), {mismatches} edge-set mismatches")


# -- 4 ---------------------------------------------------------------------

def test_c4_min_hash_ns_equivalence():
    rng = random.Random(13)
    mismatches = 0
    for i in range(200):
        el = random_edgelist(rng, max_nodes=100)
        n = rng.randint(1, el.num_nodes)
        stream = permute_stream(el, i)
        seen = np.unique(stream.edges)
        h = uniform_hash_array(seen, i)
        expected = set(seen[np.argsort(h, kind="stable")[:n]].tolist())
        g = StreamingNS(n, i).run(stream)
        if set(g.nodes) != expected:
            mismatches += 1

    el = generate_synthetic("pa", 50, 2, seed=0)
    runs = 10_000
    counts = np.zeros(50)
    for seed in range(runs):
        g = StreamingNS(10, seed).run(permute_stream(el, seed))
        counts[list(g.nodes)] += 1
    dev = float(np.abs(counts / runs - 0.2).max())
    record("C4 min-hash NS equivalence", mismatches == 0 and dev <= 0.02,
           f"{mismatches}/200 node-set mismatches; max |freq - 10/50| = {dev:.4f} (<= 0.02)")


# -- 5 ---------------------------------------------------------------------

def _fixture_graphs():
    rng = random.Random(17)
    graphs = []
    data = os.path.join(os.path.dirname(__file__), "..", "data")
    for fname in sorted(os.listdir(data)):
        fmt = "csv" if fname.endswith(".csv") else "whitespace"
        el = ingest_edge_list(os.path.join(data, fname), format=fmt)
        graphs.append((fname, el.num_nodes, el.edges.tolist()))
    for model, n, p in (("pa", 200, 2), ("er", 200, 0.02), ("pa", 120, 1), ("er", 150, 0.005)):
        el = generate_synthetic(model, n, p, seed=3)
        graphs.append((f"{model}{n}", el.num_nodes, el.edges.tolist()))
    for i in range(20):
        el = random_edgelist(rng, max_nodes=80)
        graphs.append((f"random{i}", el.num_nodes, el.edges.tolist()))
    return graphs


def _same(a: Distribution, b: Distribution) -> bool:
    return (np.array_equal(a.support, b.support) and np.array_equal(a.pdf, b.pdf)
            and np.array_equal(a.cdf, b.cdf) and a.sample_count == b.sample_count)


def test_c5_metric_oracles():
    bad = []
    graphs = _fixture_graphs()
    for name, n, edges in graphs:
        nodes = list(range(n))
        g = SampledGraph(nodes, edges)
        pairs = [
            ("degree", M.degree_distribution(g), oracles.degree_values(nodes, edges)),
            ("clustering", M.clustering_distribution(g), oracles.clustering_values(nodes, edges)),
            ("wcc", M.wcc_size_distribution(g), oracles.component_sizes(nodes, edges)),
        ]
        if edges:
            pairs.append(("path", M.path_length_distribution(g, source_budget=n),
                          oracles.floyd_warshall_lengths(nodes, edges)))
        for prop, got, values in pairs:
            if not _same(got, Distribution.from_values(values)):
                bad.append(f"{name}/{prop}")

    rng = np.random.default_rng(5)
    ks_err = 0.0
    for _ in range(300):
        a = rng.integers(0, 12, size=rng.integers(1, 40)).tolist()
        b = rng.integers(0, 12, size=rng.integers(1, 40)).tolist()
        got = M.ks_distance(Distribution.from_values(a), Distribution.from_values(b))
        ks_err = max(ks_err, abs(got - oracles.step_cdf_sup(oracles.exact_pdf(a),
                                                            oracles.exact_pdf(b))))
    two_point = M.ks_distance(Distribution.from_counts([0, 1], [5, 5]),
                              Distribution.from_counts([0, 1], [2, 8]))
    ok = not bad and ks_err <= 1e-12 and abs(two_point - 0.3) <= 1e-12
    record("C5 metric oracles", ok,
           f"{len(graphs)} graphs x 4 properties, {len(bad)} mismatches {bad[:3]}; "
           f"max KS error {ks_err:.1e}; two-point KS = {two_point:.15f}")


# -- 6 ---------------------------------------------------------------------

def test_c6_state_bound():
    n = 20_000
    lines = []
    ok = True
    for p in (1e-5, 1e-4):
        el = erdos_renyi(200_000, p, seed=7)
        for cls in (PIES, StreamingNS):
            s = cls(n, 1)
            tic = time.perf_counter()
            g = s.run(permute_stream(el, 1))
            dt = time.perf_counter() - tic
            bound = 4 * (n + g.edge_count)
            ok &= s.peak_state < bound and dt < 60
            lines.append(f"{cls.name} M={el.num_edges}: peak {s.peak_state} < {bound}, {dt:.1f}s")
    record("C6 state bound", ok, "; ".join(lines))


# -- 7 / 8 -------------------------------------------------------------------

@pytest.fixture(scope="module")
def ordering_reports():
    reports = {}
    for fname, ds in FIXTURES.items():
        name, el = ex.load_dataset(ds)
        ref = ex.Reference(el, name)
        for phi in PHIS:
            results = [ex.run_sweep(ex.RunConfig(dataset=ds, algorithm=a, phi=phi, runs=10,
                                                 base_seed=0, eval_points=(1.0,)), reference=ref)
                       for a in ("pies",) + BASELINES]
            reports[(fname, phi)] = ex.compare_report(results)
    return reports


def _mean(rep, algo, prop):
    return rep.lookup(algorithm=algo, property=prop)[0]["mean_ks"]


def test_c7_ordering_reproduction(ordering_reports):
    misses = []
    for (fname, phi), rep in ordering_reports.items():
        for prop in ("degree", "clustering"):
            mine = _mean(rep, "pies", prop)
            for b in BASELINES:
                if not mine < _mean(rep, b, prop):
                    misses.append(f"{fname} phi={phi} {prop}: pies {mine:.3f} >= {b} "
                                  f"{_mean(rep, b, prop):.3f}")
        best = min(_mean(rep, a, "path_length") for a in ("pies",) + BASELINES)
        mine = _mean(rep, "pies", "path_length")
        if mine - best > 0.05:
            misses.append(f"{fname} phi={phi} path_length: pies {mine:.3f} > best {best:.3f} + 0.05")
    record("C7 ordering reproduction", not misses,
           f"{len(misses)} of 42 comparisons fail" + ("; " + " | ".join(misses) if misses else ""))


def test_c8_component_size_exception(ordering_reports):
    detail = []
    ok = True
    for fname in FIXTURES:
        held = [phi for phi in PHIS
                if _mean(ordering_reports[(fname, phi)], "es", "wcc_size")
                <= _mean(ordering_reports[(fname, phi)], "pies", "wcc_size")]
        ok &= len(held) >= 2
        vals = ", ".join(
            f"{phi}: es {_mean(ordering_reports[(fname, phi)], 'es', 'wcc_size'):.3f} "
            f"vs pies {_mean(ordering_reports[(fname, phi)], 'pies', 'wcc_size'):.3f}"
            for phi in PHIS)
        detail.append(f"{fname} holds at {len(held)}/3 ({vals})")
    record("C8 component-size exception", ok, "; ".join(detail))


# -- 9 ---------------------------------------------------------------------

def test_c9_full_budget_degeneracy():
    worst = 0.0
    count = 0
    for ds in FIXTURES.values():
        name, el = ex.load_dataset(ds)
        ref = ex.Reference(el, name)
        for algo in ("pies", "ns", "es", "bfs", "ffs", "es_i"):
            # BFS can only reach every edge when its window spans the whole stream
            cfg = ex.RunConfig(dataset=ds, algorithm=algo, phi=1.0, runs=2, eval_points=(1.0,),
                               wsize=el.num_edges)
            res = ex.run_sweep(cfg, reference=ref)
            for r in res.records:
                worst = max(worst, abs(r["ks"]))
                count += 1
            assert not res.failures
    record("C9 phi=1 degeneracy", worst <= 1e-12 and count == 2 * 6 * 2 * 4,
           f"{count} KS values, max {worst:.1e}")


# -- 10 --------------------------------------------------------------------

TOY_EXPECTED = {
    # nodes, edges, components, density, avg clustering, avg path length
    "triangle.txt": (3, 3, 1, 1.0, 1.0, 1.0),
    "two_triangles_and_edge.txt": (8, 7, 3, 14 / 56, 6 / 8, 1.0),
    "path5.csv": (5, 4, 1, 8 / 20, 0.0, 20 / 10),
    "dup_selfloop.txt": (3, 2, 1, 4 / 6, 0.0, 4 / 3),
}


def test_c10_summary_pipeline(data_dir):
    bad = []
    for fname, want in TOY_EXPECTED.items():
        fmt = "csv" if fname.endswith(".csv") else "whitespace"
        s = summarize(ingest_edge_list(data_dir / fname, format=fmt))
        got = (s.nodes, s.edges, s.num_weakly_connected_components, s.density,
               s.avg_clustering, s.avg_path_length)
        if got[:3] != want[:3] or any(abs(a - b) > 1e-12 for a, b in zip(got[3:], want[3:])):
            bad.append(f"{fname}: {got} != {want}")
    # karate club, checked against networkx
    s = summarize(ingest_edge_list(data_dir / "karate.txt"))
    kg = nx.karate_club_graph()
    want = (kg.number_of_nodes(), kg.number_of_edges(), nx.number_connected_components(kg),
            nx.density(kg), nx.average_clustering(kg), nx.average_shortest_path_length(kg))
    got = (s.nodes, s.edges, s.num_weakly_connected_components, s.density, s.avg_clustering,
           s.avg_path_length)
    if got[:3] != want[:3] or any(abs(a - b) > 1e-12 for a, b in zip(got[3:], want[3:])):
        bad.append(f"karate: {got} != {want}")
    hep = os.environ.get("HEPPH_PATH")
    if hep:
        el = ingest_edge_list(hep)
        if (el.num_nodes, el.num_edges) != (34546, 420877):
            bad.append(f"HepPH: {(el.num_nodes, el.num_edges)}")
        hep_note = "HepPH counts checked"
    else:
        hep_note = "HepPH not supplied (set HEPPH_PATH)"
    record("C10 summary pipeline", not bad,
           f"{len(TOY_EXPECTED) + 1} bundled fixtures exact; {hep_note}"
           + (f"; mismatches: {bad}" if bad else ""))
