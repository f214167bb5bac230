"""Multi-seed sampling sweeps, back-in-time evaluation and aggregation."""
from __future__ import annotations

import csv
import io
import json
import logging
import math
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import metrics
from .graph import SampledGraph
from .metrics import PROPERTIES, EmptyDistributionError
from .samplers import OFFLINE, STREAMING, UndersizedReservoirError
from .stream import ConfigError, EdgeList, generate_synthetic, ingest_edge_list, permute_stream

logger = logging.getLogger(__name__)

#: incremented every time full-graph reference distributions are computed
REFERENCE_COMPUTATIONS = 0


class AggregationError(ValueError):
    pass


@dataclass
class RunConfig:
    dataset: str | dict
    algorithm: str = "pies"
    phi: float = 0.2
    runs: int = 10
    base_seed: int = 0
    eval_points: tuple = (0.25, 0.5, 0.75, 1.0)
    back_in_time_fraction: float | None = None
    m: int | None = None
    wsize: int = 100
    p_f: float = 0.7
    alpha: float = 0.99
    path_source_budget: int = 1000
    exact_path_threshold: int = 5000
    format: str = "whitespace"

    def __post_init__(self):
        self.eval_points = tuple(float(x) for x in self.eval_points)
        if self.algorithm not in STREAMING and self.algorithm not in OFFLINE:
            raise ConfigError(f"unknown algorithm {self.algorithm!r}")
        if not 0.0 < self.phi <= 1.0:
            raise ConfigError(f"phi must lie in (0, 1], got {self.phi}")
        if self.runs < 1:
            raise ConfigError("runs must be at least 1")
        pts = self.eval_points
        if (not pts or list(pts) != sorted(pts) or pts[-1] != 1.0
                or any(not 0.0 < x <= 1.0 for x in pts)):
            raise ConfigError(f"eval_points must be ascending in (0, 1] and end at 1.0, got {pts}")
        f = self.back_in_time_fraction
        if f is not None and not 0.0 < f <= 1.0:
            raise ConfigError(f"back_in_time_fraction must lie in (0, 1], got {f}")

    @classmethod
    def from_dict(cls, d: dict) -> RunConfig:
        return cls(**d)

    @classmethod
    def from_file(cls, path) -> RunConfig:
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))

    def to_dict(self) -> dict:
        d = asdict(self)
        d["eval_points"] = list(self.eval_points)
        return d


@dataclass
class RunResult:
    config: dict
    dataset_name: str
    dataset_stats: dict
    sample_size: int
    records: list = field(default_factory=list)
    failures: list = field(default_factory=list)
    timings: list = field(default_factory=list)

    def to_dict(self, timings: bool = False) -> dict:
        d = asdict(self)
        if not timings:
            d.pop("timings")
        return d

    def to_json(self, timings: bool = False) -> str:
        """Serialise; wall-clock timings are left out unless asked for, so that
        identical configs give byte-identical output."""
        return json.dumps(self.to_dict(timings), sort_keys=True, indent=1)

    @classmethod
    def from_dict(cls, d: dict) -> RunResult:
        d = dict(d)
        d.setdefault("timings", [])
        return cls(**d)

    def records_csv(self) -> str:
        return _records_to_csv(self.records)


RECORD_FIELDS = ("dataset", "algorithm", "phi", "run", "seed", "eval_point", "position",
                 "property", "ks", "skew", "nodes", "edges", "peak_state", "degenerate")


def _records_to_csv(records) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=RECORD_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in records:
        w.writerow({k: r.get(k) for k in RECORD_FIELDS})
    return buf.getvalue()


def load_dataset(spec, format: str = "whitespace") -> tuple[str, EdgeList]:
    """Resolve a dataset spec to ``(name, EdgeList)``.

    ``spec`` is an edge-list path, a dict ``{"model", "n", "param", "seed"}``,
    or the string form ``"model:n:param:seed"`` (e.g. ``"pa:2000:3:1"``).
    """
    if isinstance(spec, dict):
        d = spec
        name = d.get("name") or f"{d['model']}:{d['n']}:{d['param']}:{d.get('seed', 0)}"
        return name, generate_synthetic(d["model"], int(d["n"]), d["param"], int(d.get("seed", 0)))
    spec = str(spec)
    head = spec.split(":")[0]
    if head in ("pa", "er", "preferential_attachment", "erdos_renyi") and spec.count(":") >= 2:
        parts = spec.split(":")
        model, n, param = parts[0], int(parts[1]), float(parts[2])
        seed = int(parts[3]) if len(parts) > 3 else 0
        return spec, generate_synthetic(model, n, param, seed)
    return Path(spec).stem, ingest_edge_list(spec, format=format)


class Reference:
    """Full-graph distributions for one dataset, computed once and reused."""

    def __init__(self, el: EdgeList, name: str, source_budget=1000, exact_threshold=5000):
        global REFERENCE_COMPUTATIONS
        REFERENCE_COMPUTATIONS += 1
        self.name = name
        self.edgelist = el
        self.graph = el.to_graph()
        self.source_budget = source_budget
        self.exact_threshold = exact_threshold
        self.distributions = property_distributions(self.graph, source_budget, exact_threshold)
        n = len(self.graph)
        self.stats = {
            "nodes": n,
            "edges": self.graph.edge_count,
            "density": 2.0 * self.graph.edge_count / (n * (n - 1)) if n > 1 else 0.0,
            "avg_clustering": float(np.mean(metrics.local_clustering(self.graph))) if n else 0.0,
        }


def property_distributions(g: SampledGraph, source_budget=1000, exact_threshold=5000,
                           seed: int = 0) -> dict:
    """All four property distributions; ``None`` where the graph has none."""
    budget = len(g) if len(g) <= exact_threshold else source_budget
    out = {}
    for prop in PROPERTIES:
        kw = {"source_budget": max(budget, 1), "seed": seed} if prop == "path_length" else {}
        try:
            out[prop] = metrics.property_distribution(prop, g, **kw)
        except EmptyDistributionError:
            out[prop] = None
    return out


def sample_size(phi: float, num_nodes: int) -> int:
    n = int(round(phi * num_nodes))
    if n < 1:
        raise ConfigError(f"phi={phi} leaves no nodes to sample from a {num_nodes}-node graph")
    return n


def make_sampler(cfg: RunConfig, n: int, seed: int):
    cls = STREAMING[cfg.algorithm]
    if cfg.algorithm == "es":
        return cls(n, seed, m=cfg.m)
    if cfg.algorithm == "bfs":
        return cls(n, seed, wsize=cfg.wsize)
    return cls(n, seed)


def run_offline(cfg: RunConfig, graph: SampledGraph, n: int, seed: int,
                edges: np.ndarray | None = None) -> SampledGraph:
    if cfg.algorithm == "ffs":
        return OFFLINE["ffs"](graph, n, p_f=cfg.p_f, seed=seed)
    return OFFLINE["es_i"](graph, n, seed=seed, edges=edges)


def _evaluate(sample: SampledGraph, reference: dict, cfg: RunConfig, seed: int) -> dict:
    """KS and skew divergence of ``sample`` against ``reference`` per property."""
    dists = property_distributions(sample, cfg.path_source_budget, cfg.exact_path_threshold,
                                   seed=seed)
    out = {}
    for prop in PROPERTIES:
        ref, got = reference[prop], dists[prop]
        if ref is None and got is None:
            out[prop] = (0.0, 0.0, False)
        elif ref is None or got is None:
            # one side has no distribution at all: maximal distance
            out[prop] = (1.0, None, True)
        else:
            out[prop] = (metrics.ks_distance(ref, got),
                         metrics.skew_divergence(ref, got, cfg.alpha), False)
    return out


def _records(cfg, dataset, run, seed, eval_point, position, sample, scores, peak):
    return [
        {
            "dataset": dataset, "algorithm": cfg.algorithm, "phi": cfg.phi,
            "run": run, "seed": seed, "eval_point": eval_point, "position": position,
            "property": prop, "ks": ks, "skew": skew,
            "nodes": len(sample), "edges": sample.edge_count,
            "peak_state": peak, "degenerate": degenerate,
        }
        for prop, (ks, skew, degenerate) in scores.items()
    ]


def _positions(eval_points, total: int) -> dict:
    pos: dict[int, list] = {}
    for f in eval_points:
        pos.setdefault(max(1, math.ceil(f * total)), []).append(f)
    return pos


def run_sweep(config: RunConfig, reference: Reference | None = None) -> RunResult:
    """Run ``config.runs`` seeded passes, scoring snapshots at every eval point.

    Run ``r`` permutes the stream and seeds the sampler with ``base_seed + r``.
    Streaming samplers are snapshotted at ``ceil(f * M)`` for each eval
    fraction ``f``; offline baselines are run once on the full graph and the
    same sample is scored at every eval point. A run that raises
    ``UndersizedReservoirError`` is listed in ``failures`` and contributes no
    records.
    """
    if reference is None:
        name, el = load_dataset(config.dataset, config.format)
        reference = Reference(el, name, config.path_source_budget, config.exact_path_threshold)
    el = reference.edgelist
    n = sample_size(config.phi, el.num_nodes)
    result = RunResult(config.to_dict(), reference.name, dict(reference.stats), n)
    positions = _positions(config.eval_points, el.num_edges)
    ref = reference.distributions

    for r in range(config.runs):
        seed = config.base_seed + r
        tic = time.perf_counter()
        if config.algorithm in OFFLINE:
            sample = run_offline(config, reference.graph, n, seed, edges=el.edges)
            scores = _evaluate(sample, ref, config, seed)
            for pos, fracs in positions.items():
                for f in fracs:
                    result.records += _records(config, reference.name, r, seed, f, pos,
                                               sample, scores, None)
            result.timings.append({"run": r, "wall_time": time.perf_counter() - tic})
            continue

        stream = permute_stream(el, seed)
        sampler = make_sampler(config, n, seed)
        records = []

        def checkpoint(t, s, records=records, r=r, seed=seed):
            if t == el.num_edges:
                return  # scored after finish()
            snap = s.snapshot()
            scores = _evaluate(snap, ref, config, seed)
            for f in positions[t]:
                records += _records(config, reference.name, r, seed, f, t, snap, scores,
                                    s.peak_state)

        try:
            final = sampler.run(stream, checkpoints=positions, on_checkpoint=checkpoint)
        except UndersizedReservoirError as exc:
            logger.warning("run %d failed: %s", r, exc)
            result.failures.append({"run": r, "seed": seed, "error": str(exc),
                                    "achieved_nodes": exc.achieved})
            continue
        last = el.num_edges
        scores = _evaluate(final, ref, config, seed)
        for f in positions.get(last, [1.0]):
            records += _records(config, reference.name, r, seed, f, last, final, scores,
                                sampler.peak_state)
        result.records += records
        result.timings.append({"run": r, "wall_time": time.perf_counter() - tic})
    return result


def prefix_graph(edges: np.ndarray) -> SampledGraph:
    """Graph formed by a stream prefix: the prefix edges and their endpoints."""
    return SampledGraph.from_edges(None, edges)


def run_back_in_time(config: RunConfig, reference: Reference | None = None) -> RunResult:
    """Score each run's final sample against the graph of its own stream prefix.

    The prefix holds the first ``ceil(back_in_time_fraction * M)`` edges of
    the run's permutation. The sample budget stays ``round(phi * N)`` of the
    full graph. At fraction 1.0 the reference is the full graph itself.
    """
    frac = config.back_in_time_fraction
    if frac is None:
        raise ConfigError("back_in_time_fraction must be set")
    if reference is None:
        name, el = load_dataset(config.dataset, config.format)
        reference = Reference(el, name, config.path_source_budget, config.exact_path_threshold)
    el = reference.edgelist
    n = sample_size(config.phi, el.num_nodes)
    result = RunResult(config.to_dict(), reference.name, dict(reference.stats), n)
    last = el.num_edges
    for r in range(config.runs):
        seed = config.base_seed + r
        tic = time.perf_counter()
        stream = permute_stream(el, seed)
        if frac == 1.0:
            ref = reference.distributions
        else:
            k = max(1, math.ceil(frac * last))
            ref = property_distributions(prefix_graph(stream.prefix(k)),
                                         config.path_source_budget, config.exact_path_threshold)
        if config.algorithm in OFFLINE:
            sample = run_offline(config, reference.graph, n, seed, edges=el.edges)
            peak = None
        else:
            sampler = make_sampler(config, n, seed)
            try:
                sample = sampler.run(stream)
            except UndersizedReservoirError as exc:
                result.failures.append({"run": r, "seed": seed, "error": str(exc),
                                        "achieved_nodes": exc.achieved})
                continue
            peak = sampler.peak_state
        scores = _evaluate(sample, ref, config, seed)
        result.records += _records(config, reference.name, r, seed, 1.0, last, sample, scores,
                                   peak)
        result.timings.append({"run": r, "wall_time": time.perf_counter() - tic})
    return result


@dataclass
class Report:
    rows: list

    def to_csv(self) -> str:
        cols = ["dataset", "algorithm", "phi", "eval_point", "property", "mean_ks",
                "std_ks", "mean_skew", "runs", "failed_runs"]
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for row in self.rows:
            w.writerow({k: row.get(k) for k in cols})
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [f"{'dataset':<22} {'algo':<5} {'phi':>5} {'eval':>5} {'property':<12} "
                 f"{'KS mean':>8} {'± std':>7} {'runs':>4}"]
        for row in self.rows:
            lines.append(
                f"{row['dataset']:<22} {row['algorithm']:<5} {row['phi']:>5.2f} "
                f"{row['eval_point']:>5.2f} {row['property']:<12} {row['mean_ks']:>8.4f} "
                f"{row['std_ks']:>7.4f} {row['runs']:>4d}"
            )
        return "\n".join(lines)

    def lookup(self, **keys) -> list:
        return [r for r in self.rows if all(r[k] == v for k, v in keys.items())]


def compare_report(results, sort_by_density: bool = False) -> Report:
    """Mean and spread of KS per (dataset, algorithm, phi, eval point, property).

    Each group also gets an ``average`` row: the per-run mean over the four
    properties, then summarised across runs. ``std_ks`` is the sample
    standard deviation over runs (0 for a single run). With
    ``sort_by_density`` datasets are ordered by density times average
    clustering, ascending.
    """
    results = list(results)
    if not results:
        return Report([])
    prop_sets = {frozenset(r["property"] for r in res.records) for res in results if res.records}
    if len(prop_sets) > 1:
        raise AggregationError(f"results disagree on property sets: {sorted(map(sorted, prop_sets))}")

    groups: dict[tuple, dict] = {}
    failed: dict[tuple, int] = {}
    order_key: dict[str, float] = {}
    for res in results:
        st = res.dataset_stats
        order_key[res.dataset_name] = st.get("density", 0.0) * st.get("avg_clustering", 0.0)
        cfg = res.config
        gk = (res.dataset_name, cfg["algorithm"], cfg["phi"])
        failed[gk] = failed.get(gk, 0) + len(res.failures)
        for rec in res.records:
            key = (res.dataset_name, rec["algorithm"], rec["phi"], rec["eval_point"])
            per_run = groups.setdefault(key, {})
            per_run.setdefault((id(res), rec["run"]), {})[rec["property"]] = (rec["ks"], rec["skew"])

    rows = []
    for key, per_run in groups.items():
        dataset, algo, phi, ep = key
        props = sorted({p for run in per_run.values() for p in run},
                       key=lambda p: PROPERTIES.index(p) if p in PROPERTIES else len(PROPERTIES))
        runs = list(per_run.values())
        for prop in props + ["average"]:
            if prop == "average":
                ks = [float(np.mean([run[p][0] for p in props])) for run in runs]
                skews = []
            else:
                ks = [run[prop][0] for run in runs if prop in run]
                skews = [run[prop][1] for run in runs if prop in run and run[prop][1] is not None]
            arr = np.asarray(ks, dtype=np.float64)
            rows.append({
                "dataset": dataset, "algorithm": algo, "phi": phi, "eval_point": ep,
                "property": prop,
                "mean_ks": float(np.mean(arr)),
                "std_ks": float(np.std(arr, ddof=1)) if len(arr) > 1 else 0.0,
                "mean_skew": float(np.mean(skews)) if skews else None,
                "runs": len(arr),
                "failed_runs": failed.get((dataset, algo, phi), 0),
            })
    if sort_by_density:
        rows.sort(key=lambda r: (order_key[r["dataset"]], r["dataset"]))
    return Report(rows)


def write_outputs(results, out_dir, reference: Reference | None = None,
                  samples: dict | None = None) -> Path:
    """Write ``runs.csv``, ``aggregate.csv``, ``results.json`` and distribution CSVs.

    ``samples`` maps ``(algorithm, phi)`` to a sampled graph whose property
    distributions go to ``distributions/<property>_<algo>_<phi>.csv``.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    records = [rec for res in results for rec in res.records]
    (out / "runs.csv").write_text(_records_to_csv(records))
    report = compare_report(results)
    (out / "aggregate.csv").write_text(report.to_csv())
    (out / "results.json").write_text(
        json.dumps([res.to_dict(timings=True) for res in results], sort_keys=True, indent=1))
    if reference is not None or samples:
        ddir = out / "distributions"
        ddir.mkdir(exist_ok=True)
        if reference is not None:
            for prop, dist in reference.distributions.items():
                if dist is not None:
                    dist.to_csv(ddir / f"{prop}_full.csv")
        for (algo, phi), g in (samples or {}).items():
            for prop, dist in property_distributions(g).items():
                if dist is not None:
                    dist.to_csv(ddir / f"{prop}_{algo}_{phi:g}.csv")
    return out
