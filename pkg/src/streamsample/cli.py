"""Command line entry point: ``python -m streamsample <command>``."""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import experiment as ex
from .samplers import ALGORITHMS, OFFLINE
from .stream import permute_stream, summarize, write_edge_list


def _floats(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x]


def _add_run_args(p: argparse.ArgumentParser, many: bool) -> None:
    p.add_argument("--dataset", help="edge-list path or model:n:param:seed (e.g. pa:2000:3:1)")
    p.add_argument("--format", default="whitespace", choices=["whitespace", "csv"])
    p.add_argument("--config", help="JSON file mirroring RunConfig; flags override it")
    if many:
        p.add_argument("--algo", default="pies", help="comma-separated list from " + ",".join(ALGORITHMS))
        p.add_argument("--phi", default="0.2", help="comma-separated sampling fractions")
        p.add_argument("--runs", type=int)
        p.add_argument("--eval-points", type=_floats)
    else:
        p.add_argument("--algo", default="pies", choices=ALGORITHMS)
        p.add_argument("--phi", type=float, default=0.2)
    p.add_argument("--seed", type=int, help="base seed")
    p.add_argument("--m", type=int, help="edge reservoir size for es")
    p.add_argument("--wsize", type=int, help="window size for bfs")
    p.add_argument("--p-f", type=float, help="forward burning probability for ffs")
    p.add_argument("--alpha", type=float, help="skew divergence mixing weight")


def _configs(args, **extra) -> list[ex.RunConfig]:
    base = {}
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            base = json.load(fh)
    over = {"dataset": args.dataset, "format": args.format, "base_seed": args.seed,
            "m": args.m, "wsize": args.wsize, "p_f": args.p_f, "alpha": args.alpha,
            "runs": getattr(args, "runs", None), "eval_points": getattr(args, "eval_points", None)}
    over.update(extra)
    base.update({k: v for k, v in over.items() if v is not None})
    if "dataset" not in base:
        raise SystemExit("--dataset (or a config file naming one) is required")
    algos = str(args.algo).split(",") if args.algo else [base.get("algorithm", "pies")]
    phis = _floats(str(args.phi)) if args.phi else [base.get("phi", 0.2)]
    return [ex.RunConfig.from_dict({**base, "algorithm": a, "phi": f}) for a in algos for f in phis]


def cmd_sample(args) -> int:
    cfg = _configs(args)[0]
    name, el = ex.load_dataset(cfg.dataset, cfg.format)
    n = ex.sample_size(cfg.phi, el.num_nodes)
    if cfg.algorithm in OFFLINE:
        g = ex.run_offline(cfg, el.to_graph(), n, cfg.base_seed, edges=el.edges)
    else:
        g = ex.make_sampler(cfg, n, cfg.base_seed).run(permute_stream(el, cfg.base_seed))
    out = Path(args.out or f"{name}_{cfg.algorithm}_{cfg.phi:g}.txt")
    write_edge_list(out, sorted(g.edges()), el.original_ids)
    print(f"{cfg.algorithm}: {len(g)} nodes, {g.edge_count} edges -> {out}")
    return 0


def _sweep(args, back_in_time: bool) -> int:
    extra = {"back_in_time_fraction": args.fraction} if back_in_time else {}
    configs = _configs(args, **extra)
    cfg0 = configs[0]
    name, el = ex.load_dataset(cfg0.dataset, cfg0.format)
    ref = ex.Reference(el, name, cfg0.path_source_budget, cfg0.exact_path_threshold)
    results, samples = [], {}
    for cfg in configs:
        fn = ex.run_back_in_time if back_in_time else ex.run_sweep
        res = fn(cfg, reference=ref)
        results.append(res)
        n = res.sample_size
        if cfg.algorithm in OFFLINE:
            samples[(cfg.algorithm, cfg.phi)] = ex.run_offline(cfg, ref.graph, n, cfg.base_seed,
                                                               edges=el.edges)
        else:
            samples[(cfg.algorithm, cfg.phi)] = ex.make_sampler(cfg, n, cfg.base_seed).run(
                permute_stream(el, cfg.base_seed)) if not res.failures else None
        logging.info("%s phi=%g: %d records, %d failed runs", cfg.algorithm, cfg.phi,
                     len(res.records), len(res.failures))
    out = ex.write_outputs(results, args.out_dir, reference=ref,
                           samples={k: v for k, v in samples.items() if v is not None})
    print(ex.compare_report(results).to_text())
    print(f"wrote {out}")
    return 0


def cmd_summarize(args) -> int:
    name, el = ex.load_dataset(args.dataset, args.format)
    s = summarize(el, seed=args.seed or 0)
    print(s.to_json(indent=1))
    return 0


def cmd_report(args) -> int:
    results = []
    for path in args.results:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        results += [ex.RunResult.from_dict(d) for d in (data if isinstance(data, list) else [data])]
    report = ex.compare_report(results, sort_by_density=args.sort_density)
    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "aggregate.csv").write_text(report.to_csv())
    print(report.to_text())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="streamsample", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="run one sampler and write the sampled edge list")
    _add_run_args(p, many=False)
    p.add_argument("--out", help="output edge-list path")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("sweep", help="multi-seed sweep over algorithms and sampling fractions")
    _add_run_args(p, many=True)
    p.add_argument("--out-dir", default="out")
    p.set_defaults(func=lambda a: _sweep(a, back_in_time=False))

    p = sub.add_parser("back-in-time", help="score samples against an earlier stream prefix")
    _add_run_args(p, many=True)
    p.add_argument("--fraction", type=float, default=0.2)
    p.add_argument("--out-dir", default="out")
    p.set_defaults(func=lambda a: _sweep(a, back_in_time=True))

    p = sub.add_parser("summarize", help="dataset statistics as JSON")
    p.add_argument("--dataset", required=True)
    p.add_argument("--format", default="whitespace", choices=["whitespace", "csv"])
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_summarize)

    p = sub.add_parser("report", help="aggregate results.json files")
    p.add_argument("results", nargs="+")
    p.add_argument("--sort-density", action="store_true")
    p.add_argument("--out-dir")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
