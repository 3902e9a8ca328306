"""Command-line interface: gen, solve, exact, verify-sparsifier, verify-family, bench.

Exit codes: 0 success, 1 a verification found a violation, 2 usage error,
3 input or runtime failure.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict
from pathlib import Path

from stmincut import kernels
from stmincut.exact import brute_force_min_st_cut
from stmincut.graph import WeightedGraph
from stmincut.instances import gen_lower_bound, gen_random, verify_family_counting
from stmincut.io import ParseError, RunReport, emit_graph, emit_report, parse_graph
from stmincut.oracle import make_oracle
from stmincut.pipeline import PipelineConfig, PipelineError, modeled_total_closed_form, st_min_cut
from stmincut.sparsify import SparsifyConfig, sparsify_graph, verify_sparsifier

log = logging.getLogger("stmincut")

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_FAILURE = 0, 1, 2, 3

# flag dest -> PipelineConfig field
_PIPELINE_FLAGS = {
    "eps": "eps",
    "c_T": "c_T",
    "retries": "retries",
    "c_rho": "c_rho",
    "c_size": "c_size",
    "c_W": "c_W",
    "c_BK": "c_BK",
    "c_DH": "c_DH",
    "seed": "seed",
    "cut_edges": "learn_cut_edges",
}


def _pair(text: str) -> tuple[int, int]:
    try:
        x, y = (int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'i,j', got {text!r}") from None
    return x, y


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _add_pipeline_flags(p: argparse.ArgumentParser) -> None:
    # defaults are None so a config file can fill gaps; see _pipeline_config
    p.add_argument("--eps", type=float, help="override epsilon (must be < 1/3)")
    p.add_argument("--c-T", dest="c_T", type=float, help="edge-learning threshold constant (default 64)")
    p.add_argument("--retries", type=int, help="attempts before giving up (default 5)")
    p.add_argument("--c-rho", dest="c_rho", type=float, help="sampling constant (default 32)")
    p.add_argument("--c-size", dest="c_size", type=float, help="sparsifier size constant (default 64)")
    p.add_argument("--c-W", dest="c_W", type=float, help="sparsifier weight constant (default 64)")
    p.add_argument("--c-BK", dest="c_BK", type=float, help="strong-partition cross weight constant (default 1)")
    p.add_argument("--c-DH", dest="c_DH", type=float, help="minimum-finding cost constant (default 1)")
    p.add_argument("--seed", type=int, help="random seed (default 0)")
    p.add_argument("--oracle", choices=["list", "matrix"], help="query model (default list)")
    p.add_argument("--cut-edges", dest="cut_edges", action="store_const", const=True, help="also learn the cut edges")
    p.add_argument("--config", type=Path, help="JSON file with flag defaults")
    p.add_argument("--no-timing", dest="no_timing", action="store_const", const=True, help="omit wall times")


def _settings(args: argparse.Namespace) -> dict:
    """Merge defaults < config file < explicit flags."""
    merged: dict = {}
    if getattr(args, "config", None):
        merged.update(json.loads(args.config.read_text()))
    for key, value in vars(args).items():
        if value is not None and key not in ("config", "func", "command"):
            merged[key] = value
    return merged


def _pipeline_config(settings: dict) -> PipelineConfig:
    kwargs = {field: settings[flag] for flag, field in _PIPELINE_FLAGS.items() if flag in settings}
    return PipelineConfig(**kwargs)


def _load(path: Path):
    return parse_graph(path.read_text())


def _terminals(settings: dict, n: int) -> tuple[int, int]:
    s = settings.get("s", 1)
    t = settings.get("t", n)
    if not (1 <= s <= n and 1 <= t <= n) or s == t:
        raise ValueError(f"invalid terminals s={s}, t={t} for n={n}")
    return s - 1, t - 1


def _write(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def solve_report(
    G: WeightedGraph,
    order,
    s: int,
    t: int,
    config: PipelineConfig,
    kind: str = "list",
    source: str = "",
    timing: bool = True,
) -> RunReport:
    oracle = make_oracle(G, kind, order=order if kind == "list" else None)
    res = st_min_cut(oracle, s, t, config)
    stats = asdict(res.stats)
    wall = stats.pop("wall_time")
    ledger = res.ledger.to_dict()
    ledger["classical_counters"] = dict(oracle.counters)
    ledger["classical_oracle_total"] = oracle.total_queries
    ledger["closed_form_total"] = modeled_total_closed_form(
        kind, G.n, G.m, res.stats.W, config, res.stats.attempts, res.stats.early_exit, config.learn_cut_edges
    )
    result = {"lambda": res.lam, "shore": sorted(v + 1 for v in res.shore), "s": s + 1, "t": t + 1}
    if res.cut_edges is not None:
        result["cut_edges"] = [[u + 1, v + 1, w] for u, v, w in res.cut_edges]
    return RunReport(
        command="solve",
        instance={"n": G.n, "m": G.m, "W": G.W, "source": source},
        config={**config.to_dict(), "oracle": kind, "kernels": kernels.BACKEND},
        result=result,
        stage_stats=stats,
        ledger=ledger,
        timing=wall if timing else {},
    )


def cmd_gen(args) -> int:
    if args.family == "random":
        G = gen_random(args.n, args.p, args.W, args.seed)
        text = emit_graph(G, comment=f"random n={args.n} p={args.p} W={args.W} seed={args.seed}")
    else:
        a = b = None
        if args.kind == "positive":
            if args.a is None or args.b is None:
                raise ValueError("positive instances need --a and --b")
            a = (args.a[0] - 1, args.a[1] - 1)
            b = (args.b[0] - 1, args.b[1] - 1)
        inst = gen_lower_bound(args.n, args.kind, a, b, args.c, args.ordering)
        text = emit_graph(inst.graph, inst.order, comment=f"lower-bound n={args.n} kind={args.kind}")
    _write(text, args.output)
    return EXIT_OK


def cmd_solve(args) -> int:
    settings = _settings(args)
    G, order = _load(args.graph)
    s, t = _terminals(settings, G.n)
    config = _pipeline_config(settings)
    report = solve_report(
        G, order, s, t, config, settings.get("oracle", "list"), str(args.graph), not settings.get("no_timing")
    )
    out = settings.get("output")
    _write(emit_report(report), Path(out) if out else None)
    ledger = report.ledger
    if ledger["modeled_total"] != ledger["closed_form_total"] or ledger["classical_total"] != ledger["classical_oracle_total"]:
        log.error("cost ledger does not match its closed form or the oracle counters")
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_exact(args) -> int:
    G, _ = _load(args.graph)
    s, t = _terminals(_settings(args), G.n)
    cert = brute_force_min_st_cut(G, s, t)
    report = RunReport(
        command="exact",
        instance={"n": G.n, "m": G.m, "W": G.W, "source": str(args.graph)},
        config={},
        result={"lambda": cert.value, "shore": sorted(v + 1 for v in cert.shore), "s": s + 1, "t": t + 1},
    )
    _write(emit_report(report), args.output)
    return EXIT_OK


def cmd_verify_sparsifier(args) -> int:
    G, _ = _load(args.graph)
    cfg = SparsifyConfig(c_rho=args.c_rho, c_size=args.c_size, c_W=args.c_W)
    sp = sparsify_graph(G, args.eps, args.seed, cfg)
    chk = verify_sparsifier(G, sp.H, args.eps)
    report = RunReport(
        command="verify-sparsifier",
        instance={"n": G.n, "m": G.m, "W": G.W, "source": str(args.graph)},
        config={"eps": args.eps, "seed": args.seed, "c_rho": args.c_rho, "c_size": args.c_size, "c_W": args.c_W},
        result={
            "ok": chk.ok,
            "worst_ratio": chk.worst_ratio,
            "witness": sorted(v + 1 for v in chk.witness) if chk.witness else None,
            "H_edges": sp.H.m,
            "H_max_weight": sp.H.W,
            "sampled": sp.sampled,
        },
    )
    _write(emit_report(report), args.output)
    return EXIT_OK if chk.ok else EXIT_VIOLATION


def cmd_verify_family(args) -> int:
    rep = verify_family_counting(args.n, args.ordering, check_lambda=True)
    d = rep.to_dict()
    if not args.full:
        d.pop("counts")
    report = RunReport(command="verify-family", instance={"n": args.n}, config={"ordering": args.ordering}, result=d)
    _write(emit_report(report), args.output)
    return EXIT_OK if rep.ok else EXIT_VIOLATION


def _bench_one(job: dict) -> dict:
    G = gen_random(job["n"], job["p"], job["W"], job["seed"])
    config = PipelineConfig(**job["config"])
    rep = solve_report(G, None, 0, G.n - 1, config, job["oracle"], f"random seed={job['seed']}", job["timing"])
    row = {
        "index": job["index"],
        "n": G.n,
        "m": G.m,
        "W": G.W,
        "p": job["p"],
        "seed": job["seed"],
        "lambda": rep.result["lambda"],
        "eps": rep.stage_stats["eps"],
        "blocks": rep.stage_stats["blocks"],
        "contracted_edges": rep.stage_stats["contracted_edges"],
        "weight_upper_ratio": rep.stage_stats["weight_upper_ratio"],
        "modeled_total": rep.ledger["modeled_total"],
        "classical_total": rep.ledger["classical_oracle_total"],
        "attempts": rep.stage_stats["attempts"],
    }
    if job["compare_exact"]:
        exact = brute_force_min_st_cut(G, 0, G.n - 1).value
        row["exact_lambda"] = exact
        row["agree"] = int(exact == rep.result["lambda"])
    return {"row": row, "report": rep.to_dict()}


def cmd_bench(args) -> int:
    settings = _settings(args)
    config = _pipeline_config(settings)
    jobs = []
    index = 0
    for n in args.n_values:
        for W in args.W_values:
            for seed in range(args.seeds):
                jobs.append(
                    {
                        "index": index,
                        "n": n,
                        "W": W,
                        "p": args.p,
                        "seed": args.seed_base + index,
                        "oracle": settings.get("oracle", "list"),
                        "config": {**config.to_dict(), "seed": args.seed_base + index},
                        "timing": not settings.get("no_timing"),
                        "compare_exact": args.compare_exact,
                    }
                )
                index += 1
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_bench_one, jobs))
    else:
        results = [_bench_one(j) for j in jobs]
    results.sort(key=lambda r: r["row"]["index"])

    buf = _io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(results[0]["row"]))
    writer.writeheader()
    for r in results:
        writer.writerow(r["row"])
    if args.out_dir:
        args.out_dir.mkdir(parents=True, exist_ok=True)
        for r in results:
            path = args.out_dir / f"run-{r['row']['index']:04d}.json"
            path.write_text(emit_report(RunReport.from_dict(r["report"])))
        (args.out_dir / "aggregate.csv").write_text(buf.getvalue())
    sys.stdout.write(buf.getvalue())
    if args.compare_exact:
        agree = sum(r["row"]["agree"] for r in results)
        log.info("agreement with brute force: %d/%d", agree, len(results))
        return EXIT_OK if agree >= 0.975 * len(results) else EXIT_VIOLATION
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stmincut", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a generated instance")
    g.add_argument("family", choices=["random", "lower-bound"])
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--p", type=float, default=0.5)
    g.add_argument("--W", type=int, default=1)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--kind", choices=["negative", "positive"], default="negative")
    g.add_argument("--a", type=_pair, help="1-indexed pair from side A, e.g. 3,5")
    g.add_argument("--b", type=_pair, help="1-indexed pair from side B, e.g. 4,6")
    g.add_argument("--c", type=int, choices=[0, 1], default=0)
    g.add_argument("--ordering", choices=["sorted", "slot"], default="sorted")
    g.add_argument("-o", "--output", type=Path)
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("solve", help="run the s-t minimum cut pipeline")
    s.add_argument("graph", type=Path)
    s.add_argument("--s", type=int, help="source vertex, 1-indexed (default 1)")
    s.add_argument("--t", type=int, help="sink vertex, 1-indexed (default n)")
    s.add_argument("-o", "--output", type=Path)
    _add_pipeline_flags(s)
    s.set_defaults(func=cmd_solve)

    e = sub.add_parser("exact", help="brute-force minimum s-t cut (n <= 20)")
    e.add_argument("graph", type=Path)
    e.add_argument("--s", type=int)
    e.add_argument("--t", type=int)
    e.add_argument("-o", "--output", type=Path)
    e.set_defaults(func=cmd_exact)

    v = sub.add_parser("verify-sparsifier", help="sparsify and check every cut (n <= 14)")
    v.add_argument("graph", type=Path)
    v.add_argument("--eps", type=float, default=0.25)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--c-rho", dest="c_rho", type=float, default=32.0)
    v.add_argument("--c-size", dest="c_size", type=float, default=64.0)
    v.add_argument("--c-W", dest="c_W", type=float, default=64.0)
    v.add_argument("-o", "--output", type=Path)
    v.set_defaults(func=cmd_verify_sparsifier)

    f = sub.add_parser("verify-family", help="exhaustive checks on the USTCON hard family")
    f.add_argument("--n", type=int, required=True)
    f.add_argument("--ordering", choices=["sorted", "slot"], default="sorted")
    f.add_argument("--full", action="store_true", help="include the per-position count table")
    f.add_argument("-o", "--output", type=Path)
    f.set_defaults(func=cmd_verify_family)

    b = sub.add_parser("bench", help="sweep seeded random instances")
    b.add_argument("--n-values", type=_int_list, default=[50, 100, 200])
    b.add_argument("--W-values", type=_int_list, default=[1, 4, 16])
    b.add_argument("--p", type=float, default=0.5)
    b.add_argument("--seeds", type=int, default=3)
    b.add_argument("--seed-base", type=int, default=0)
    b.add_argument("--jobs", type=int, default=1)
    b.add_argument("--compare-exact", action="store_true")
    b.add_argument("--out-dir", type=Path)
    _add_pipeline_flags(b)
    b.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (ParseError, OSError, ValueError, PipelineError) as exc:
        print(f"stmincut: error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
