"""Command-line interface: instance generation, solving, envelope export,
and the benchmark harness.

Exit codes: 0 success, 1 usage error, 2 parse error, 3 internal invariant
violation.
"""

from __future__ import annotations

import argparse
import csv
import glob as globmod
import json
import os
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import baselines, envelope as envmod, fileio, solver
from .errors import InternalInvariantError, ParameterError, ParseError, QkbpError
from .generators import GeneratorSpec, generate
from .instance import Budget

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_INTERNAL = 3

ALGOS = ("qkbp", "rg", "wsort", "brute")

RUN_FIELDS = ["instance", "n", "density", "gamma", "budget", "algo",
              "objective", "deviation_best_pct", "time_ms", "sweep_time_ms",
              "seed", "timed_out"]


def _parse_gammas(text):
    return tuple(Fraction(x) for x in text.split(","))


def _parse_budgets(text):
    return [int(x) for x in text.split(",")]


def cmd_generate(args) -> int:
    spec = GeneratorSpec(
        family=args.family, n=args.n, density=args.density,
        strategy=getattr(args, "strategy", None),
        projects=getattr(args, "projects", None),
        gammas=_parse_gammas(args.gammas) if getattr(args, "gammas", None) else (),
        seed=args.seed)
    inst, budgets = generate(spec)
    if isinstance(budgets, Budget):
        budgets = [budgets]
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    inst_path = outdir / f"{inst.name}.qkp"
    fileio.save_instance(inst_path, inst, budgets)
    fileio.write_manifest(outdir / f"{inst.name}.manifest.json",
                          spec.as_dict(), inst_path.name, budgets)
    print(f"wrote {inst_path}")
    return EXIT_OK


def _resolve_budgets(args, inst):
    if args.budgets:
        return [Budget(value=b) for b in _parse_budgets(args.budgets)]
    if args.gammas:
        return [Budget.from_fraction(g, inst.total_cost)
                for g in _parse_gammas(args.gammas)]
    manifest = Path(args.instance).with_suffix("").with_suffix("")
    mpath = Path(str(Path(args.instance).with_suffix("")) + ".manifest.json")
    if mpath.exists():
        return [Budget(value=b) for b in fileio.read_manifest(mpath)["budgets"]]
    _, budgets = fileio.load_instance(args.instance, fmt=args.format)
    if budgets:
        return budgets
    raise ParameterError("no budgets given (use --budgets or --gammas)")


def _run_algo(algo, inst, budgets, p, time_limit):
    """Returns a list of (budget, objective, time_ms, sweep_ms, timed_out)."""
    rows = []
    if algo == "qkbp":
        t0 = time.perf_counter()
        env = envmod.build_envelope(inst, p)
        sweep_ms = 1000.0 * env.sweep_seconds
        results = solver.solve(inst, env, budgets)
        for b, r in zip(budgets, results):
            rows.append((b, r.objective, 1000.0 * r.repair_seconds, sweep_ms,
                         False, sorted(r.set)))
    elif algo == "rg":
        for b in budgets:
            r = baselines.rg_heuristic(inst, b.value, time_limit)
            rows.append((b, r.objective, 1000.0 * r.repair_seconds, "",
                         r.timed_out, sorted(r.set)))
    elif algo == "wsort":
        for b in budgets:
            r = baselines.weight_sort_greedy(inst, b.value)
            rows.append((b, r.objective, 1000.0 * r.repair_seconds, "",
                         False, sorted(r.set)))
    elif algo == "brute":
        enum = baselines.SubsetEnumeration(inst)
        for b in budgets:
            t0 = time.perf_counter()
            r = enum.best_for_budget(b.value)
            rows.append((b, r.objective, 1000.0 * (time.perf_counter() - t0), "",
                         False, sorted(r.set)))
    else:
        raise ParameterError(f"unknown algorithm {algo!r}")
    return rows


def cmd_solve(args) -> int:
    inst, _ = fileio.load_instance(args.instance, fmt=args.format)
    budgets = _resolve_budgets(args, inst)
    rows = _run_algo(args.algo, inst, budgets, args.p, args.time_limit)
    out_prefix = args.out or str(Path(args.instance).with_suffix(""))
    csv_path = Path(out_prefix + ".results.csv")
    json_path = Path(out_prefix + ".solutions.json")
    with open(csv_path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=RUN_FIELDS, lineterminator="\n")
        w.writeheader()
        for b, obj, tms, sms, timed_out, sset in rows:
            w.writerow({
                "instance": inst.name, "n": inst.n,
                "density": f"{float(inst.density) * 100:.2f}",
                "gamma": "" if b.gamma is None else str(b.gamma),
                "budget": b.value, "algo": args.algo, "objective": obj,
                "deviation_best_pct": "0.0000", "time_ms": f"{tms:.3f}",
                "sweep_time_ms": sms if sms == "" else f"{sms:.3f}",
                "seed": "", "timed_out": int(bool(timed_out))})
    sols = [{"budget": b.value, "objective": obj, "set": sset}
            for b, obj, _, _, _, sset in rows]
    json_path.write_text(json.dumps(sols, indent=2) + "\n")
    for b, obj, *_ in rows:
        print(f"{inst.name} B={b.value} {args.algo} objective={obj}")
    return EXIT_OK


def cmd_envelope(args) -> int:
    inst, _ = fileio.load_instance(args.instance, fmt=args.format)
    env = envmod.build_envelope(inst, args.p)
    out_prefix = args.out or str(Path(args.instance).with_suffix(""))
    Path(out_prefix + ".envelope.csv").write_text(envmod.envelope_to_csv(env))
    Path(out_prefix + ".envelope.json").write_text(envmod.envelope_sets_json(env))
    print(f"{inst.name}: {len(env.breakpoints)} breakpoints, ub={env.ub_lambda}")
    return EXIT_OK


def _bench_cell(algo, inst, budgets, p, time_limit):
    try:
        return _run_algo(algo, inst, budgets, p, time_limit)
    except ParameterError:
        return None  # e.g. brute refused; tables show a gap


def cmd_bench(args) -> int:
    manifests = sorted(globmod.glob(args.manifests))
    if not manifests:
        raise ParameterError(f"no manifests match {args.manifests!r}")
    algos = args.algos.split(",")
    for a in algos:
        if a not in ALGOS:
            raise ParameterError(f"unknown algorithm {a!r}")
    threads = max(1, int(os.environ.get("QKBP_THREADS", "1")))
    loaded = []
    for mpath in manifests:
        man = fileio.read_manifest(mpath)
        inst_path = Path(mpath).parent / man["instance_file"]
        inst, _ = fileio.load_instance(inst_path)
        budgets = [Budget(value=b) for b in man["budgets"]]
        loaded.append((man, inst, budgets))

    # instance x algo cells; rg is time-limited, so it always runs
    # sequentially to keep the time accounting reproducible
    cells = {}
    pooled = [(mi, a) for mi in range(len(loaded)) for a in algos if a != "rg"]
    if threads > 1 and len(pooled) > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futs = {key: pool.submit(_bench_cell, key[1], loaded[key[0]][1],
                                     loaded[key[0]][2], args.p,
                                     args.time_limit)
                    for key in pooled}
        cells = {key: fut.result() for key, fut in futs.items()}
    else:
        for mi, a in pooled:
            cells[(mi, a)] = _bench_cell(a, loaded[mi][1], loaded[mi][2],
                                         args.p, args.time_limit)
    if "rg" in algos:
        for mi, (_, inst, budgets) in enumerate(loaded):
            cells[(mi, "rg")] = _bench_cell("rg", inst, budgets, args.p,
                                            args.time_limit)

    records = []
    for mi, (man, inst, budgets) in enumerate(loaded):
        seed = man.get("spec", {}).get("seed", "")
        per_algo = {algo: cells[(mi, algo)] for algo in algos}
        for bi, b in enumerate(budgets):
            objs = {a: per_algo[a][bi][1] for a in algos if per_algo[a] is not None}
            best = max(objs.values()) if objs else 0
            for algo in algos:
                if per_algo[algo] is None:
                    records.append({
                        "instance": inst.name, "n": inst.n,
                        "density": f"{float(inst.density) * 100:.2f}",
                        "gamma": "" if b.gamma is None else str(b.gamma),
                        "budget": b.value, "algo": algo, "objective": "",
                        "deviation_best_pct": "", "time_ms": "",
                        "sweep_time_ms": "", "seed": seed, "timed_out": ""})
                    continue
                _, obj, tms, sms, timed_out, _ = per_algo[algo][bi]
                dev = 0.0 if best == 0 else 100.0 * (best - obj) / best
                records.append({
                    "instance": inst.name, "n": inst.n,
                    "density": f"{float(inst.density) * 100:.2f}",
                    "gamma": "" if b.gamma is None else str(b.gamma),
                    "budget": b.value, "algo": algo, "objective": obj,
                    "deviation_best_pct": f"{dev:.4f}", "time_ms": f"{tms:.3f}",
                    "sweep_time_ms": sms if sms == "" else f"{sms:.3f}",
                    "seed": seed, "timed_out": int(bool(timed_out))})
    records.sort(key=lambda r: (r["instance"], r["budget"], r["algo"]))
    out = Path(args.out)
    with open(out, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=RUN_FIELDS, lineterminator="\n")
        w.writeheader()
        w.writerows(records)

    # summary: per (n, density, algo) average/min/max deviation, total time
    groups = {}
    for r in records:
        if r["deviation_best_pct"] == "":
            continue
        key = (r["n"], r["density"], r["algo"])
        groups.setdefault(key, []).append(r)
    spath = out.with_name(out.stem + ".summary.csv")
    with open(spath, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["n", "density", "algo", "avg_deviation_pct",
                    "min_deviation_pct", "max_deviation_pct", "total_time_ms"])
        for key in sorted(groups):
            devs = [float(r["deviation_best_pct"]) for r in groups[key]]
            total = sum(float(r["time_ms"]) for r in groups[key])
            w.writerow([key[0], key[1], key[2],
                        f"{sum(devs) / len(devs):.4f}",
                        f"{min(devs):.4f}", f"{max(devs):.4f}", f"{total:.3f}"])
    print(f"wrote {out} and {spath}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qkbp",
                                 description="Quadratic knapsack breakpoints solver")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="generate a benchmark instance")
    gsub = g.add_subparsers(dest="family", required=True)
    for fam in ("standard", "large", "dispersion", "teamformation1",
                "teamformation2"):
        p = gsub.add_parser(fam)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default=".")
        if fam in ("standard", "large", "dispersion"):
            p.add_argument("--density", type=float, required=True)
        else:
            p.add_argument("--density", type=float, default=0.0,
                           help=argparse.SUPPRESS)
            p.add_argument("--projects", type=int, default=None)
        if fam != "standard":
            p.add_argument("--gammas",
                           default="0.025,0.05,0.1,0.25,0.5,0.75")
        if fam == "dispersion":
            p.add_argument("--strategy", required=True,
                           choices=("geo", "wgeo", "expo", "ran"))
        p.set_defaults(func=cmd_generate)

    s = sub.add_parser("solve", help="solve an instance for one or more budgets")
    s.add_argument("instance")
    s.add_argument("--budgets", default=None)
    s.add_argument("--gammas", default=None)
    s.add_argument("--p", type=int, default=envmod.DEFAULT_GRID_SIZE)
    s.add_argument("--algo", choices=ALGOS, default="qkbp")
    s.add_argument("--time-limit", type=float, default=120.0)
    s.add_argument("--format", choices=("canonical", "soutif"),
                   default="canonical")
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_solve)

    e = sub.add_parser("envelope", help="export breakpoint plot data")
    e.add_argument("instance")
    e.add_argument("--p", type=int, default=envmod.DEFAULT_GRID_SIZE)
    e.add_argument("--format", choices=("canonical", "soutif"),
                   default="canonical")
    e.add_argument("--out", default=None)
    e.set_defaults(func=cmd_envelope)

    b = sub.add_parser("bench", help="run algorithms over a manifest glob")
    b.add_argument("manifests")
    b.add_argument("--algos", default="qkbp,rg,wsort")
    b.add_argument("--p", type=int, default=envmod.DEFAULT_GRID_SIZE)
    b.add_argument("--time-limit", type=float, default=120.0)
    b.add_argument("--out", default="bench.csv")
    b.set_defaults(func=cmd_bench)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ParameterError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InternalInvariantError as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except QkbpError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
