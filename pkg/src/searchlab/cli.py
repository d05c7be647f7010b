"""Operator entry point: bench, simulate, analyze, report, serve.

Configuration comes from an optional ``key = value`` text file ('#' starts a
comment) plus command-line flags; flags win over file values. Every command
is deterministic given its config and seeds. Outputs are written atomically
(temp file + rename). See the README for the documented key set and the CSV
schemas.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import csv
import io
import os
import sys
import tempfile
from dataclasses import replace
from pathlib import Path

from . import testfns
from .acqopt import FocusSearchParams
from .acquisition import AcquisitionSpec, parse_acquisition
from .boloop import (
    GPSpec,
    RFSpec,
    Trace,
    best_so_far,
    run_bo,
    run_random_search,
)
from .compliance import (
    NON_COMPLIANT,
    ComplianceConfig,
    analyze_trace_gp,
    analyze_trace_rf,
    relabel,
)
from .errors import ConfigurationError, ParseError, SearchLabError, UsageError
from .gamestore import FILE_EXTENSION, GameStore
from .kernels import FAMILIES

CONFIG_KEYS = {
    "functions", "surrogates", "acquisitions", "seeds", "init_size", "budget",
    "thresholds", "betas", "kernels", "rf", "min_fit_size", "noise",
    "focus_points", "focus_shrinks", "focus_restarts", "jobs",
    "out", "out_dir", "traces", "store", "host", "port",
}

STRATEGY_COLUMNS = ("PI", "EI", "UCB", NON_COMPLIANT)


# --- config file ------------------------------------------------------------


def parse_config(path: str | Path) -> dict[str, str]:
    values: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            key, sep, value = stripped.partition("=")
            key = key.strip()
            if not sep:
                raise UsageError(f"{path}:{line_no}: expected 'key = value', got {stripped!r}")
            if key not in CONFIG_KEYS:
                raise UsageError(f"{path}:{line_no}: unknown config key {key!r}")
            values[key] = value.strip()
    return values


def _setting(args, cfg: dict[str, str], key: str, default=None):
    flag = getattr(args, key, None)
    if flag is not None:
        return flag
    return cfg.get(key, default)


# --- list parsing -----------------------------------------------------------


def parse_seeds(s: str) -> list[int]:
    out: list[int] = []
    for part in str(s).split(","):
        part = part.strip()
        if not part:
            continue
        if ".." in part:
            lo, _, hi = part.partition("..")
            try:
                out.extend(range(int(lo), int(hi) + 1))
            except ValueError:
                raise UsageError(f"bad seed range {part!r}")
        else:
            try:
                out.append(int(part))
            except ValueError:
                raise UsageError(f"bad seed {part!r}")
    if not out:
        raise UsageError(f"no seeds in {s!r}")
    return out


def parse_functions(s: str) -> list[int]:
    if s.strip() == "all":
        return [f.id for f in testfns.list_functions()]
    by_name = {f.name: f.id for f in testfns.list_functions()}
    out = []
    for part in str(s).split(","):
        part = part.strip()
        if not part:
            continue
        if part in by_name:
            out.append(by_name[part])
        else:
            try:
                idx = int(part)
            except ValueError:
                raise UsageError(f"unknown function {part!r}")
            if not 0 <= idx < testfns.N_FUNCTIONS:
                raise UsageError(f"function id out of range: {idx}")
            out.append(idx)
    if not out:
        raise UsageError(f"no functions in {s!r}")
    return out


def parse_surrogate(s: str):
    s = s.strip()
    if s == "rf":
        return RFSpec()
    if s == "random":
        return "random"
    if s.startswith("gp-"):
        family = s[3:]
        if family not in FAMILIES:
            raise UsageError(f"unknown kernel {family!r}; expected one of {FAMILIES}")
        return GPSpec(kernel_family=family)
    raise UsageError(f"unknown surrogate {s!r}; expected gp-<kernel>, rf, or random")


def parse_acquisitions(s: str) -> list[AcquisitionSpec]:
    try:
        out = [parse_acquisition(p) for p in str(s).split(",") if p.strip()]
    except ParseError as exc:
        raise UsageError(str(exc))
    if not out:
        raise UsageError(f"no acquisitions in {s!r}")
    return out


def parse_floats(s: str, what: str) -> list[float]:
    try:
        out = [float(p) for p in str(s).split(",") if p.strip()]
    except ValueError:
        raise UsageError(f"bad {what} list {s!r}")
    if not out:
        raise UsageError(f"no {what} in {s!r}")
    return out


def _focus_from(args, cfg) -> FocusSearchParams:
    return FocusSearchParams(
        n_points=int(_setting(args, cfg, "focus_points", 1000)),
        n_shrinks=int(_setting(args, cfg, "focus_shrinks", 5)),
        n_restarts=int(_setting(args, cfg, "focus_restarts", 3)),
    )


def _write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _run_cells(worker, cells, jobs: int):
    if jobs <= 1:
        return [worker(c) for c in cells]
    with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(worker, cells))


# --- bench ------------------------------------------------------------------


def _bench_cell(cell):
    fn, surrogate_s, acq, m, n_budget, seed, focus = cell
    surrogate = parse_surrogate(surrogate_s)
    if surrogate == "random":
        trace = run_random_search(fn, m + n_budget, seed=seed)
        kernel = ""
        acq_kind, beta = "RANDOM", ""
    else:
        trace = run_bo(fn, surrogate, acq, m=m, N=n_budget, seed=seed, focus=focus)
        kernel = surrogate.kernel_family if isinstance(surrogate, GPSpec) else ""
        acq_kind = acq.kind
        beta = f"{acq.beta:g}" if acq.kind == "UCB" else ""
    rows = []
    running_best = best_so_far(trace)
    scores = trace.scores()
    f_star = testfns.get_function(fn).known_max
    cum = 0.0
    for i in range(len(trace)):
        cum += f_star - scores[i]
        rows.append(
            {
                "function": testfns.get_function(fn).id.name,
                "surrogate": surrogate_s,
                "kernel": kernel,
                "acquisition": acq_kind,
                "beta": beta,
                "seed": seed,
                "n": i + 1,
                "best_y": f"{running_best[i]:.9g}",
                "simple_regret": f"{max(0.0, f_star - running_best[i]):.9g}",
                "cumulative_regret": f"{cum:.9g}",
            }
        )
    return rows


def cmd_bench(args) -> int:
    cfg = parse_config(args.config) if args.config else {}
    functions = parse_functions(_setting(args, cfg, "functions", "all"))
    surrogates = [s.strip() for s in str(_setting(args, cfg, "surrogates", "gp-se")).split(",") if s.strip()]
    for s in surrogates:
        parse_surrogate(s)  # fail fast on typos
    acqs = parse_acquisitions(_setting(args, cfg, "acquisitions", "EI"))
    seeds = parse_seeds(_setting(args, cfg, "seeds", "0"))
    m = int(_setting(args, cfg, "init_size", 5))
    n_budget = int(_setting(args, cfg, "budget", 20))
    jobs = int(_setting(args, cfg, "jobs", 1))
    focus = _focus_from(args, cfg)
    out = Path(_setting(args, cfg, "out", "bench.csv"))

    cells = []
    for fn in functions:
        for surrogate_s in surrogates:
            cell_acqs = [None] if surrogate_s == "random" else acqs
            for acq in cell_acqs:
                for seed in seeds:
                    cells.append((fn, surrogate_s, acq, m, n_budget, seed, focus))
    results = _run_cells(_bench_cell, cells, jobs)

    buf = io.StringIO()
    writer = csv.DictWriter(
        buf,
        fieldnames=[
            "function", "surrogate", "kernel", "acquisition", "beta", "seed",
            "n", "best_y", "simple_regret", "cumulative_regret",
        ],
    )
    writer.writeheader()
    for rows in results:
        writer.writerows(rows)
    _write_atomic(out, buf.getvalue())
    print(f"wrote {out} ({sum(len(r) for r in results)} rows)")
    return 0


# --- simulate ---------------------------------------------------------------


def _safe_name(s: str) -> str:
    return "".join(c if c.isalnum() or c in "-_." else "-" for c in s)


def _simulate_cell(cell):
    fn, surrogate_s, acq, m, n_budget, seed, focus = cell
    surrogate = parse_surrogate(surrogate_s)
    if surrogate == "random":
        return run_random_search(fn, m + n_budget, seed=seed)
    return run_bo(fn, surrogate, acq, m=m, N=n_budget, seed=seed, focus=focus)


def cmd_simulate(args) -> int:
    cfg = parse_config(args.config) if args.config else {}
    functions = parse_functions(_setting(args, cfg, "functions", "all"))
    surrogates = [s.strip() for s in str(_setting(args, cfg, "surrogates", "gp-se")).split(",") if s.strip()]
    for s in surrogates:
        parse_surrogate(s)
    acqs = parse_acquisitions(_setting(args, cfg, "acquisitions", "EI"))
    seeds = parse_seeds(_setting(args, cfg, "seeds", "0"))
    m = int(_setting(args, cfg, "init_size", 5))
    n_budget = int(_setting(args, cfg, "budget", 20))
    jobs = int(_setting(args, cfg, "jobs", 1))
    focus = _focus_from(args, cfg)
    out_dir = Path(_setting(args, cfg, "out_dir", "traces"))
    out_dir.mkdir(parents=True, exist_ok=True)

    cells = []
    for i, seed in enumerate(seeds):
        fn = functions[i % len(functions)]  # round-robin stimuli over seeds
        for surrogate_s in surrogates:
            cell_acqs = [None] if surrogate_s == "random" else acqs
            for acq in cell_acqs:
                cells.append((fn, surrogate_s, acq, m, n_budget, seed, focus))
    traces = _run_cells(_simulate_cell, cells, jobs)

    for trace in traces:
        store = GameStore()
        store.append_trace(trace)
        name = _safe_name(f"{trace.meta.user_id}-f{trace.meta.function_id}") + FILE_EXTENSION
        _write_atomic(out_dir / name, store.export_all())
    print(f"wrote {len(traces)} trace files to {out_dir}")
    return 0


# --- analyze / report -------------------------------------------------------


def _load_traces(paths: list[Path]) -> list[Trace]:
    traces = []
    for p in paths:
        try:
            store = GameStore()
            with open(p, encoding="utf-8") as fh:
                store.import_all(fh.read())
            traces.extend(store.load_all_traces())
        except (OSError, SearchLabError) as exc:
            print(f"warning: skipping {p}: {exc}", file=sys.stderr)
    return traces


def _analyze_cell(cell):
    """One (trace, surrogate, beta) cell: distances once, labels per threshold."""
    trace, surrogate_name, beta, thresholds, base = cell
    acquisitions = (
        AcquisitionSpec("EI"),
        AcquisitionSpec("PI"),
        AcquisitionSpec("UCB", beta=beta),
    )
    cfg = replace(base, acquisitions=acquisitions, threshold=thresholds[0])
    if surrogate_name == "rf":
        rec = analyze_trace_rf(trace, cfg)
    else:
        rec = analyze_trace_gp(trace, replace(cfg, kernel_family=surrogate_name.removeprefix("gp-")))
    return [(beta, thr, trace, relabel(rec, thr) if thr != rec.threshold else rec) for thr in thresholds]


def cmd_analyze(args) -> int:
    cfg = parse_config(args.config) if args.config else {}
    traces_arg = _setting(args, cfg, "traces")
    if not traces_arg:
        raise UsageError("analyze requires --traces (directory or files)")
    trace_dir = Path(traces_arg)
    if trace_dir.is_dir():
        paths = sorted(trace_dir.glob(f"*{FILE_EXTENSION}"))
    else:
        paths = [Path(p) for p in str(traces_arg).split(",")]
    thresholds = parse_floats(_setting(args, cfg, "thresholds", "0.10,0.15"), "thresholds")
    betas = parse_floats(_setting(args, cfg, "betas", "1,0.5,0"), "betas")
    kernels = [k.strip() for k in str(_setting(args, cfg, "kernels", ",".join(FAMILIES))).split(",") if k.strip()]
    for k in kernels:
        if k not in FAMILIES:
            raise UsageError(f"unknown kernel {k!r}; expected one of {FAMILIES}")
    with_rf = str(_setting(args, cfg, "rf", "true")).lower() in ("1", "true", "yes")
    jobs = int(_setting(args, cfg, "jobs", 1))
    out_dir = Path(_setting(args, cfg, "out_dir", "analysis"))
    base = ComplianceConfig(
        threshold=thresholds[0],
        noise=float(_setting(args, cfg, "noise", 1e-6)),
        min_fit_size=int(_setting(args, cfg, "min_fit_size", 3)),
        focus=_focus_from(args, cfg),
        seed=int(_setting(args, cfg, "seeds", "0").split(",")[0].split("..")[0] or 0),
    )

    traces = _load_traces(paths)
    surrogate_names = [f"gp-{k}" for k in kernels] + (["rf"] if with_rf else [])
    min_len = base.min_fit_size + 1
    cells = []
    for trace in traces:
        if len(trace) < min_len:
            print(
                f"warning: skipping {trace.trace_id}: only {len(trace)} observations "
                f"(need >= {min_len})",
                file=sys.stderr,
            )
            continue
        for name in surrogate_names:
            for beta in betas:
                cells.append((trace, name, beta, tuple(thresholds), base))
    results = _run_cells(_analyze_cell, cells, jobs)

    record_rows = []
    tables: dict[tuple[float, float], dict[str, dict[str, int]]] = {}
    for cell_records in results:
        for beta, thr, trace, rec in cell_records:
            record_rows.append(
                {
                    "trace_id": rec.trace_id,
                    "source": trace.meta.source,
                    "function_id": trace.meta.function_id,
                    "surrogate": rec.surrogate,
                    "threshold": f"{thr:g}",
                    "beta": f"{beta:g}",
                    "strategy": rec.strategy,
                    "compliant_fraction": f"{rec.compliant_fraction:.9g}",
                    "n_scored": len(rec.verdicts),
                }
            )
            table = tables.setdefault((thr, beta), {})
            row = table.setdefault(rec.surrogate, {c: 0 for c in STRATEGY_COLUMNS})
            row[rec.strategy] += 1

    out_dir.mkdir(parents=True, exist_ok=True)
    rec_buf = io.StringIO()
    writer = csv.DictWriter(
        rec_buf,
        fieldnames=[
            "trace_id", "source", "function_id", "surrogate", "threshold",
            "beta", "strategy", "compliant_fraction", "n_scored",
        ],
    )
    writer.writeheader()
    record_rows.sort(key=lambda r: (r["trace_id"], r["surrogate"], float(r["threshold"]), float(r["beta"])))
    writer.writerows(record_rows)
    _write_atomic(out_dir / "records.csv", rec_buf.getvalue())

    tab_buf = io.StringIO()
    writer = csv.DictWriter(tab_buf, fieldnames=["threshold", "beta", "surrogate", *STRATEGY_COLUMNS])
    writer.writeheader()
    for (thr, beta) in sorted(tables):
        for surrogate in sorted(tables[(thr, beta)]):
            row = tables[(thr, beta)][surrogate]
            writer.writerow(
                {"threshold": f"{thr:g}", "beta": f"{beta:g}", "surrogate": surrogate, **row}
            )
    _write_atomic(out_dir / "tables.csv", tab_buf.getvalue())
    print(f"analyzed {len(traces)} traces -> {out_dir}/records.csv, {out_dir}/tables.csv")
    return 0


def cmd_report(args) -> int:
    tables_path = Path(args.tables)
    if not tables_path.exists():
        raise UsageError(f"no such tables file: {tables_path}")
    with open(tables_path, encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    cells: dict[tuple[str, str], list[dict]] = {}
    for row in rows:
        cells.setdefault((row["threshold"], row["beta"]), []).append(row)
    for (thr, beta) in sorted(cells, key=lambda k: (float(k[0]), -float(k[1]))):
        print(f"\n=== threshold = {thr}, UCB beta = {beta} ===")
        print(f"{'surrogate':<14}" + "".join(f"{c:>15}" for c in STRATEGY_COLUMNS))
        for row in sorted(cells[(thr, beta)], key=lambda r: r["surrogate"]):
            print(f"{row['surrogate']:<14}" + "".join(f"{row[c]:>15}" for c in STRATEGY_COLUMNS))
    return 0


# --- serve --------------------------------------------------------------------


def cmd_serve(args) -> int:
    import uvicorn

    from .service import GameService, create_app

    cfg = parse_config(args.config) if args.config else {}
    store_path = _setting(args, cfg, "store")
    budget = int(_setting(args, cfg, "budget", 20))
    host = str(_setting(args, cfg, "host", "127.0.0.1"))
    port = int(_setting(args, cfg, "port", 8000))
    service = GameService(store=GameStore(store_path), budget=budget)
    uvicorn.run(create_app(service), host=host, port=port)
    return 0


# --- entry point ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="searchlab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="key = value config file")
        p.add_argument("--jobs", type=int, help="parallel grid cells")
        p.add_argument("--focus-points", dest="focus_points", type=int)
        p.add_argument("--focus-shrinks", dest="focus_shrinks", type=int)
        p.add_argument("--focus-restarts", dest="focus_restarts", type=int)

    p = sub.add_parser("bench", help="run BO benchmark grid, write CSV")
    common(p)
    p.add_argument("--functions")
    p.add_argument("--surrogates")
    p.add_argument("--acquisitions")
    p.add_argument("--seeds")
    p.add_argument("--init-size", dest="init_size", type=int)
    p.add_argument("--budget", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("simulate", help="write machine traces in gamestore format")
    common(p)
    p.add_argument("--functions")
    p.add_argument("--surrogates")
    p.add_argument("--acquisitions")
    p.add_argument("--seeds")
    p.add_argument("--init-size", dest="init_size", type=int)
    p.add_argument("--budget", type=int)
    p.add_argument("--out-dir", dest="out_dir")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("analyze", help="compliance-classify traces over the grid")
    common(p)
    p.add_argument("--traces")
    p.add_argument("--thresholds")
    p.add_argument("--betas")
    p.add_argument("--kernels")
    p.add_argument("--rf", dest="rf", choices=("true", "false"))
    p.add_argument("--min-fit-size", dest="min_fit_size", type=int)
    p.add_argument("--seeds")
    p.add_argument("--out-dir", dest="out_dir")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("report", help="render aggregate count tables")
    p.add_argument("--tables", default="analysis/tables.csv")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("serve", help="run the game HTTP service")
    p.add_argument("--config", help="key = value config file")
    p.add_argument("--store")
    p.add_argument("--budget", type=int)
    p.add_argument("--host")
    p.add_argument("--port", type=int)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ConfigurationError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
