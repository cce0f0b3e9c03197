"""Command-line front end.

Exit codes: 0 success, 2 graph file unreadable or malformed, 64 invalid
configuration, 65 oracle too large for its combination cap.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import time
from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np

from .graph import EdgeListParseError, Graph, generate_synthetic, load_edge_list, write_edge_list
from .hyperanf import DEFAULT_HASH_SEED, DEFAULT_PRECISION, hyperanf, select_fca
from .kcore import core_decomposition
from .seg import compute_seg
from .selection import (
    DEFAULT_ORACLE_CAP,
    CombinationCapError,
    SelectionResult,
    brute_force_opt,
    select_ba,
    select_baseline,
    select_era,
)

log = logging.getLogger("seedengage")

EXIT_PARSE = 2
EXIT_CONFIG = 64
EXIT_CAP = 65

ALGORITHMS = ("ba", "era", "fca", "degree", "cc", "ac", "oracle")
REPORT_FIELDS = (
    "config",
    "seeds",
    "marginal_gains",
    "total_engaged",
    "engaged_per_iteration",
    "seg_evaluations",
    "timings",
)


class ConfigError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class RunConfig:
    graph_path: str
    algorithm: str
    k: int
    r: int
    b: int
    precision: int | None = None
    hash_seed: int | None = None
    output_format: str = "json"
    threads: int = 1

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ConfigError(f"unknown algorithm {self.algorithm!r}")
        for name in ("k", "r", "b", "threads"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be >= 1")
        if self.algorithm != "fca" and (self.precision is not None or self.hash_seed is not None):
            raise ConfigError("--precision and --hash-seed only apply to --algo fca")
        if self.precision is not None and not 4 <= self.precision <= 16:
            raise ConfigError("--precision must be in [4, 16]")
        if self.output_format not in ("json", "csv"):
            raise ConfigError("output format must be json or csv")


def run_selection(g: Graph, cfg: RunConfig) -> SelectionResult:
    k, r, b = cfg.k, cfg.r, cfg.b
    if cfg.algorithm == "ba":
        return select_ba(g, k, r, b, threads=cfg.threads)
    if cfg.algorithm == "era":
        return select_era(g, k, r, b)
    if cfg.algorithm == "fca":
        return select_fca(
            g,
            k,
            r,
            b,
            p=cfg.precision if cfg.precision is not None else DEFAULT_PRECISION,
            hash_seed=cfg.hash_seed if cfg.hash_seed is not None else DEFAULT_HASH_SEED,
            threads=cfg.threads,
        )
    if cfg.algorithm == "oracle":
        return brute_force_opt(g, k, r, b, cap=DEFAULT_ORACLE_CAP)
    measure = {"degree": "degree", "cc": "clustering_coefficient", "ac": "alpha_centrality"}
    return select_baseline(g, k, r, b, measure[cfg.algorithm])


def build_report(g: Graph, cfg: RunConfig, res: SelectionResult, load_time: float) -> dict:
    timings = {"load": load_time, "select": res.elapsed}
    timings.update(res.phases)
    return {
        "config": asdict(cfg),
        "seeds": [int(g.labels[s]) for s in res.seeds],
        "marginal_gains": [int(x) for x in res.marginal_gains],
        "total_engaged": int(res.total_engaged),
        "engaged_per_iteration": [int(x) for x in res.engaged_per_iteration()],
        "seg_evaluations": int(res.seg_evaluations),
        "timings": timings,
    }


def report_to_csv(report: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["iteration", "seed", "marginal_gain", "engaged"])
    rows = zip(report["seeds"], report["marginal_gains"], report["engaged_per_iteration"])
    for i, (s, gain, tot) in enumerate(rows, start=1):
        w.writerow([i, s, gain, tot])
    return buf.getvalue()


def _load(path: str) -> tuple[Graph, float]:
    t0 = time.perf_counter()
    with open(path, newline=None) as fh:
        g = load_edge_list(fh)
    return g, time.perf_counter() - t0


def _dump_mapping(g: Graph, path: str | None) -> None:
    if not path:
        return
    with open(path, "w") as fh:
        fh.write("dense_id,label\n")
        for i, lab in enumerate(g.labels.tolist()):
            fh.write(f"{i},{lab}\n")


def _emit(obj, fmt: str = "json") -> None:
    if fmt == "json":
        json.dump(obj, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        sys.stdout.write(obj)


# ---------------------------------------------------------------------------
# Subcommands


def cmd_select(args) -> int:
    cfg = RunConfig(
        graph_path=args.graph,
        algorithm=args.algo,
        k=args.k,
        r=args.r,
        b=args.b,
        precision=args.precision,
        hash_seed=args.hash_seed,
        output_format=args.output,
        threads=args.threads,
    )
    g, t_load = _load(cfg.graph_path)
    _dump_mapping(g, args.dump_mapping)
    res = run_selection(g, cfg)
    if len(res.seeds) < cfg.b:
        log.info("selected %d of %d seeds; no remaining candidate adds engagement", len(res.seeds), cfg.b)
    report = build_report(g, cfg, res, t_load)
    _emit(report if cfg.output_format == "json" else report_to_csv(report), cfg.output_format)
    return 0


def cmd_seg(args) -> int:
    _positive(k=args.k, r=args.r)
    g, _ = _load(args.graph)
    _dump_mapping(g, args.dump_mapping)
    ids = g.label_to_id()
    if args.seed not in ids:
        raise ConfigError(f"seed label {args.seed} not in graph")
    seg = compute_seg(g, ids[args.seed], args.k, args.r)
    members = [] if seg is None else [int(g.labels[v]) for v in seg.members]
    _emit(
        {
            "seed": args.seed,
            "k": args.k,
            "r": args.r,
            "null": seg is None,
            "size": len(members),
            "members": sorted(members),
        }
    )
    return 0


def cmd_kcore(args) -> int:
    if args.k is not None and args.k < 0:
        raise ConfigError("k must be >= 0")
    g, _ = _load(args.graph)
    _dump_mapping(g, args.dump_mapping)
    core = core_decomposition(g)
    if args.output == "csv":
        buf = io.StringIO()
        buf.write("node,coreness\n")
        for lab, c in zip(g.labels.tolist(), core.tolist()):
            buf.write(f"{lab},{c}\n")
        _emit(buf.getvalue(), "csv")
        return 0
    hist = np.bincount(core) if len(core) else np.zeros(0, dtype=np.int64)
    out = {
        "nodes": g.node_count,
        "edges": g.edge_count,
        "max_coreness": int(core.max()) if len(core) else 0,
        "coreness_histogram": {str(c): int(n) for c, n in enumerate(hist.tolist()) if n},
    }
    if args.k is not None:
        out["k"] = args.k
        out["k_core_size"] = int(np.count_nonzero(core >= args.k))
    _emit(out)
    return 0


def cmd_anf(args) -> int:
    _positive(r=args.r, threads=args.threads)
    if not 4 <= args.precision <= 16:
        raise ConfigError("--precision must be in [4, 16]")
    g, _ = _load(args.graph)
    _dump_mapping(g, args.dump_mapping)
    table = hyperanf(g, args.r, args.precision, args.hash_seed, threads=args.threads)
    table.to_csv(sys.stdout, labels=g.labels)
    return 0


def cmd_bench(args) -> int:
    sizes = _int_list(args.sizes, "sizes")
    algos = [a.strip() for a in args.algos.split(",") if a.strip()]
    for a in algos:
        if a not in ALGORITHMS:
            raise ConfigError(f"unknown algorithm {a!r}")
    _positive(k=args.k, r=args.r, b=args.b, m=args.m)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["algorithm", "n", "edges", "time_s", "total_engaged", "seg_evaluations"])
    for n in sizes:
        if n <= args.m:
            raise ConfigError(f"size {n} must exceed m={args.m}")
        g = generate_synthetic(n, args.m, args.seed)
        for a in algos:
            cfg = RunConfig("<synthetic>", a, args.k, args.r, args.b)
            t0 = time.perf_counter()
            res = run_selection(g, cfg)
            dt = time.perf_counter() - t0
            w.writerow([a, n, g.edge_count, f"{dt:.6f}", res.total_engaged, res.seg_evaluations])
            sys.stdout.flush()
    return 0


def cmd_gen(args) -> int:
    _positive(m=args.m)
    if args.n <= args.m:
        raise ConfigError("n must exceed m")
    g = generate_synthetic(args.n, args.m, args.seed)
    if args.out in (None, "-"):
        write_edge_list(g, sys.stdout)
    else:
        with open(args.out, "w") as fh:
            fh.write(f"# preferential attachment n={args.n} m={args.m} seed={args.seed}\n")
            write_edge_list(g, fh)
    return 0


def _positive(**vals) -> None:
    for name, v in vals.items():
        if v < 1:
            raise ConfigError(f"{name} must be >= 1")


def _int_list(text: str, name: str) -> list[int]:
    try:
        out = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise ConfigError(f"--{name} must be a comma separated list of integers") from None
    if not out:
        raise ConfigError(f"--{name} is empty")
    return out


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="seedengage", description="Seed selection for local user engagement.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def graph_args(sp):
        sp.add_argument("--graph", required=True, help="edge-list file")
        sp.add_argument("--dump-mapping", metavar="PATH", help="write dense_id,label CSV")

    s = sub.add_parser("select", help="choose b seeds")
    graph_args(s)
    s.add_argument("--algo", choices=ALGORITHMS, default="era")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--b", type=int, required=True)
    s.add_argument("--precision", type=int, default=None)
    s.add_argument("--hash-seed", type=int, default=None)
    s.add_argument("--output", choices=("json", "csv"), default="json")
    s.add_argument("--threads", type=int, default=1)
    s.set_defaults(func=cmd_select)

    s = sub.add_parser("seg", help="engaged group of one seed")
    graph_args(s)
    s.add_argument("--seed", type=int, required=True, help="node label")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--r", type=int, required=True)
    s.set_defaults(func=cmd_seg)

    s = sub.add_parser("kcore", help="core decomposition summary")
    graph_args(s)
    s.add_argument("--k", type=int, default=None)
    s.add_argument("--output", choices=("json", "csv"), default="json")
    s.set_defaults(func=cmd_kcore)

    s = sub.add_parser("anf", help="HyperANF table as CSV")
    graph_args(s)
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--precision", type=int, default=DEFAULT_PRECISION)
    s.add_argument("--hash-seed", type=int, default=DEFAULT_HASH_SEED)
    s.add_argument("--threads", type=int, default=1)
    s.set_defaults(func=cmd_anf)

    s = sub.add_parser("bench", help="time selectors on synthetic graphs")
    s.add_argument("--sizes", default="1000,2000,4000")
    s.add_argument("--algos", default="fca,era")
    s.add_argument("--k", type=int, default=3)
    s.add_argument("--r", type=int, default=2)
    s.add_argument("--b", type=int, default=10)
    s.add_argument("--m", type=int, default=3, help="edges per new node")
    s.add_argument("--seed", type=int, default=1)
    s.set_defaults(func=cmd_bench)

    s = sub.add_parser("gen", help="write a synthetic graph")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--m", type=int, default=3)
    s.add_argument("--seed", type=int, default=1)
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_gen)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:  # --help, or a usage error already reported
        return int(e.code or 0)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except ConfigError as e:
        print(f"seedengage: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except (EdgeListParseError, OSError) as e:
        print(f"seedengage: cannot load graph: {e}", file=sys.stderr)
        return EXIT_PARSE
    except CombinationCapError as e:
        print(f"seedengage: {e}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
