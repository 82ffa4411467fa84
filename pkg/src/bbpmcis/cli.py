"""Command line interface.

Exit codes: 0 success, 1 ``check`` disagreement, 2 input not outerplanar,
64 usage error, 65 malformed input, 66 unreadable input file.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import __version__
from .bbp import bbp_mcis
from .bench import BenchConfig, adjacent_ratios, run_bench, write_csv
from .generator import gen_outerplanar
from .graph import LabeledGraph, build_bc_tree, connected_components
from .io import (
    ParseError,
    ResultRecord,
    parse_graph,
    parse_molfile,
    parse_weights,
    record_to_json,
    write_graph,
)
from .mcis2 import mcis2_enumerate
from .oracle import BBP_LIMIT, brute_bbp_mcis, check_iso
from .outerplanar import NotOuterplanar
from .weights import LABEL_EQUALITY, UNIFORM, WeightFn

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_NOT_OUTERPLANAR = 2
EXIT_USAGE = 64
EXIT_DATAERR = 65
EXIT_NOINPUT = 66


class _Fail(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _Fail(EXIT_NOINPUT, f"{path}: {exc.strerror}") from None


def load_graph(path: str) -> LabeledGraph:
    """Graph from ``path``; ``.mol`` and ``.sdf`` files are read as MOL V2000."""
    text = _read(path)
    try:
        if path.lower().endswith((".mol", ".sdf")):
            return parse_molfile(text)
        return parse_graph(text)
    except ParseError as exc:
        raise _Fail(EXIT_DATAERR, f"{path}: {exc}") from None


def load_weights(source: str) -> WeightFn:
    if source == "uniform":
        return UNIFORM
    if source == "label-eq":
        return LABEL_EQUALITY
    try:
        return parse_weights(_read(source), name=source)
    except ParseError as exc:
        raise _Fail(EXIT_DATAERR, f"{source}: {exc}") from None


def _same_weight(a, b) -> bool:
    if isinstance(a, int) and isinstance(b, int):
        return a == b
    return isinstance(a, (int, float)) and math.isclose(a, b, rel_tol=1e-9, abs_tol=1e-12)


def _record(g, h, gname, hname, vmap, weight, elapsed, w, kind="bbp") -> ResultRecord:
    rep = check_iso(g, h, vmap, w)
    checks = {
        "injective": rep.injective,
        "induced": rep.induced,
        "connected": rep.connected,
        "bbp": rep.bbp,
        "admissible": rep.admissible,
        "weight_consistent": _same_weight(rep.weight, weight),
    }
    if kind == "2mcis":
        checks.pop("bbp")
    dom = set(vmap)
    mapped = sum(1 for u, v in g.edge_list if u in dom and v in dom)
    return ResultRecord(gname, hname, weight, sorted(vmap.items()), mapped,
                        int(round(elapsed * 1e6)), checks, kind)


def compare_pair(g, h, gname, hname, w) -> ResultRecord:
    t0 = time.perf_counter()
    iso = bbp_mcis(g, h, w)
    elapsed = time.perf_counter() - t0
    return _record(g, h, gname, hname, iso.vertex_map, iso.weight, elapsed, w)


def _format(rec: ResultRecord, as_json: bool) -> str:
    if as_json:
        return record_to_json(rec)
    pairs = " ".join(f"{a}:{b}" for a, b in rec.vertex_map)
    status = "ok" if rec.ok else "FAILED " + ",".join(k for k, v in rec.checks.items() if not v)
    return (f"{rec.g}\t{rec.h}\t{rec.kind}\tweight={rec.weight}\tvertices={len(rec.vertex_map)}"
            f"\tedges={rec.mapped_edges}\ttime_us={rec.elapsed_us}\tchecks={status}\tmap={pairs}")


def _is_biconnected(g: LabeledGraph) -> bool:
    if g.n < 3 or len(connected_components(g)) != 1:
        return False
    t = build_bc_tree(g)
    return len(t.b_nodes) == 1 and t.b_nodes[0].is_block


def cmd_compare(args) -> int:
    g, h = load_graph(args.a), load_graph(args.b)
    w = load_weights(args.weights)
    if args.enumerate_2mcis:
        if not (_is_biconnected(g) and _is_biconnected(h)):
            raise _Fail(EXIT_USAGE, "--enumerate-2mcis needs two biconnected graphs")
        t0 = time.perf_counter()
        for phi in mcis2_enumerate(g, h, w):
            elapsed = time.perf_counter() - t0
            print(_format(_record(g, h, args.a, args.b, phi.vertex_map, phi.weight, elapsed, w,
                                  "2mcis"), args.json))
            t0 = time.perf_counter()
        return EXIT_OK
    print(_format(compare_pair(g, h, args.a, args.b, w), args.json))
    return EXIT_OK


def _batch_job(job):
    gpath, hpath, weights, gname, hname = job
    try:
        g, h = load_graph(gpath), load_graph(hpath)
        w = load_weights(weights)
        return ("ok", compare_pair(g, h, gname, hname, w))
    except _Fail as exc:
        return ("fail", (exc.code, str(exc)))
    except NotOuterplanar as exc:
        return ("fail", (EXIT_NOT_OUTERPLANAR, f"{gname} {hname}: {exc}"))


def cmd_batch(args) -> int:
    base = os.path.dirname(os.path.abspath(args.pairs))
    jobs = []
    for no, raw in enumerate(_read(args.pairs).splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split("\t") if "\t" in line else line.split()
        if len(parts) != 2:
            raise _Fail(EXIT_DATAERR, f"{args.pairs}: line {no}: expected two paths")
        a, b = (p if os.path.isabs(p) else os.path.join(base, p) for p in parts)
        jobs.append((a, b, args.weights, parts[0], parts[1]))
    if args.jobs < 1:
        raise _Fail(EXIT_USAGE, "--jobs must be at least 1")
    if args.jobs == 1:
        results = map(_batch_job, jobs)
    else:
        pool = ProcessPoolExecutor(max_workers=args.jobs)
        results = pool.map(_batch_job, jobs)
    code = EXIT_OK
    try:
        for status, payload in results:
            if status == "ok":
                print(_format(payload, args.json), flush=True)
            else:
                err, msg = payload
                print(f"error: {msg}", file=sys.stderr)
                code = max(code, err)
    finally:
        if args.jobs > 1:
            pool.shutdown()
    return code


def cmd_gen(args) -> int:
    os.makedirs(args.out, exist_ok=True)
    for i in range(args.count):
        seed = args.seed + i
        try:
            g = gen_outerplanar(args.n, args.ratio, args.block_size, args.labels, seed)
        except ValueError as exc:
            raise _Fail(EXIT_USAGE, str(exc)) from None
        path = os.path.join(args.out, f"op_n{args.n}_s{seed}.graph")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(write_graph(g))
        print(path)
    return EXIT_OK


def _csv_list(kind):
    def parse(text):
        try:
            return [kind(x) for x in text.split(",") if x]
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected comma separated values, got {text!r}")
    return parse


def cmd_bench(args) -> int:
    configs = [BenchConfig(n, args.ratio, args.block_size, args.labels) for n in args.sizes]
    try:
        for c in configs:
            gen_outerplanar(c.n, c.ratio, c.block_size, c.labels, 0)
    except ValueError as exc:
        raise _Fail(EXIT_USAGE, str(exc)) from None
    rows = run_bench(configs, reps=args.reps, seed=args.seed)
    for r in rows:
        print(f"size={r.config.n}\tmean_ms={r.mean_ms:.3f}\tsd_ms={r.sd_ms:.3f}")
    ratios = adjacent_ratios(rows)
    if ratios:
        print("ratios\t" + "\t".join(f"{x:.2f}" for x in ratios))
    if args.csv:
        write_csv(rows, args.csv)
    return EXIT_OK


def cmd_check(args) -> int:
    g, h = load_graph(args.a), load_graph(args.b)
    w = load_weights(args.weights)
    if g.n > BBP_LIMIT or h.n > BBP_LIMIT:
        raise _Fail(EXIT_USAGE, f"check is limited to graphs with at most {BBP_LIMIT} vertices")
    rec = compare_pair(g, h, args.a, args.b, w)
    expected, _ = brute_bbp_mcis(g, h, w)
    agree = rec.weight == expected and rec.ok
    print(f"{args.a}\t{args.b}\tfast={rec.weight}\toracle={expected}\t"
          f"{'agree' if agree else 'MISMATCH'}")
    return EXIT_OK if agree else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="bbpmcis", description="Block and bridge preserving maximum common "
                "induced subgraphs of outerplanar graphs.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def weights(sp):
        sp.add_argument("--weights", default="label-eq",
                        help="uniform, label-eq (default) or a weight file")

    sp = sub.add_parser("compare", help="maximum common subgraph of two graphs")
    sp.add_argument("a")
    sp.add_argument("b")
    weights(sp)
    sp.add_argument("--enumerate-2mcis", action="store_true",
                    help="list every maximum common biconnected subgraph instead")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("batch", help="compare the pairs listed in a TSV file")
    sp.add_argument("pairs")
    weights(sp)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_batch)

    sp = sub.add_parser("gen", help="write random outerplanar graphs")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--ratio", type=float, required=True)
    sp.add_argument("--block-size", type=float, required=True)
    sp.add_argument("--labels", type=int, default=1)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=1)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("bench", help="runtime per graph size")
    sp.add_argument("--sizes", type=_csv_list(int), default=[10, 20, 40, 80, 160])
    sp.add_argument("--ratio", type=float, default=1.24)
    sp.add_argument("--block-size", type=float, default=8.0)
    sp.add_argument("--labels", type=int, default=1)
    sp.add_argument("--reps", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--csv")
    sp.set_defaults(func=cmd_bench)

    sp = sub.add_parser("check", help="compare against the exhaustive oracle")
    sp.add_argument("a")
    sp.add_argument("b")
    weights(sp)
    sp.set_defaults(func=cmd_check)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Fail as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except NotOuterplanar as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_OUTERPLANAR


if __name__ == "__main__":
    sys.exit(main())
