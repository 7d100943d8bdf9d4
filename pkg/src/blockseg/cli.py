"""Command-line interface: ``blockseg segment|simulate|evaluate|bench``.

Results go to stdout as a single JSON object; logs go to stderr.
Exit status: 0 success, 1 data error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
import time

import numpy as np

from .alignment import AlignmentError, load_fasta, load_matrix, write_matrix
from .evaluate import TSV_COLUMNS, run_grid, summarize
from .scoring import IntervalScorer, Penalty, PenaltyConfig
from .simulate import BlockModel, DesignError, SimulationDesign, resolve_design, simulate
from .solvers import SOLVERS, SegmentationError

log = logging.getLogger("blockseg")

FASTA_SUFFIXES = (".fa", ".fasta", ".fas", ".faa", ".fna", ".aln")


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _positive_float(text: str) -> float:
    value = float(text)
    if not (value > 0 and math.isfinite(value)):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return value


def _grid(kind):
    def parse(text: str):
        try:
            return [kind(x) for x in text.split(",") if x.strip()]
        except (ValueError, argparse.ArgumentTypeError) as exc:
            raise argparse.ArgumentTypeError(f"bad grid {text!r}: {exc}")
    return parse


def _delimiter(text: str) -> str:
    text = {"tab": "\t", "\\t": "\t", "space": " "}.get(text, text)
    if len(text) != 1:
        raise argparse.ArgumentTypeError("delimiter must be a single character")
    return text


def _json_float(x: float):
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x


def _emit(obj) -> None:
    json.dump(obj, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _add_penalty_flags(p: argparse.ArgumentParser, default: str, c: float = 1.0) -> None:
    p.add_argument("--penalty", choices=[f.value for f in Penalty], default=default)
    p.add_argument("--c", type=_positive_float, default=c, help="penalty constant")


def _add_timing_flag(p: argparse.ArgumentParser) -> None:
    p.add_argument("--no-timing", dest="timing", action="store_false",
                   help="omit wall-clock fields so output is byte-reproducible")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="blockseg",
        description="Estimate points of independence in aligned categorical sequences.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    seg = sub.add_parser("segment", help="segment an alignment")
    seg.add_argument("--input", required=True)
    seg.add_argument("--format", choices=["fasta", "matrix"],
                     help="default: fasta for .fa/.fasta/.fas/.aln, else matrix")
    seg.add_argument("--delimiter", type=_delimiter, default=",")
    _add_penalty_flags(seg, Penalty.EMPIRICAL_FLOORED.value)
    seg.add_argument("--solver", choices=sorted(SOLVERS), default="dp")
    seg.add_argument("--tsv", help="also write the per-block table to this path")
    _add_timing_flag(seg)

    sim = sub.add_parser("simulate", help="draw a synthetic alignment")
    sim.add_argument("--design", required=True, help="builtin name or JSON design file")
    sim.add_argument("--n", type=_positive_int, required=True)
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--output", required=True, help="delimited matrix to write")
    sim.add_argument("--truth", help="truth file (default: OUTPUT.truth)")
    sim.add_argument("--delimiter", type=_delimiter, default=",")

    ev = sub.add_parser("evaluate", help="Monte-Carlo recovery over n and c grids")
    ev.add_argument("--design", required=True)
    ev.add_argument("--n-grid", type=_grid(_positive_int), required=True)
    ev.add_argument("--c-grid", type=_grid(_positive_float), required=True)
    ev.add_argument("--replicates", type=_positive_int, default=10)
    ev.add_argument("--solver", choices=["dp", "hier"], default="dp")
    ev.add_argument("--penalty", choices=[f.value for f in Penalty],
                    default=Penalty.EMPIRICAL_FLOORED.value)
    ev.add_argument("--seed", type=int, default=0)
    ev.add_argument("--jobs", type=_positive_int, default=1)
    ev.add_argument("--tsv", help="write per-replicate rows to this path")
    _add_timing_flag(ev)

    bench = sub.add_parser("bench", help="time the solvers as the column count grows")
    bench.add_argument("--m-grid", type=_grid(_positive_int), default=[15, 30, 60, 120])
    bench.add_argument("--n", type=_positive_int, default=100)
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--solver", choices=["dp", "hier"], action="append")
    _add_penalty_flags(bench, Penalty.THEORETICAL.value, c=0.1)
    return parser


def _load(args):
    fmt = args.format
    if fmt is None:
        fmt = "fasta" if args.input.lower().endswith(FASTA_SUFFIXES) else "matrix"
    if fmt == "fasta":
        return load_fasta(args.input)
    return load_matrix(args.input, args.delimiter)


def run_report(scorer: IntervalScorer, seg, solver: str, source: dict,
               wall: float | None) -> dict:
    blocks = []
    for lo, hi in seg.blocks:
        q, p = scorer.scores(lo, hi)
        blocks.append({"lo": lo, "hi": hi, "Q": q, "p": _json_float(p),
                       "score": _json_float(scorer.combine(q, p))})
    return {
        "input": source,
        "n": scorer.n,
        "m": scorer.m,
        "penalty": {"family": scorer.config.family.value, "c": scorer.config.c},
        "solver": solver,
        "cuts": seg.cuts,
        "points": seg.points,
        "blocks": blocks,
        "objective": _json_float(seg.score),
        "wall_time_s": wall,
    }


def cmd_segment(args) -> int:
    alignment = _load(args)
    scorer = IntervalScorer(alignment, PenaltyConfig(args.penalty, args.c))
    log.info("loaded %d x %d alignment from %s", alignment.rows, alignment.cols, args.input)
    t0 = time.perf_counter()
    seg = SOLVERS[args.solver](scorer)
    wall = time.perf_counter() - t0 if args.timing else None
    report = run_report(scorer, seg, args.solver,
                        {"path": args.input, "format": args.format or "auto"}, wall)
    if args.tsv:
        with open(args.tsv, "w") as fh:
            fh.write("lo\thi\tQ\tp\tscore\n")
            for b in report["blocks"]:
                fh.write("\t".join(str(b[k]) for k in ("lo", "hi", "Q", "p", "score")) + "\n")
    _emit(report)
    return 0


def cmd_simulate(args) -> int:
    design = resolve_design(args.design).with_sample(args.n, args.seed)
    alignment, truth = simulate(design)
    write_matrix(alignment, args.output, args.delimiter)
    truth_path = args.truth or args.output + ".truth"
    with open(truth_path, "w") as fh:
        fh.writelines(f"{t}\n" for t in truth)
    _emit({"design": design.name, "n": alignment.rows, "m": alignment.cols,
           "seed": args.seed, "output": args.output, "truth": truth_path,
           "true_cuts": truth})
    return 0


def cmd_evaluate(args) -> int:
    design = resolve_design(args.design)
    trials = run_grid(design, args.n_grid, args.c_grid, args.replicates, args.solver,
                      args.seed, args.penalty, jobs=args.jobs, timing=args.timing)
    if args.tsv:
        lines = ["\t".join(TSV_COLUMNS)] + ["\t".join(t.tsv_fields()) for t in trials]
        with open(args.tsv, "w") as fh:
            fh.write("\n".join(lines) + "\n")
    _emit({
        "design": design.name,
        "true_cuts": design.true_cuts,
        "solver": args.solver,
        "penalty": args.penalty,
        "seed": args.seed,
        "replicates": args.replicates,
        "summary": summarize(trials),
        "rows": [dict(zip(TSV_COLUMNS, [t.n, t.c, t.replicate, t.solver, t.cuts,
                                        t.exact_recovery, t.hausdorff, t.ms]))
                 for t in trials],
    })
    return 0


def _bench_design(m: int) -> SimulationDesign:
    base = resolve_design("paper-binary").blocks
    blocks = []
    while sum(b.length for b in blocks) < m:
        src = base[len(blocks) % len(base)]
        room = m - sum(b.length for b in blocks)
        blocks.append(BlockModel(src.transition, min(src.length, room)))
    return SimulationDesign(tuple(blocks))


def cmd_bench(args) -> int:
    solvers = args.solver or ["dp", "hier"]
    rows = []
    for m in args.m_grid:
        alignment, _ = simulate(_bench_design(m).with_sample(args.n, args.seed))
        for name in solvers:
            scorer = IntervalScorer(alignment, PenaltyConfig(args.penalty, args.c))
            t0 = time.perf_counter()
            seg = SOLVERS[name](scorer)
            rows.append({"m": m, "n": args.n, "solver": name, "cuts": len(seg.cuts),
                         "seconds": time.perf_counter() - t0})
    # log-log slope of time against m, per solver
    slopes = {}
    for name in solvers:
        pts = [(r["m"], r["seconds"]) for r in rows if r["solver"] == name and r["seconds"] > 0]
        if len(pts) >= 2:
            x, y = np.log([p[0] for p in pts]), np.log([p[1] for p in pts])
            slopes[name] = float(np.polyfit(x, y, 1)[0])
    _emit({"rows": rows, "time_exponent_in_m": slopes})
    return 0


COMMANDS = {
    "segment": cmd_segment,
    "simulate": cmd_simulate,
    "evaluate": cmd_evaluate,
    "bench": cmd_bench,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (AlignmentError, DesignError, SegmentationError, ValueError, OSError) as exc:
        print(f"blockseg {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
