"""Command-line interface.

Subcommands: segment, simulate, evaluate, bench. Exit codes: 0 success,
1 usage error, 2 data error, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import logging
import os
import statistics
import sys
import tempfile
import time
import traceback
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .errors import SegscanError
from .evaluation import positions_mask, score
from .pipeline import segment_profile
from .profiles import read_profile, read_segments, write_segments
from .scanning import ScanConfig
from .simulation import (benchmark_suite, read_truth_manifest,
                         write_profile_plain, write_truth_manifest)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_INTERNAL = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors by default; the contract here is 1
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _add_scan_flags(parser):
    group = parser.add_argument_group("scan parameters")
    group.add_argument("--wmin", type=int, default=1, help="minimum window length (default 1)")
    group.add_argument("--wmax", type=int, default=300, help="maximum window length (default 300)")
    group.add_argument("--rho", type=float, default=1.1,
                       help="window length growth factor (default 1.1)")
    group.add_argument("--ps", type=float, default=1e-3,
                       help="candidate retention p-value threshold (default 0.001)")
    group.add_argument("--alpha", type=float, default=0.01,
                       help="false discovery rate for BH (default 0.01)")
    group.add_argument("--pb", type=float, default=None,
                       help="biological cutoff on |mean - background| (default off)")
    group.add_argument("--k-refine", type=int, default=10, dest="k_refine",
                       help="refinement step divisor K (default 10)")
    group.add_argument("--background", type=float, default=0.0,
                       help="baseline level tested against (default 0)")
    group.add_argument("--sigma", type=float, default=None,
                       help="known noise scale; overrides MAD estimation")
    group.add_argument("--sides", choices=("two", "one"), default="two",
                       help="two-sided or one-sided (above background) test")


def _config_from(args) -> ScanConfig:
    return ScanConfig(w_min=args.wmin, w_max=args.wmax, rho=args.rho, p_s=args.ps,
                      alpha=args.alpha, p_b=args.pb, k_refine=args.k_refine,
                      background=args.background, sides=args.sides)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="segscan",
                     description="Segment numeric profiles into significant "
                                 "non-background regions.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    seg = sub.add_parser("segment", help="segment one or more profiles")
    seg.add_argument("inputs", nargs="+", metavar="INPUT", help="profile file(s)")
    seg.add_argument("--format", choices=("plain", "tsv", "bedgraph"), default="plain",
                     help="input format (default plain)")
    seg.add_argument("--out-format", choices=("tsv", "bed"), default="tsv",
                     help="output table format (default tsv)")
    seg.add_argument("--output", default=None,
                     help="output file (single input) or directory (multiple inputs); "
                          "default stdout for a single input")
    seg.add_argument("--jobs", type=_positive_int, default=1,
                     help="process this many input profiles concurrently")
    _add_scan_flags(seg)

    sim = sub.add_parser("simulate", help="generate a benchmark suite with ground truth")
    sim.add_argument("--kind", choices=("short", "long"), default="short",
                     help="short: 10 x 5000; long: 10 x 100000 (default short)")
    sim.add_argument("--snr", type=float, default=1.0,
                     help="signal-to-noise ratio (typical: 0.5, 1.0, 2.0)")
    sim.add_argument("--seed", type=int, default=0, help="master random seed (default 0)")
    sim.add_argument("--outdir", required=True, help="directory for profiles and truth.tsv")

    ev = sub.add_parser("evaluate", help="score predicted segment tables against ground truth")
    ev.add_argument("--truth", required=True, help="ground-truth manifest (truth.tsv)")
    ev.add_argument("--pred-dir", required=True,
                    help="directory holding <profile_id>.segments.tsv tables")
    ev.add_argument("--length", type=int, default=None,
                    help="profile length; defaults to the manifest's length header")
    ev.add_argument("--output", default=None, help="report file (default stdout)")

    be = sub.add_parser("bench", help="time the segmentation pipeline over a suite")
    be.add_argument("--suite", required=True, help="directory written by simulate")
    be.add_argument("--repetitions", type=_positive_int, default=3,
                    help="timing repetitions; the median is reported (default 3)")
    be.add_argument("--output", default=None, help="timing table file (default stdout)")

    return parser


def _atomic_write(path: Path, data: bytes) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def _segment_one(path_str: str, fmt: str, cfg: ScanConfig, sigma: float | None,
                 out_format: str) -> bytes:
    profile = read_profile(path_str, format=fmt)
    result = segment_profile(profile, cfg, sigma=sigma)
    return write_segments(result, profile, format=out_format)


def _cmd_segment(args) -> int:
    cfg = _config_from(args)
    inputs = [Path(p) for p in args.inputs]
    suffix = ".segments.tsv" if args.out_format == "tsv" else ".segments.bed"
    if len(inputs) > 1:
        if args.output is None:
            print("segscan segment: error: --output DIRECTORY is required with "
                  "multiple inputs", file=sys.stderr)
            return EXIT_USAGE
        out_dir = Path(args.output)
        out_dir.mkdir(parents=True, exist_ok=True)
        work = [(str(p), args.format, cfg, args.sigma, args.out_format) for p in inputs]
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                tables = list(pool.map(_segment_one, *zip(*work)))
        else:
            tables = [_segment_one(*item) for item in work]
        for path, table in zip(inputs, tables):
            _atomic_write(out_dir / (path.stem + suffix), table)
        return EXIT_OK
    table = _segment_one(str(inputs[0]), args.format, cfg, args.sigma, args.out_format)
    if args.output is None:
        sys.stdout.buffer.write(table)
        sys.stdout.buffer.flush()
    else:
        _atomic_write(Path(args.output), table)
    return EXIT_OK


def _cmd_simulate(args) -> int:
    out_dir = Path(args.outdir)
    out_dir.mkdir(parents=True, exist_ok=True)
    suite = benchmark_suite(args.kind, snr=args.snr, seed=args.seed)
    truth = {}
    length = None
    for profile, planted in suite:
        write_profile_plain(profile, out_dir / f"{profile.label}.txt")
        truth[profile.label] = planted
        length = len(profile)
    (out_dir / "truth.tsv").write_bytes(write_truth_manifest(truth, length=length))
    return EXIT_OK


def _cmd_evaluate(args) -> int:
    truth, manifest_length = read_truth_manifest(Path(args.truth).read_bytes())
    length = args.length if args.length is not None else manifest_length
    if length is None:
        raise SegscanError("profile length unknown; pass --length or use a manifest "
                           "with a '# length=' header")
    pred_dir = Path(args.pred_dir)
    lines = ["#profile_id\ttp\tfp\tfn\tprecision\trecall\tf1"]
    reports = []
    for profile_id in sorted(truth):
        pred_path = pred_dir / f"{profile_id}.segments.tsv"
        if not pred_path.exists():
            raise SegscanError(f"missing prediction table {pred_path}")
        records = read_segments(pred_path.read_bytes())
        predicted = [r for r in records if r.significant]
        report = score(positions_mask(predicted, length), positions_mask(truth[profile_id], length))
        reports.append(report)
        lines.append(f"{profile_id}\t{report.tp}\t{report.fp}\t{report.fn}\t"
                     f"{report.precision:.6f}\t{report.recall:.6f}\t{report.f1:.6f}")
    lines.append("MEAN\t%d\t%d\t%d\t%.6f\t%.6f\t%.6f" % (
        sum(r.tp for r in reports), sum(r.fp for r in reports), sum(r.fn for r in reports),
        statistics.fmean(r.precision for r in reports) if reports else 0.0,
        statistics.fmean(r.recall for r in reports) if reports else 0.0,
        statistics.fmean(r.f1 for r in reports) if reports else 0.0))
    data = ("\n".join(lines) + "\n").encode("utf-8")
    if args.output is None:
        sys.stdout.buffer.write(data)
    else:
        _atomic_write(Path(args.output), data)
    return EXIT_OK


def _cmd_bench(args) -> int:
    suite_dir = Path(args.suite)
    truth, _ = read_truth_manifest((suite_dir / "truth.tsv").read_bytes())
    rows = ["#profile_id\tn\tparse_seconds\tsegment_seconds"]
    total = 0.0
    for profile_id in sorted(truth):
        path = suite_dir / f"{profile_id}.txt"
        t0 = time.perf_counter()
        profile = read_profile(path, format="plain")
        parse_seconds = time.perf_counter() - t0
        times = []
        for _ in range(args.repetitions):
            t0 = time.perf_counter()
            segment_profile(profile)
            times.append(time.perf_counter() - t0)
        seconds = statistics.median(times)
        total += seconds
        rows.append(f"{profile_id}\t{len(profile)}\t{parse_seconds:.6f}\t{seconds:.6f}")
    rows.append(f"TOTAL\t-\t-\t{total:.6f}")
    data = ("\n".join(rows) + "\n").encode("utf-8")
    if args.output is None:
        sys.stdout.buffer.write(data)
    else:
        _atomic_write(Path(args.output), data)
    return EXIT_OK


_COMMANDS = {
    "segment": _cmd_segment,
    "simulate": _cmd_simulate,
    "evaluate": _cmd_evaluate,
    "bench": _cmd_bench,
}


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, stream=sys.stderr,
                        format="segscan: %(levelname)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except SegscanError as exc:
        print(f"segscan: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"segscan: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except Exception:
        traceback.print_exc()
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
