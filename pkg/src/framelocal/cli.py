"""Command-line pipeline: frames file + traces directory -> CSV directory.

Exit codes: 0 success, 1 usage error, 2 ingest error, 3 processing/output
error. The summary line goes to stdout; warnings and errors go to stderr.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .engine import run
from .errors import FrameLocalError
from .ingest import load_inputs
from .output import OutputLayout, render_overlay_svg, write_csv


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise _UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="framelocal",
        description="Reproject GPS traces into x,y,t coordinates local to "
                    "two-point reference frames with event intervals.")
    parser.add_argument("--frames", required=True, metavar="FILE",
                        help="GeoJSON FeatureCollection of 2-point frame lines")
    parser.add_argument("--traces", required=True, metavar="DIR",
                        help="directory of .gpx trace files")
    parser.add_argument("--out", required=True, metavar="DIR",
                        help="output directory for per-permutation CSV files "
                             "(created if absent, never cleared)")
    parser.add_argument("--recurse", action="store_true",
                        help="also search subdirectories for .gpx files")
    parser.add_argument("--plot", metavar="FILE.svg", default=None,
                        help="write an SVG overlay of all series")
    parser.add_argument("--jobs", type=int, default=1, metavar="N",
                        help="worker threads for the projection stage "
                             "(output is identical for any N)")
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="verbose diagnostics on stderr")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError:
        return 1
    if args.jobs < 1:
        print("framelocal: error: --jobs must be >= 1", file=sys.stderr)
        return 1

    try:
        frames, traces, report = load_inputs(args.frames, args.traces,
                                             recurse=args.recurse)
    except FrameLocalError as exc:
        print(f"framelocal: error: {exc}", file=sys.stderr)
        return 2

    for source, message in report.warnings:
        print(f"framelocal: warning: {source}: {message}", file=sys.stderr)
    if args.verbose:
        print(f"framelocal: loaded {report.frames_loaded} frames, "
              f"{report.events_loaded} events, {report.traces_loaded} traces",
              file=sys.stderr)

    try:
        result = run(traces, frames, jobs=args.jobs)
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        layout = OutputLayout(out_dir=out_dir)
        for series in result.series:
            path = write_csv(series, layout)
            if args.verbose:
                print(f"framelocal: wrote {path}", file=sys.stderr)
        if args.plot is not None:
            if result.series:
                render_overlay_svg(result.series, args.plot)
                if args.verbose:
                    print(f"framelocal: wrote {args.plot}", file=sys.stderr)
            else:
                print("framelocal: warning: no series to plot; skipped "
                      f"{args.plot}", file=sys.stderr)
    except (FrameLocalError, OSError) as exc:
        print(f"framelocal: error: {exc}", file=sys.stderr)
        return 3

    print(f"{len(result.series)} series written, {result.skipped_empty} "
          f"permutations skipped (empty), {len(report.warnings)} warnings")
    return 0


def entry_point() -> None:
    raise SystemExit(main())
