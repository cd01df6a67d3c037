#!/usr/bin/env python3
"""Refinement-kernel benchmark: growth trend and compiled-vs-pure timing.

Runs the adversarial chain family (one color peeled per sweep, the cubic
worst case) across a range of sizes, prints the measured operation counts
with the fitted log-log slope, and compares every available kernel on the
same inputs. Optionally dumps the full report as JSON.

    python3 benchmarks/bench_cir.py --sizes 64,128,256,512,1024 --json out.json
"""
import argparse
import json
import sys
from dataclasses import asdict
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from synchro.benchmark import (  # noqa: E402
    available_kernels,
    compare_kernels,
    complexity_suite,
    report_lines,
)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--sizes",
        default="64,128,256,512,1024",
        help="Comma-separated chain sizes (default 64..1024).",
    )
    parser.add_argument(
        "--compare",
        action="store_true",
        help="Time every available kernel instead of just the active one.",
    )
    parser.add_argument("--json", metavar="PATH", help="Also write the report as JSON.")
    args = parser.parse_args()
    sizes = tuple(int(s) for s in args.sizes.split(","))

    if args.compare:
        for line in compare_kernels(sizes):
            print(line)
        return 0

    report = complexity_suite(sizes)
    for line in report_lines(report):
        print(line)
    if args.json:
        payload = {
            "kernel": report.kernel,
            "slope": report.slope,
            "ok": report.ok,
            "runs": [asdict(run) for run in report.runs],
            "kernels_available": [k.KERNEL_NAME for k in available_kernels()],
        }
        Path(args.json).write_text(json.dumps(payload, indent=2) + "\n")
        print(f"report written to {args.json}")
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
