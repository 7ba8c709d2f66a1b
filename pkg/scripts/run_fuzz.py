#!/usr/bin/env python3
"""Fuzz the bound checks over a corpus of random bodies.

Prints the aggregate summary and optionally dumps every report as JSON
lines; the exit code is nonzero when any check fails, so the script can
gate CI jobs.

Usage:
    python scripts/run_fuzz.py --profiles 25 --polytopes 25 --mc-samples 50000
"""

import argparse
import sys
import time

from grunbaum import verify


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--dims", type=int, nargs="+", default=[2, 3, 4, 5])
    parser.add_argument("--profiles", type=int, default=25, help="profiles per dimension")
    parser.add_argument("--polytopes", type=int, default=25, help="polytopes per dimension (2-D/3-D)")
    parser.add_argument("--alphas", type=int, default=3, help="cut heights per body")
    parser.add_argument("--mc-samples", type=int, default=0)
    parser.add_argument("--seed", type=int, default=20240802)
    parser.add_argument("--tol", type=float, default=1e-9)
    parser.add_argument("--reports-out", default=None, help="dump all reports as JSON lines")
    args = parser.parse_args()

    config = verify.FuzzConfig(
        dims=tuple(args.dims),
        profiles_per_dim=args.profiles,
        polytopes_per_dim=args.polytopes,
        alphas_per_body=args.alphas,
        mc_samples=args.mc_samples,
        seed=args.seed,
        tol=args.tol,
    )
    start = time.perf_counter()
    report = verify.fuzz_suite(config)
    elapsed = time.perf_counter() - start
    print(report.summary())
    print(f"elapsed: {elapsed:.1f}s")
    if args.reports_out:
        with open(args.reports_out, "w", encoding="utf-8") as fh:
            for rep in report.reports:
                fh.write(rep.to_json() + "\n")
        print(f"wrote {report.total} reports to {args.reports_out}")
    return 0 if report.all_passed else 1


if __name__ == "__main__":
    sys.exit(main())
