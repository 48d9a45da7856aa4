#!/usr/bin/env python3
"""Produce the theory-versus-simulation table for a model file.

Example:
    python3 scripts/theory_vs_simulation.py models/table1.json \
        --iterations 1000000 --runs 10 --kmax 60 --out results/table1_compare.csv
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from onoffqueue.cli import main as cli_main


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("model")
    parser.add_argument("--iterations", type=int, default=1_000_000)
    parser.add_argument("--runs", type=int, default=10)
    parser.add_argument("--burn-in", type=int, default=10_000)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--kmax", type=int, default=60)
    parser.add_argument("--backend", default="float64")
    parser.add_argument("--out", default=None, help="CSV destination (default stdout)")
    args = parser.parse_args()

    argv = [
        "compare", args.model,
        "--iterations", str(args.iterations),
        "--runs", str(args.runs),
        "--burn-in", str(args.burn_in),
        "--seed", str(args.seed),
        "--kmax", str(args.kmax),
        "--backend", args.backend,
    ]
    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        argv += ["--output", args.out]
    code = cli_main(argv)
    if code == 0 and args.out:
        print(f"wrote {args.out}")
    return code


if __name__ == "__main__":
    sys.exit(main())
