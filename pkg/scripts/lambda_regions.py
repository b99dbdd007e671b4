"""Equilibrium region of the separated market as bargaining power varies.

Writes one CSV row per lambda value with the region label and the cutoffs.

    python3 scripts/lambda_regions.py --alpha 1 --beta 1 --t 1 --r 0.5 > regions.csv
"""

import argparse
import sys

from mediabargain import ModelParams
from mediabargain.analysis import grid_values, rows_to_csv, sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    for name, default in (("v", 10.0), ("alpha", 1.0), ("beta", 1.0), ("t", 1.0), ("r", 0.5)):
        ap.add_argument(f"--{name}", type=float, default=default)
    ap.add_argument("--step", type=float, default=0.01)
    args = ap.parse_args()
    base = ModelParams(v=args.v, alpha=args.alpha, beta=args.beta, t=args.t, r=args.r, lam=0.0)
    axes = [("lam", grid_values(0.0, 1.0, args.step))]
    rows = [{**r, **t} for r, t in zip(sweep(base, axes, "region"), sweep(base, axes, "threshold"))]
    sys.stdout.write(rows_to_csv(rows))


if __name__ == "__main__":
    main()
