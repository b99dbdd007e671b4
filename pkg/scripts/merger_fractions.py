"""Fractions of the default grid on which each merger claim holds.

Claims observed below 0.9 carry ``review: true``; the model states them only
qualitatively, so this is a prompt to look, not a failure.

    python3 scripts/merger_fractions.py --draws 10000 --seed 0
"""

import argparse
import json

from mediabargain.analysis import default_grid, merger_statistics


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--draws", type=int, default=10_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    grid = default_grid(args.draws, args.seed)
    stats = merger_statistics(grid)
    print(json.dumps({"draws": args.draws, "seed": args.seed, "viable": len(grid), "claims": stats}, indent=2))


if __name__ == "__main__":
    main()
