"""Consumer surplus and welfare with and without integration over a t grid.

Compares exclusive supply to the same platform under separation with the
(N, E2) equilibrium after one integration, at r = 0.

    python3 scripts/welfare_table.py --alpha 1 --beta 1
"""

import argparse
import sys

from mediabargain import ModelParams
from mediabargain.analysis import grid_values, rows_to_csv, welfare


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--alpha", type=float, default=1.0)
    ap.add_argument("--beta", type=float, default=1.0)
    ap.add_argument("--lam", type=float, default=0.5)
    ap.add_argument("--t-min", type=float, default=0.7)
    ap.add_argument("--t-max", type=float, default=2.0)
    ap.add_argument("--step", type=float, default=0.05)
    args = ap.parse_args()
    rows = []
    for t in grid_values(args.t_min, args.t_max, args.step):
        p = ModelParams(v=10.0, alpha=args.alpha, beta=args.beta, t=t, r=0.0, lam=args.lam)
        if args.alpha + args.beta >= 3 * t:
            continue
        sep = welfare(p, "separation", "E(s),E(s)")
        one = welfare(p, "one-vi", "N,E2")
        rows.append({
            **p.to_dict(),
            "cs_separation": sep.consumer_surplus,
            "cs_one_vi": one.consumer_surplus,
            "cs_difference": one.consumer_surplus - sep.consumer_surplus,
            "sw_separation": sep.social_welfare,
            "sw_one_vi": one.social_welfare,
            "sw_difference": one.social_welfare - sep.social_welfare,
        })
    sys.stdout.write(rows_to_csv(rows))


if __name__ == "__main__":
    main()
