"""Export zeros of P_n and the limiting zero CDF for plotting.

    python3 scripts/zero_distribution.py --params 1,2,3,4 --n 20 40 80 --out zeros.csv
"""

import argparse
import csv

from mophyp.asymptotics import empirical_vs_limit, limit_cdf, zero_density
from mophyp.cli import parse_params
from mophyp.typeii import zeros


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--params", default="1,2,3,4")
    ap.add_argument("--n", type=int, nargs="+", default=[20, 40, 80])
    ap.add_argument("--out", default="zeros.csv")
    args = ap.parse_args()
    p = parse_params(args.params)
    with open(args.out, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["n", "k", "zero", "empirical_cdf", "limit_cdf", "limit_density"])
        for n in args.n:
            zs = zeros(p, n)
            for k, (z, F) in enumerate(zip(zs, limit_cdf(zs)), start=1):
                w.writerow([n, k, repr(float(z)), k / n, repr(float(F)), repr(float(zero_density(z)))])
            print(f"n={n:4d}  Kolmogorov distance {empirical_vs_limit(p, n, zs=zs):.4f}")
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
