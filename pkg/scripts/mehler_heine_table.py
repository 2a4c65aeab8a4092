"""Hard-edge table: scaled P_n(z/n^3) against the 0F2 limit, and scaled smallest zeros.

    python3 scripts/mehler_heine_table.py --params 1,2,3,4
"""

import argparse

import numpy as np

from mophyp.asymptotics import mehler_heine_check, mehler_heine_scaled, scaled_zero_limit
from mophyp.cli import parse_params
from mophyp.hyperfun import entire_0f2


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--params", default="1,2,3,4")
    ap.add_argument("--n", type=int, nargs="+", default=[16, 32, 64, 128])
    ap.add_argument("--z", type=float, nargs="+", default=[1.0, 5.0, 10.0, 20.0, 40.0])
    args = ap.parse_args()
    p = parse_params(args.params)
    a, b = float(p.a), float(p.b)
    print("z".rjust(8) + "".join(f"n={n}".rjust(14) for n in args.n) + "0F2 limit".rjust(14))
    cols = [mehler_heine_scaled(p, n, args.z) for n in args.n]
    limit = entire_0f2(a, b, -np.asarray(args.z) / 4)
    for i, z in enumerate(args.z):
        print(f"{z:8.2f}" + "".join(f"{c[i]:14.6f}" for c in cols) + f"{limit[i]:14.6f}")
    grid = np.linspace(0, 40, 401)
    print("\nsup error on [0, 40]: " + ", ".join(f"n={n}: {mehler_heine_check(p, n, grid):.4f}" for n in args.n))
    tab = scaled_zero_limit(p, 1, (40, 80, 160))
    print(f"\nn^3 x_1: {', '.join(f'{s:.4f}' for s in tab.scaled)}  ->  4 f_1 = {tab.limit:.4f}")


if __name__ == "__main__":
    main()
