"""Reproduce the published threshold rows and inspect one kappa in depth.

For each kappa the scan minimizes dsn(k) = Lambda(k, kappa)
(2 log Lambda)^{1/(k-1)} over 8 <= k <= 78 and returns n0 = ceil of the
minimum (clamped below by the side conditions n > e^{3k} k^3 + 1 and
n > e^100): every F_n with n >= exp(n0) has a primitive divisor of size
at least (kappa+1) n - 1.

    python3 demos/threshold_tables.py
    python3 demos/threshold_tables.py --kappa 42
"""

from __future__ import annotations

import argparse

from stewart_bounds import enumerate_split_primes, n0_optimize

TABLE_1 = range(1, 11)
TABLE_2 = (20, 30, 40, 50, 100, 1000, 10 ** 4, 10 ** 5, 10 ** 6)


def show_tables() -> None:
    table = enumerate_split_primes(upper=1000)
    print(f"{'kappa':>8s} {'k':>4s} {'dsn':>14s} {'n0':>7s}")
    for block, kappas in (("first", TABLE_1), ("second", TABLE_2)):
        print(f"-- {block} table --")
        for kappa in kappas:
            r = n0_optimize(kappa, table=table)
            print(f"{kappa:>8d} {r.k:>4d} {float(r.log_n_bound):>14.6f} "
                  f"{r.n0:>7d}")


def show_one(kappa: int) -> None:
    r = n0_optimize(kappa)
    print(f"kappa = {kappa}: optimal k = {r.k}, n0 = {r.n0}")
    print(f"  Theta_k (upper)  {float(r.theta_k):.6g}")
    print(f"  Lambda  (upper)  {float(r.lambda_value):.6g}")
    print(f"  dsn     (upper)  {float(r.log_n_bound):.6f}")
    print(f"  side-condition floor {float(r.validity.precondition_floor):.4f}")
    print("scan neighborhood (dsn by k):")
    for e in r.scan:
        if abs(e.k - r.k) <= 3:
            mark = " <- chosen" if e.k == r.k else ""
            print(f"  k = {e.k:<3d} dsn = {e.dsn:>14.6f} "
                  f"n0 = {e.n0}{mark}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--kappa", type=int, default=None,
                    help="show the scan for one kappa instead of the tables")
    ns = ap.parse_args()
    if ns.kappa is None:
        show_tables()
    else:
        show_one(ns.kappa)


if __name__ == "__main__":
    main()
