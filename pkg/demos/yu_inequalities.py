"""The fixed-constant inequality battery behind the order-of-magnitude 3588.1.

All rows are evaluated at p = ceil(e^{3k} k^3), the smallest prime size
the order bound admits, with adversarial rounding on both sides.  Eight
of the nine displays hold for every k >= 8.  The ninth
(f_p log p > k' + log k') genuinely fails at residual degree 1 for every
k and is reported failing rather than patched: log p grows like 3k while
k' grows like 3.95k.

    python3 demos/yu_inequalities.py --k 8
"""

from __future__ import annotations

import argparse
import warnings

from stewart_bounds import (
    enumerate_split_primes,
    prop_order_bound,
    theta_cap,
    yu_constants_check,
)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k", type=int, default=8)
    ns = ap.parse_args()

    rep = yu_constants_check(ns.k)
    print(f"k = {rep.k}, p = ceil(e^(3k) k^3) = {rep.p_floor}")
    for row in rep.rows:
        mark = "ok  " if row.holds else "FAIL"
        print(f"  {mark} {row.name:<18s} lhs = {float(row.lhs):<16.6g} "
              f"rhs = {float(row.rhs):.6g}")
        if row.note:
            print(f"       {row.note}")
    print(f"all hold: {rep.passed}")

    if ns.k == 8:
        table = enumerate_split_primes(count=10)
        theta = theta_cap(8, table)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")  # the floor itself is composite
            v = prop_order_bound(rep.p_floor, 1, 8, theta)
        print(f"\norder bound instantiated at the floor: "
              f"nu_p(F_n) <= {float(v):.6g}")


if __name__ == "__main__":
    main()
