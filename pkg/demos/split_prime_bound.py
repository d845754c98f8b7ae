"""Split primes of Q(sqrt 5) and the growth envelope eta q_k < k^1.3.

q_k is the (k-1)-th prime p = +/-1 (mod 5) (the table is indexed from
q_2 = 11 to match the theta-generator products).  The envelope feeds the
large-kappa chain; it is a LARGE-k statement: the demo shows both the
small-k failures and the passing deep slice, certified with directed
rounding and automatic precision escalation near ties.

    python3 demos/split_prime_bound.py
    python3 demos/split_prime_bound.py --deep   # adds a 500000.. slice
"""

from __future__ import annotations

import argparse

from stewart_bounds import enumerate_split_primes, verify_qk_bound


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--deep", action="store_true",
                    help="also certify the 500000 .. 510000 slice")
    ns = ap.parse_args()

    table = enumerate_split_primes(count=20)
    print("first indexed split primes:")
    for j in range(2, 12):
        print(f"  q_{j} = {table.q(j)}")

    small = verify_qk_bound(2, 400, "1.3")
    print(f"\nsmall k (2 .. 400): passed = {small.passed}, "
          f"first failure at k = {small.first_fail_k} "
          f"(q = {small.first_fail_q})")
    print(f"  max eta q_k / k^1.3 = {small.max_ratio:.4f}"
          "  (the envelope only binds for large k)")

    if ns.deep:
        deep = verify_qk_bound(500000, 510000, "1.3")
        print(f"\ndeep slice (500000 .. 510000): passed = {deep.passed}, "
              f"max ratio = {deep.max_ratio:.6f}, "
              f"escalations = {deep.escalations}")


if __name__ == "__main__":
    main()
