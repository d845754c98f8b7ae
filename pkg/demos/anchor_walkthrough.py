"""Walk the kappa = 1, k = 22 threshold derivation one factor at a time.

The pipeline, with every step rounded toward the bound:

  Theta_22 = (23 log eta + log(q_2 ... q_22)) prod_{j=2}^{22} log(eta q_j)
  Lambda   = 7 k (k+1) ((1+2^{-k}) 50233.5 (k+1)^3 / (k-1)!
             kappa (kappa+1) Theta_k)^{1/(k-1)}
  dsn      = Lambda (2 log Lambda)^{1/21}        (inverting the log-n form)
  n0       = ceil(max(dsn, log(e^{3k} k^3 + 1), 100)) = 7607

so F_n has a primitive divisor >= 2n - 1 once n >= exp(7607); the dsn
value itself stays under 7606.3.
"""

from __future__ import annotations

from fractions import Fraction

from stewart_bounds import (
    BoundParams,
    enumerate_split_primes,
    lambda_bound,
    lna_bound,
    n0_optimize,
    theta_cap,
)


def main() -> None:
    table = enumerate_split_primes(upper=1000)
    k, kappa = 22, 1

    qs = [table.q(j) for j in range(2, k + 1)]
    print(f"split primes q_2 .. q_{k}: {qs}")

    theta = theta_cap(k, table)
    print(f"Theta_{k} (upper)          = {float(theta):.10g}")

    lam = lambda_bound(BoundParams(kappa=kappa, k=k), theta)
    print(f"Lambda({k}, {kappa}) (upper)     = {float(lam):.10g}")

    dsn = lna_bound(Fraction(1, k - 1), lam)
    print(f"Lambda (2 log Lambda)^(1/{k - 1}) = {float(dsn):.6f}")
    print(f"  stays under 7606.3: {float(dsn) < 7606.3}")

    r = n0_optimize(kappa, table=table)
    assert r.k == k, "the scan picks the same k this walkthrough fixes"
    print(f"n0 = ceil = {r.n0}; a primitive divisor >= 2n - 1 exists "
          f"for every n >= exp({r.n0})")

    print("neighbors lose:")
    for e in r.scan:
        if e.k in (k - 1, k, k + 1):
            print(f"  k = {e.k}: dsn = {e.dsn:.6f}")


if __name__ == "__main__":
    main()
