"""The large-kappa regime: threshold 143 log kappa log log kappa.

Once log kappa >= 250000 the k-scan collapses analytically: k is pinned
at floor(log M) for M = kappa (kappa + 1) and a fixed chain of displayed
inequalities replaces the optimizer.  Each link records whether it is
numeric (adversarially rounded), algebraic (a rearrangement whose
boundary case is exact equality), symbolic, or cited.

    python3 demos/huge_kappa_chain.py
    python3 demos/huge_kappa_chain.py --log-kappa 1e6
"""

from __future__ import annotations

import argparse

from stewart_bounds import HypothesisViolation, bigkappa_bound


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--log-kappa", default="250000",
                    help="log kappa as an integer or decimal string")
    ns = ap.parse_args()

    threshold, rep = bigkappa_bound(log_kappa=ns.log_kappa)
    print(f"log kappa = {float(rep.log_kappa):.6g}, "
          f"k = floor(log M) = {rep.k}")
    for link in rep.links:
        mark = "ok  " if link.holds else "FAIL"
        side = (f"  {link.lhs:.6g} vs {link.rhs:.6g}"
                if link.lhs is not None else "")
        print(f"  {mark} {link.name:<18s} [{link.method}]{side}")
    print(f"threshold (upper) = {float(threshold):.6f}")
    print("a primitive divisor >= (kappa+1) n - 1 exists for all "
          "n >= exp(143 log kappa log log kappa)")

    print("\nbelow the gate the chain refuses:")
    try:
        bigkappa_bound(log_kappa=249999)
    except HypothesisViolation as e:
        print(f"  log kappa = 249999 -> {e}")


if __name__ == "__main__":
    main()
