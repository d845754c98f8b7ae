"""Primitive divisors of F_n, the rank of apparition, and the sign rule.

p is a primitive divisor of F_n exactly when its rank of apparition
alpha(p) (the least m with p | F_m) equals n.  alpha(p) divides p - 1
for split p and p + 1 for inert p, which forces every primitive divisor
into p = +/-1 (mod n).  Valuations come from the lifting rule
nu_p(F_{alpha m}) = nu_p(F_alpha) + nu_p(m).
"""

from __future__ import annotations

from stewart_bounds import (
    IncompleteFactorization,
    nu_p_fib,
    primitive_divisors,
    rank_of_apparition,
    split_type,
)


def main() -> None:
    print("primitive divisors for a few indices:")
    for n in (7, 10, 12, 19, 30, 100):
        got = primitive_divisors(n)
        body = ", ".join(f"{p}^{e}" if e > 1 else str(p)
                         for p, e in sorted(got.divisors)) or "(none)"
        print(f"  F_{n:<3d} -> {body}")
    print("  (F_12 = 144 is the lone index past 6 with no primitive prime)")

    print("\nsign rule at n = 100:")
    for p, _ in sorted(primitive_divisors(100).divisors):
        kind = "split" if split_type(p) == 1 else "inert"
        print(f"  p = {p:<8d} {kind}: p mod 100 = {p % 100}")

    print("\nrank of apparition and lifted valuations for p = 11:")
    rec = rank_of_apparition(11)
    print(f"  alpha(11) = {rec.alpha}, f_p = {rec.f_p}, "
          f"nu_11(F_alpha) = {rec.e0}")
    for n in (10, 110, 1210):
        print(f"  nu_11(F_{n}) = {nu_p_fib(11, n)}")

    print("\nbudgeted route for composite-heavy indices:")
    big = primitive_divisors(210, prime_budget=10 ** 6)
    print(f"  F_210 -> {sorted(big.divisors)}")
    try:
        primitive_divisors(211, prime_budget=50)
    except IncompleteFactorization as e:
        print(f"  F_211 with a 50-trial budget refuses honestly: {e}")


if __name__ == "__main__":
    main()
