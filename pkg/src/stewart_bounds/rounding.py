"""Directed-rounding arithmetic helpers built on gmpy2 (MPFR).

Conventions used throughout the package:

  * every quantity that must be an upper bound is computed inside an
    ``up(bits)`` context, every lower bound inside ``down(bits)``;
  * an inequality "lhs <= rhs" is certified only when it holds with lhs
    rounded up and rhs rounded down (adversarial rounding), and refuted
    only when it fails with the roundings swapped;
  * if the two directed evaluations disagree, precision is doubled and
    the comparison retried, up to MAX_BITS.

Expressions are kept monotone piecewise; wherever a subtraction occurs,
the subtrahend is evaluated under the opposite rounding so the result
direction is preserved.
"""

from __future__ import annotations

from dataclasses import dataclass

import gmpy2
from gmpy2 import mpfr

DEFAULT_BITS = 128
MAX_BITS = 1 << 14


def up(bits: int = DEFAULT_BITS):
    """Context in which every MPFR operation rounds toward +infinity."""
    return gmpy2.context(precision=bits, round=gmpy2.RoundUp)


def down(bits: int = DEFAULT_BITS):
    """Context in which every MPFR operation rounds toward -infinity."""
    return gmpy2.context(precision=bits, round=gmpy2.RoundDown)


def const_up(text: str, bits: int = DEFAULT_BITS) -> mpfr:
    """Decimal literal converted as an upper bound of its exact value."""
    with up(bits):
        return mpfr(text)


def const_down(text: str, bits: int = DEFAULT_BITS) -> mpfr:
    with down(bits):
        return mpfr(text)


def sqrt5(bits: int, direction) -> mpfr:
    with direction(bits):
        return gmpy2.sqrt(mpfr(5))


def eta(bits: int, direction) -> mpfr:
    """Fundamental unit (1 + sqrt 5)/2, directed."""
    with direction(bits):
        return (1 + gmpy2.sqrt(mpfr(5))) / 2


def log_eta(bits: int, direction) -> mpfr:
    # log is increasing, so the direction of eta propagates through.
    with direction(bits):
        return gmpy2.log(eta(bits, direction))


@dataclass(frozen=True)
class Verdict:
    """Outcome of a directed comparison.

    holds is True when the claim is certified, False when refuted, and
    None when MAX_BITS was reached without a decision (callers treat
    None as failure: an uncertified bound is no bound).
    """

    holds: bool | None
    bits: int
    lhs: mpfr
    rhs: mpfr

    @property
    def decided(self) -> bool:
        return self.holds is not None


def certify_le(make_sides, bits: int = DEFAULT_BITS, strict: bool = False,
               max_bits: int = MAX_BITS) -> Verdict:
    """Certify lhs <= rhs (or lhs < rhs when strict).

    make_sides(bits) must return (lhs_lo, lhs_hi, rhs_lo, rhs_hi) where
    each pair encloses the exact value of its side.  The claim passes
    when lhs_hi <= rhs_lo, is refuted when lhs_lo > rhs_hi, and is
    retried at doubled precision otherwise.
    """
    while True:
        lhs_lo, lhs_hi, rhs_lo, rhs_hi = make_sides(bits)
        ok = (lhs_hi < rhs_lo) if strict else (lhs_hi <= rhs_lo)
        if ok:
            return Verdict(True, bits, lhs_hi, rhs_lo)
        bad = (lhs_lo >= rhs_hi) if strict else (lhs_lo > rhs_hi)
        if bad:
            return Verdict(False, bits, lhs_lo, rhs_hi)
        if bits >= max_bits:
            return Verdict(None, bits, lhs_hi, rhs_lo)
        bits *= 2


def mpfr_str(x: mpfr) -> str:
    """Deterministic decimal form that round-trips at 128-bit precision.

    42 significant digits exceed the 2 + ceil(128 log10 2) = 41 needed for
    a guaranteed binary-decimal-binary round trip at the default precision.
    """
    return x.__format__(".42g")


def mpfr_from_str(text: str, bits: int = DEFAULT_BITS) -> mpfr:
    with gmpy2.context(precision=bits):
        return mpfr(text)
