"""Exact arithmetic in Z[eta] for K = Q(sqrt 5), eta = (1 + sqrt 5)/2.

Elements are written a + b*eta with integer a, b.  Since eta^2 = eta + 1,

    (a + b*eta)(c + d*eta) = (ac + bd) + (ad + bc + bd)*eta,

the nontrivial automorphism sigma sends eta to 1 - eta, so

    conj(a + b*eta) = (a + b) - b*eta,

and the K/Q-norm is N(a + b*eta) = a^2 + ab - b^2 = x * conj(x).

The module also houses the split/inert classification of rational primes,
a deterministic choice of prime element above each split prime, the
normalized norm-1 generators theta_k built from them, and logarithmic
heights.  All real-embedding arithmetic is done in directed rounding so
interval containment claims never silently pass on a boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import gmpy2
from gmpy2 import mpfr, mpz
from sympy import isprime

from .errors import (
    InsufficientPrimes,
    InternalInconsistency,
    NotPrime,
    NotSplit,
    RamifiedPrime,
    ZeroElement,
)
from .rounding import DEFAULT_BITS, MAX_BITS, down, eta, up


@dataclass(frozen=True)
class QuadInt:
    """Element a + b*eta of Z[eta]."""

    a: int
    b: int

    def __add__(self, other: "QuadInt") -> "QuadInt":
        return QuadInt(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "QuadInt") -> "QuadInt":
        return QuadInt(self.a - other.a, self.b - other.b)

    def __neg__(self) -> "QuadInt":
        return QuadInt(-self.a, -self.b)

    def __mul__(self, other: "QuadInt") -> "QuadInt":
        a, b, c, d = self.a, self.b, other.a, other.b
        return QuadInt(a * c + b * d, a * d + b * c + b * d)

    def __pow__(self, n: int) -> "QuadInt":
        if n < 0:
            raise ValueError("negative powers leave Z[eta]")
        result = QuadInt(1, 0)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conj(self) -> "QuadInt":
        return QuadInt(self.a + self.b, -self.b)

    def norm(self) -> int:
        return self.a * self.a + self.a * self.b - self.b * self.b

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_unit(self) -> bool:
        return abs(self.norm()) == 1

    def __repr__(self) -> str:
        return f"QuadInt({self.a}, {self.b})"


ONE = QuadInt(1, 0)
ETA = QuadInt(0, 1)
# gamma = eta/eta^sigma = -eta^2 = -(1 + eta)
GAMMA = QuadInt(-1, -1)
# sqrt 5 = 2*eta - 1 generates the ramified prime above 5
SQRT5 = QuadInt(-1, 2)


def exact_div(x: QuadInt, y: QuadInt) -> QuadInt:
    """Quotient x/y when y divides x in Z[eta]; InternalInconsistency otherwise."""
    n = y.norm()
    if n == 0:
        raise ZeroDivisionError("division by zero in Z[eta]")
    z = x * y.conj()
    if z.a % n or z.b % n:
        raise InternalInconsistency(f"{y} does not divide {x} in Z[eta]")
    return QuadInt(z.a // n, z.b // n)


def try_div(x: QuadInt, y: QuadInt) -> QuadInt | None:
    """exact_div, but None instead of an error when y does not divide x."""
    n = y.norm()
    z = x * y.conj()
    if n == 0 or z.a % n or z.b % n:
        return None
    return QuadInt(z.a // n, z.b // n)


def norm_and_conj(x: QuadInt) -> tuple[int, QuadInt]:
    """(N(x), x^sigma).  The norm is multiplicative and conj is an involution."""
    return x.norm(), x.conj()


def split_type(p: int) -> int:
    """Residual degree f_p: 1 when p = +-1 (mod 5), 2 when p = +-2 (mod 5).

    Quadratic reciprocity for sqrt 5 reduces to the residue of p mod 5.
    """
    if p == 5:
        raise RamifiedPrime("p = 5 ramifies in Q(sqrt 5)")
    if p < 2 or not isprime(p):
        raise NotPrime(f"{p} is not prime")
    return 1 if p % 5 in (1, 4) else 2


def prime_above(q: int) -> QuadInt:
    """Deterministic prime element pi with |N(pi)| = q for split q.

    Searches |b| = 1, 2, ... and solves a^2 + ab - b^2 = +-q for a >= 0
    via the discriminant 5 b^2 +- 4 q; among candidates at the minimal
    |b| the one with smallest a wins, ties preferring positive norm and
    then positive b.
    """
    if q == 5 or (isprime(q) and split_type(q) == 2):
        raise NotSplit(f"{q} does not split in Q(sqrt 5)")
    if not isprime(q):
        raise NotPrime(f"{q} is not prime")

    absb = 0
    while True:
        absb += 1
        candidates = []
        for b in (absb, -absb):
            for target in (q, -q):
                disc = 5 * b * b + 4 * target
                if disc < 0:
                    continue
                s, exact = gmpy2.isqrt_rem(mpz(disc))
                if exact != 0:
                    continue
                s = int(s)
                if (s - b) % 2 == 0 and s >= b:
                    a = (s - b) // 2
                    candidates.append((a, target < 0, b < 0, b))
        if candidates:
            a, _, _, b = min(candidates)
            pi = QuadInt(a, b)
            if abs(pi.norm()) != q:
                raise InternalInconsistency("prime_above search produced wrong norm")
            return pi


# ---------------------------------------------------------------------------
# Small directed-interval helpers for real embeddings.


def _iv_mul(x: tuple, y: tuple, bits: int) -> tuple:
    with down(bits):
        lo = min(x[0] * y[0], x[0] * y[1], x[1] * y[0], x[1] * y[1])
    with up(bits):
        hi = max(x[0] * y[0], x[0] * y[1], x[1] * y[0], x[1] * y[1])
    return lo, hi


def _iv_div(x: tuple, y: tuple, bits: int) -> tuple:
    if y[0] <= 0 <= y[1]:
        raise ZeroDivisionError("interval divisor straddles zero")
    with down(bits):
        lo = min(x[0] / y[0], x[0] / y[1], x[1] / y[0], x[1] / y[1])
    with up(bits):
        hi = max(x[0] / y[0], x[0] / y[1], x[1] / y[0], x[1] / y[1])
    return lo, hi


def _neg_exact(v: mpfr) -> mpfr:
    # gmpy2 negation rounds in the current context; match the operand's
    # precision so the sign flip stays exact.
    with gmpy2.context(precision=v.precision):
        return -v


def _iv_abs(x: tuple) -> tuple:
    if x[0] >= 0:
        return x
    if x[1] <= 0:
        return _neg_exact(x[1]), _neg_exact(x[0])
    return mpfr(0), max(_neg_exact(x[0]), x[1])


def _iv_pow(x: tuple, n: int, bits: int) -> tuple:
    """x^n for integer n, x a positive interval."""
    if x[0] <= 0:
        raise InternalInconsistency("power of non-positive interval")
    if n >= 0:
        with down(bits):
            lo = x[0] ** n
        with up(bits):
            hi = x[1] ** n
    else:
        with down(bits):
            lo = mpfr(1) / x[1] ** (-n)
        with up(bits):
            hi = mpfr(1) / x[0] ** (-n)
    return lo, hi


def _eta_interval(bits: int, conjugate: bool = False) -> tuple:
    e_lo, e_hi = eta(bits, down), eta(bits, up)
    if not conjugate:
        return e_lo, e_hi
    # eta^sigma = 1 - eta is decreasing in eta
    with down(bits):
        s_lo = 1 - e_hi
    with up(bits):
        s_hi = 1 - e_lo
    return s_lo, s_hi


def embedding_interval(x: QuadInt, bits: int = DEFAULT_BITS,
                       conjugate: bool = False) -> tuple:
    """Certified enclosure of the real embedding a + b*eta (or a + b*eta^sigma)."""
    e = _eta_interval(bits, conjugate)
    b = x.b
    if b >= 0:
        with down(bits):
            lo = x.a + b * e[0]
        with up(bits):
            hi = x.a + b * e[1]
    else:
        with down(bits):
            lo = x.a + b * e[1]
        with up(bits):
            hi = x.a + b * e[0]
    return lo, hi


@dataclass(frozen=True)
class QuadUnitFraction:
    """Value (numerator/denominator) * eta^(2m), total norm exactly 1.

    Used for the generators theta_k, which are generally not integral:
    numerator and denominator are conjugate prime elements, so their
    norms agree and the even unit power keeps the norm at +1.
    """

    numerator: QuadInt
    denominator: QuadInt
    unit_exponent: int

    def __post_init__(self):
        if self.denominator.is_zero() or self.numerator.is_zero():
            raise ZeroElement("zero numerator or denominator")
        if self.numerator.norm() != self.denominator.norm():
            raise InternalInconsistency(
                "numerator and denominator norms must agree for total norm 1")

    def norm(self) -> int:
        # N(num)/N(den) * N(eta)^(2m) = 1 * (-1)^(2m) = 1, exactly.
        return 1

    def embedding_interval(self, bits: int = DEFAULT_BITS,
                           conjugate: bool = False) -> tuple:
        num = embedding_interval(self.numerator, bits, conjugate)
        den = embedding_interval(self.denominator, bits, conjugate)
        ratio = _iv_div(num, den, bits)
        e = _eta_interval(bits, conjugate)
        unit = _iv_pow(_iv_abs(e), 2 * self.unit_exponent, bits)
        # eta^(2m) and (eta^sigma)^(2m) are positive, so abs is exact here.
        return _iv_mul(ratio, unit, bits)


@dataclass(frozen=True)
class Height:
    """Absolute logarithmic height, natural-log units, rounded up."""

    value: mpfr


def _log_abs_interval(x: tuple, bits: int) -> tuple:
    """Enclosure of log|x| for an interval not containing 0."""
    ax = _iv_abs(x)
    if ax[0] <= 0:
        raise InternalInconsistency("log of interval touching zero")
    with down(bits):
        lo = gmpy2.log(ax[0])
    with up(bits):
        hi = gmpy2.log(ax[1])
    return lo, hi


def theta_generator(k: int, table, bits: int = DEFAULT_BITS) -> QuadUnitFraction:
    """Normalized norm-1 generator theta_k of the ideal q_k / q_k^sigma.

    theta_k = (pi/pi^sigma) * eta^(2m) with pi = prime_above(q_k) and m the
    unique even-power shift landing both real embeddings in [1/eta, eta].
    Since the norm is 1 the two embeddings are reciprocal, so one interval
    constraint suffices; m is unique because the shift step in log scale
    equals the interval length.  Then h(theta_k) <= (1/2) log(q_k * eta).
    """
    if k < 2:
        raise InsufficientPrimes("theta generators start at index 2")
    q = table.q(k)
    pi = prime_above(q)
    ratio = QuadUnitFraction(pi, pi.conj(), 0)

    b = bits
    while True:
        num = embedding_interval(pi, b)
        den = embedding_interval(pi.conj(), b)
        r = _iv_div(num, den, b)
        t = _log_abs_interval(r, b)
        le_lo, le_hi = gmpy2.log(eta(b, down)), gmpy2.log(eta(b, up))
        # t_scaled = log|ratio| / log eta; need t_scaled + 2m in [-1, 1].
        with down(b):
            t_lo = t[0] / le_hi if t[0] >= 0 else t[0] / le_lo
        with up(b):
            t_hi = t[1] / le_lo if t[1] >= 0 else t[1] / le_hi
        m_from_hi = math.ceil((-1 - float(t_hi)) / 2)
        m_from_lo = math.ceil((-1 - float(t_lo)) / 2)
        if m_from_hi == m_from_lo:
            m = m_from_hi
            break
        if b >= MAX_BITS:
            raise InternalInconsistency(
                f"unit exponent for q_{k} = {q} undecidable at {b} bits")
        b *= 2

    theta = QuadUnitFraction(ratio.numerator, ratio.denominator, m)
    emb = theta.embedding_interval(bits)
    with down(bits):
        inv_eta_lo = 1 / eta(bits, up)
    eta_hi = eta(bits, up)
    a_emb = _iv_abs(emb)
    # Outward-rounded containment: tolerate only the rounding slack itself.
    if not (a_emb[1] >= inv_eta_lo and a_emb[0] <= eta_hi):
        raise InternalInconsistency(f"theta_{k} embedding escaped [1/eta, eta]")
    return theta


def height(x, bits: int = DEFAULT_BITS) -> Height:
    """Absolute logarithmic height h(x) = (1/2) sum_v log^+ |x|_v, rounded up.

    For integral x only the two real embeddings contribute.  For a
    QuadUnitFraction with conjugate prime numerator and denominator the
    finite part is (1/2) log q from the denominator ideal; this relies on
    the numerator and denominator ideals being coprime, which holds for
    every value produced by theta_generator.
    """
    if isinstance(x, QuadInt):
        if x.is_zero():
            raise ZeroElement("height of 0 is undefined")
        total = mpfr(0)
        for conjugate in (False, True):
            emb = _iv_abs(embedding_interval(x, bits, conjugate))
            if emb[1] > 1:
                with up(bits):
                    total += gmpy2.log(emb[1])
        with up(bits):
            return Height(total / 2)
    if isinstance(x, QuadUnitFraction):
        q = abs(x.denominator.norm())
        with up(bits):
            total = gmpy2.log(mpfr(q))
        for conjugate in (False, True):
            emb = _iv_abs(x.embedding_interval(bits, conjugate))
            if emb[1] > 1:
                with up(bits):
                    total += gmpy2.log(emb[1])
        with up(bits):
            return Height(total / 2)
    raise TypeError(f"height undefined for {type(x)!r}")
