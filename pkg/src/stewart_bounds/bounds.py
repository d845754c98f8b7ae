"""Threshold machinery: Theta_k, Lambda(k, kappa), and the n0 optimizer.

The pipeline bounds the largest index n for which F_n could lack a
primitive divisor exceeding (kappa+1)n - 1.  Its ingredients:

  * Theta_k = ((k+1) log eta + log(q_2...q_k)) prod_{j=2}^k log(eta q_j),
    a product of heights of the norm-1 generators theta_j;
  * Lambda(k, kappa) = 7k(k+1)((1+2^{-k}) 50233.5 (k+1)^3/(k-1)!
    kappa(kappa+1) Theta_k)^{1/(k-1)};
  * the inversion x < A(2 log A)^eps of x/(log x)^{1/eps} < A, valid for
    A >= e^{2 eps} eps^{-eps} (lna_bound);
  * log n <= Lambda (2 log Lambda)^{1/(k-1)} =: dsn, minimized over k,
    with the side conditions n > e^{3k} k^3 + 1 and n > e^100 folded into
    the returned integer n0 (the threshold reads n >= exp(n0));
  * for log kappa >= 250000, a chain of displayed inequalities collapsing
    the optimum to the threshold 143 log kappa log log kappa;
  * the battery of fixed numeric inequalities behind the order-of-
    magnitude constant 3588.1 (yu_constants_check) and the order bound
    nu_p(F_n) <= 3588.1 (7k)^k ((k+1)^{k+2}/k!) (p/(f_p log p)^k) Theta_k.

Every bound-side quantity is rounded up, every subtracted quantity is
pre-rounded down, and comparisons with literal constants (2.72, 24.8,
3588.1, ...) round the computed side adversarially before comparing;
integers (p, k, q_j) enter mpfr expressions either exactly or via a
construction inside the block whose direction the bound needs.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
from gmpy2 import mpfr
from sympy import isprime

from .errors import (
    HypothesisViolation,
    InsufficientPrimes,
    InternalInconsistency,
)
from .fiboracle import rank_of_apparition
from .rounding import (
    DEFAULT_BITS,
    MAX_BITS,
    Verdict,
    certify_le,
    const_down,
    const_up,
    down,
    eta,
    log_eta,
    up,
)


@dataclass(frozen=True)
class BoundParams:
    """Inputs of one Lambda evaluation; k >= 8 is a theorem hypothesis."""

    kappa: int
    k: int
    precision_bits: int = DEFAULT_BITS
    rounding: str = "bounds-up"

    def __post_init__(self):
        if self.kappa < 1:
            raise ValueError("kappa must be a positive integer")
        if self.k < 8:
            raise HypothesisViolation("k >= 8 is required throughout")
        if self.precision_bits < 64:
            raise ValueError("precision below 64 bits is not supported")


@dataclass(frozen=True)
class Validity:
    """Side conditions the returned n0 has absorbed."""

    k_ge_8: bool
    precondition_floor: object  # mpfr: max(log(e^{3k} k^3 + 1), 100)


@dataclass(frozen=True)
class ScanEntry:
    """Audit row for one scanned k (floats: informational, not certified)."""

    k: int
    theta_k: float
    lambda_value: float
    dsn: float
    n0: int


@dataclass(frozen=True)
class BoundResult:
    kappa: int
    k: int
    theta_k: object       # mpfr, upper bound
    lambda_value: object  # mpfr, upper bound
    log_n_bound: object   # mpfr, upper bound of Lambda(2 log Lambda)^{1/(k-1)}
    n0: int
    validity: Validity
    scan: tuple = ()


def theta_cap(k: int, table, bits: int = DEFAULT_BITS):
    """Upper bound of Theta_k from the exact split primes q_2..q_k."""
    if k < 2:
        raise InsufficientPrimes("Theta_k needs k >= 2")
    le = log_eta(bits, up)
    eta_hi = eta(bits, up)
    with up(bits):
        log_q_sum = mpfr(0)
        prod = mpfr(1)
        for j in range(2, k + 1):
            q = table.q(j)
            log_q_sum += gmpy2.log(mpfr(q))
            prod *= gmpy2.log(eta_hi * q)
        return ((k + 1) * le + log_q_sum) * prod


_LOGFACT_MEMO: dict = {}


def _log_factorial(m: int, direction, bits: int):
    """Directed Sigma_{i=2}^m log i; memoized per (m, direction, bits)."""
    key = (m, direction is up, bits)
    got = _LOGFACT_MEMO.get(key)
    if got is not None:
        return got
    with direction(bits):
        total = mpfr(0)
        for i in range(2, m + 1):
            total += gmpy2.log(mpfr(i))
    _LOGFACT_MEMO[key] = total
    return total


def lambda_bound(params: BoundParams, theta_k, script_form: bool = False):
    """Upper bound of Lambda(k, kappa) given an upper bound of Theta_k.

    The two algebraic forms differ only in where the k+1 powers sit:
    (k+1)^{k+2} = (k+1)^{k-1} (k+1)^3, so the (k+1) in front is either
    kept outside (text form) or pushed under the (k-1)-th root (script
    form); they must agree to rounding accuracy.
    """
    k, kappa, bits = params.k, params.kappa, params.precision_bits
    lf = _log_factorial(k - 1, down, bits)
    with up(bits):
        total = gmpy2.log1p(mpfr(2) ** (-k))
        total += gmpy2.log(const_up("50233.5", bits))
        total += (k + 2 if script_form else 3) * gmpy2.log(mpfr(k + 1))
        total += gmpy2.log(mpfr(kappa) * (kappa + 1))
        total += gmpy2.log(mpfr(theta_k))
        total -= lf  # pre-rounded down, so subtracting keeps an upper bound
        root = gmpy2.exp(total / (k - 1))
        return (7 * k if script_form else 7 * k * (k + 1)) * root


def _interval_of(x, bits: int):
    """(lo, hi) enclosure of a scalar given as int, float, str, Fraction, mpfr."""
    if isinstance(x, Fraction):
        with down(bits):
            lo = mpfr(x.numerator) / x.denominator
        with up(bits):
            hi = mpfr(x.numerator) / x.denominator
        return lo, hi
    if isinstance(x, str):
        return const_down(x, bits), const_up(x, bits)
    with down(bits):
        lo = mpfr(x)
    with up(bits):
        hi = mpfr(x)
    return lo, hi


def lna_bound(epsilon, A, bits: int = DEFAULT_BITS):
    """A (2 log A)^epsilon, the inversion constant of x < A (log x)^{1/eps}.

    Hypothesis: 0 < epsilon <= 1 and A >= e^{2 eps} eps^{-eps}.  The right
    side is evaluated rounded down, so an A sitting exactly on the boundary
    (e.g. A = e^2 for eps = 1, supplied at working precision) is accepted;
    the acceptance slack is one rounding step, never more.
    """
    eps_lo, eps_hi = _interval_of(epsilon, bits)
    if not (eps_lo > 0 and eps_hi <= 1):
        raise HypothesisViolation("epsilon must lie in (0, 1]")
    a_lo, a_hi = _interval_of(A, bits)
    # hypothesis floor e^{g(eps)}, g(eps) = 2 eps - eps log eps increasing
    # on (0, 1]; evaluate at eps_lo, rounded down
    with up(bits):
        l_up = gmpy2.log(eps_lo)  # <= 0; up means toward zero
    with down(bits):
        g_lo = 2 * eps_lo - eps_lo * l_up
        hyp_lo = gmpy2.exp(g_lo)
    if a_lo < hyp_lo:
        raise HypothesisViolation(
            f"A = {float(a_lo):.6g} below e^(2 eps) eps^(-eps) >= "
            f"{float(hyp_lo):.6g}")
    with up(bits):
        two_log_hi = 2 * gmpy2.log(a_hi)
    with down(bits):
        two_log_lo = 2 * gmpy2.log(a_lo)
    if two_log_lo <= 0:
        raise HypothesisViolation("2 log A must be positive")
    # (2 log A)^eps = exp(eps log(2 log A)); the log may be negative, so
    # take the max over the four corner products
    with down(bits):
        t_lo = gmpy2.log(two_log_lo)
    with up(bits):
        t_hi = gmpy2.log(two_log_hi)
        u = max(eps_lo * t_lo, eps_lo * t_hi, eps_hi * t_lo, eps_hi * t_hi)
        return a_hi * gmpy2.exp(u)


def _enefour_floor(k: int, bits: int):
    """max(log(e^{3k} k^3 + 1), 100), rounded up."""
    with up(bits):
        val = gmpy2.log(gmpy2.exp(mpfr(3 * k)) * k ** 3 + 1)
        return max(val, mpfr(100))


def _ceil_exact(x) -> int:
    """Integer ceiling of an mpfr via exact rational conversion.

    gmpy2.ceil rounds its result in the ambient context, which silently
    corrupts integers wider than the context precision; going through mpq
    (mpfr values are dyadic rationals, the conversion is exact) cannot.
    """
    q = gmpy2.mpq(x)
    return int(-((-q.numerator) // q.denominator))


def _floor_exact(x) -> int:
    q = gmpy2.mpq(x)
    return int(q.numerator // q.denominator)


def n0_optimize(kappa: int,
                k_range: tuple | None = None,
                bits: int = DEFAULT_BITS,
                table=None) -> BoundResult:
    """Scan k and return the minimizing threshold record.

    The default window is 8 <= k <= (number of split primes below 1000),
    matching the published tables' search range; ties go to the smaller k.
    kappa above 10^6 is accepted with a warning: the chain stays valid,
    but no published table row guards the answer.
    """
    if kappa < 1:
        raise ValueError("kappa must be a positive integer")
    if kappa > 10 ** 6:
        warnings.warn("kappa exceeds the tabled range (10^6); the bound "
                      "is still valid but has no published cross-check",
                      stacklevel=2)
    from .splitprimes import enumerate_split_primes

    if k_range is None:
        table = table or enumerate_split_primes(upper=1000)
        k_lo, k_hi = 8, len(table)
    else:
        k_lo, k_hi = k_range
        if k_lo < 8:
            raise HypothesisViolation("k >= 8 is required throughout")
        if k_hi < k_lo:
            raise ValueError("empty k range")
        if table is None or table.last_index < k_hi:
            table = enumerate_split_primes(count=k_hi - 1)

    le_up = log_eta(bits, up)
    eta_hi = eta(bits, up)
    best = None
    best_key = None
    scan = []
    with up(bits):
        log_q_sum = mpfr(0)
        prod = mpfr(1)
    for k in range(2, k_hi + 1):
        q = table.q(k)
        with up(bits):
            log_q_sum += gmpy2.log(mpfr(q))
            prod *= gmpy2.log(eta_hi * q)
        if k < k_lo:
            continue
        with up(bits):
            theta = ((k + 1) * le_up + log_q_sum) * prod
        params = BoundParams(kappa=kappa, k=k, precision_bits=bits)
        lam = lambda_bound(params, theta)
        dsn = lna_bound(Fraction(1, k - 1), lam, bits)
        floor_k = _enefour_floor(k, bits)
        n0_k = max(_ceil_exact(dsn), _ceil_exact(floor_k))
        scan.append(ScanEntry(k=k, theta_k=float(theta),
                              lambda_value=float(lam), dsn=float(dsn),
                              n0=n0_k))
        key = (n0_k, float(dsn))
        if best_key is None or key < best_key:
            best_key = key
            best = BoundResult(
                kappa=kappa, k=k, theta_k=theta, lambda_value=lam,
                log_n_bound=dsn, n0=n0_k,
                validity=Validity(k_ge_8=True, precondition_floor=floor_k))
    if best is None:
        raise InsufficientPrimes("k scan window is empty")
    return BoundResult(kappa=best.kappa, k=best.k, theta_k=best.theta_k,
                       lambda_value=best.lambda_value,
                       log_n_bound=best.log_n_bound, n0=best.n0,
                       validity=best.validity, scan=tuple(scan))


# ---------------------------------------------------------------------------
# Yu-constant inequality battery.


def p_floor_exact(k: int, bits: int | None = None) -> int:
    """ceil(e^{3k} k^3) as an exact integer, by precision escalation."""
    b = bits or (3 * k * 1443 // 1000 + 64)
    limit = max(MAX_BITS, 8 * b)
    while b <= limit:
        with down(b):
            lo = gmpy2.exp(mpfr(3 * k)) * k ** 3
        with up(b):
            hi = gmpy2.exp(mpfr(3 * k)) * k ** 3
        c_lo, c_hi = _ceil_exact(lo), _ceil_exact(hi)
        if c_lo == c_hi:
            return c_lo
        b *= 2
    raise InternalInconsistency(f"ceil(e^(3k) k^3) undecided for k = {k}")


@dataclass(frozen=True)
class YuRow:
    """One displayed inequality, adversarially rounded.

    lhs/rhs are stored in the claim's own reading order, so rows whose
    claim is lhs > rhs carry the sides swapped relative to the internal
    <=-certification; the note says which residual degree is shown.
    """

    name: str
    lhs: object
    rhs: object
    holds: bool
    note: str = ""


@dataclass(frozen=True)
class YuCheckReport:
    k: int
    p_floor: int
    rows: tuple
    passed: bool


def _le_row(name: str, verdict: Verdict, note: str = "") -> YuRow:
    return YuRow(name=name, lhs=verdict.lhs, rhs=verdict.rhs,
                 holds=bool(verdict.holds), note=note)


def _gt_row(name: str, verdict: Verdict, note: str = "") -> YuRow:
    # verdict certified rhs <(=) lhs; display in the claim's order
    return YuRow(name=name, lhs=verdict.rhs, rhs=verdict.lhs,
                 holds=bool(verdict.holds), note=note)


def yu_constants_check(k: int, bits: int = DEFAULT_BITS) -> YuCheckReport:
    """Evaluate the constant-collapsing inequalities at p = ceil(e^{3k} k^3).

    Rows whose content depends on the residual degree are evaluated at the
    weaker f_p; the f_p log p > k' + log k' display genuinely fails for
    split p (f_p = 1: log p grows like 3k while k' grows like 3.95k) and
    is reported failing rather than patched.
    """
    if k < 8:
        raise HypothesisViolation("k >= 8 is required")
    p = p_floor_exact(k)
    k3 = k ** 3
    rows = []

    def x_lo_hi(b):
        with down(b):
            x_lo = gmpy2.exp(mpfr(3 * k)) * k3
        with up(b):
            x_hi = gmpy2.exp(mpfr(3 * k)) * k3
        return x_lo, x_hi

    # (p-1)/(p-2) <= 1 + 1/(e^{3k} k^3 - 2): tight by p = ceil(e^{3k} k^3)
    def step_sides(b):
        x_lo, x_hi = x_lo_hi(b)
        with down(b):
            den_lo = x_lo - 2
            lhs_lo = (mpfr(p) - 1) / (p - 2)      # p exact int, p-1, p-2 exact
        with up(b):
            den_hi = x_hi - 2
            lhs_hi = (mpfr(p) - 1) / (p - 2)
            rhs_hi = 1 + 1 / den_lo
        with down(b):
            rhs_lo = 1 + 1 / den_hi
        return lhs_lo, lhs_hi, rhs_lo, rhs_hi

    rows.append(_le_row("ratio_step", certify_le(step_sides, bits)))

    # (1 + 1/(e^{3k} k^3 - 2))^k < e^{1/(64 e^24 - 1/4)}: at k = 8 the two
    # exponents coincide exactly (512 e^24 - 2 = 8 (64 e^24 - 1/4)) and only
    # the strictness of log(1+u) < u separates the sides, margin ~ 4 u^2
    def exp_sides(b):
        x_lo, x_hi = x_lo_hi(b)
        with down(b):
            den_lo = x_lo - 2
            e24_lo = gmpy2.exp(mpfr(24))
            yu_den_lo = 64 * e24_lo - const_up("0.25", b)
        with up(b):
            den_hi = x_hi - 2
            e24_hi = gmpy2.exp(mpfr(24))
            yu_den_hi = 64 * e24_hi - const_down("0.25", b)
            lhs_hi = gmpy2.exp(k * gmpy2.log1p(1 / den_lo))
            rhs_hi = gmpy2.exp(1 / yu_den_lo)
        with down(b):
            lhs_lo = gmpy2.exp(k * gmpy2.log1p(1 / den_hi))
            rhs_lo = gmpy2.exp(1 / yu_den_hi)
        return lhs_lo, lhs_hi, rhs_lo, rhs_hi

    rows.append(_le_row("ratio_exp", certify_le(exp_sides, bits, strict=True)))

    # p^{f_p}/delta <= (512 e^24/(512 e^24 - 1)) p with delta = 1 (f_p = 1)
    # or p - 1 (f_p = 2); the binding case is f_p = 2
    def delta_sides(b):
        with down(b):
            e24_lo = gmpy2.exp(mpfr(24))
            c_lo = 512 * e24_lo
            cm1_lo = c_lo - 1
            lhs_lo = mpfr(p) * p / (p - 1)
        with up(b):
            e24_hi = gmpy2.exp(mpfr(24))
            c_hi = 512 * e24_hi
            cm1_hi = c_hi - 1
            lhs_hi = mpfr(p) * p / (p - 1)
            rhs_hi = c_hi / cm1_lo * p
        with down(b):
            rhs_lo = c_lo / cm1_hi * p
        return lhs_lo, lhs_hi, rhs_lo, rhs_hi

    rows.append(_le_row("p_over_delta", certify_le(delta_sides, bits),
                        note="f_p = 2 shown; f_p = 1 gives lhs = p, below"))

    # p/(f_p log p)^{k+1} > e^k/k^k; binding case f_p = 2
    def flogp_sides(b):
        with up(b):
            den_hi = (2 * gmpy2.log(mpfr(p))) ** (k + 1)
            tgt_hi = gmpy2.exp(mpfr(k)) / k ** k     # k^k exact int
        with down(b):
            den_lo = (2 * gmpy2.log(mpfr(p))) ** (k + 1)
            tgt_lo = gmpy2.exp(mpfr(k)) / k ** k
            val_lo = p / den_hi
        with up(b):
            val_hi = p / den_lo
        return tgt_lo, tgt_hi, val_lo, val_hi

    rows.append(_gt_row("p_over_flogp",
                        certify_le(flogp_sides, bits, strict=True),
                        note="claim is lhs > rhs; f_p = 2 shown"))

    # f_p log p > k' + log k', k' = (2 + log 7) k + 4.71 + log 2.
    # FALSE for f_p = 1 at every k; reported failing, not patched.
    def kprime_sides_for(f):
        def sides(b):
            with down(b):
                lhs_lo = f * gmpy2.log(mpfr(p))
                kp_lo = (2 + gmpy2.log(mpfr(7))) * k + \
                    const_down("4.71", b) + gmpy2.log(mpfr(2))
                rhs_lo = kp_lo + gmpy2.log(kp_lo)
            with up(b):
                lhs_hi = f * gmpy2.log(mpfr(p))
                kp_hi = (2 + gmpy2.log(mpfr(7))) * k + \
                    const_up("4.71", b) + gmpy2.log(mpfr(2))
                rhs_hi = kp_hi + gmpy2.log(kp_hi)
            return rhs_lo, rhs_hi, lhs_lo, lhs_hi
        return sides

    verdicts = {f: certify_le(kprime_sides_for(f), bits, strict=True)
                for f in (1, 2)}
    f_shown = 1 if not verdicts[1].holds else \
        (2 if not verdicts[2].holds else 1)
    rows.append(_gt_row("flogp_vs_kprime", verdicts[f_shown],
                        note=f"claim is lhs > rhs; shown at f_p = {f_shown}"
                        + ("" if verdicts[1].holds else
                           "; holds at f_p = 2, fails for split p")))

    # f_p log p >= log(2 e^4 (k+1)); binding case f_p = 1
    def second_sides(b):
        with down(b):
            rhs_lo = gmpy2.log(2 * gmpy2.exp(mpfr(4)) * (k + 1))
            lhs_lo = gmpy2.log(mpfr(p))
        with up(b):
            rhs_hi = gmpy2.log(2 * gmpy2.exp(mpfr(4)) * (k + 1))
            lhs_hi = gmpy2.log(mpfr(p))
        return rhs_lo, rhs_hi, lhs_lo, lhs_hi

    rows.append(_gt_row("second_max", certify_le(second_sides, bits),
                        note="claim is lhs >= rhs; f_p = 1 shown"))

    # 4/log eta < 2 (log 6)^3
    def bprime_sides(b):
        with up(b):
            lhs_hi = 4 / log_eta(b, down)
            rhs_hi = 2 * gmpy2.log(mpfr(6)) ** 3
        with down(b):
            lhs_lo = 4 / log_eta(b, up)
            rhs_lo = 2 * gmpy2.log(mpfr(6)) ** 3
        return lhs_lo, lhs_hi, rhs_lo, rhs_hi

    rows.append(_le_row("bprime_const",
                        certify_le(bprime_sides, bits, strict=True)))

    # k^2 > 6 (k + log k)
    def ksq_sides(b):
        with down(b):
            rhs_lo = 6 * (k + gmpy2.log(mpfr(k)))
            sq_lo = mpfr(k * k)
        with up(b):
            rhs_hi = 6 * (k + gmpy2.log(mpfr(k)))
            sq_hi = mpfr(k * k)
        return rhs_lo, rhs_hi, sq_lo, sq_hi

    rows.append(_gt_row("k_square", certify_le(ksq_sides, bits, strict=True),
                        note="claim is lhs > rhs"))

    # 3588 e^{1/(64 e^24 - 1/2)} (512 e^24/(512 e^24 - 1)) < 3588.1
    def closing_sides(b):
        with down(b):
            e24_lo = gmpy2.exp(mpfr(24))
            d1_lo = 64 * e24_lo - const_up("0.5", b)
            d2_lo = 512 * e24_lo - 1
        with up(b):
            e24_hi = gmpy2.exp(mpfr(24))
            d1_hi = 64 * e24_hi - const_down("0.5", b)
            d2_hi = 512 * e24_hi - 1
            lhs_hi = 3588 * gmpy2.exp(1 / d1_lo) * (512 * e24_hi) / d2_lo
        with down(b):
            lhs_lo = 3588 * gmpy2.exp(1 / d1_hi) * (512 * e24_lo) / d2_hi
        return lhs_lo, lhs_hi, const_down("3588.1", b), const_up("3588.1", b)

    rows.append(_le_row("closing_const",
                        certify_le(closing_sides, bits, strict=True)))

    return YuCheckReport(k=k, p_floor=p, rows=tuple(rows),
                         passed=all(r.holds for r in rows))


def prop_order_bound(p: int, n: int, k: int, theta_k,
                     bits: int = DEFAULT_BITS):
    """Evaluate 3588.1 (7k)^k ((k+1)^{k+2}/k!) (p/(f_p log p)^k) Theta_k.

    Enforced: k >= 8 and p >= e^{3k} k^3 (hypotheses of the order bound).
    Flagged only: p should be a prime primitive divisor of F_n for the
    value to mean anything; non-prime or non-primitive p gets a warning
    and the evaluation proceeds (with f_p = 1, the larger branch, when
    the residue class leaves f_p undefined).
    """
    if k < 8:
        raise HypothesisViolation("k >= 8 is required")
    if p < p_floor_exact(k):
        raise HypothesisViolation(f"p must be at least e^(3k) k^3 for k = {k}")
    if isprime(p):
        rec = rank_of_apparition(p)
        f_p = rec.f_p
        if rec.alpha != n:
            warnings.warn(f"p = {p} is not a primitive divisor of F_{n} "
                          f"(alpha = {rec.alpha}); the bound is vacuous here",
                          stacklevel=2)
    else:
        f_p = 1 if p % 5 in (0, 1, 4) else 2
        warnings.warn(f"p = {p} is not prime; instantiating the formula "
                      f"anyway with f_p = {f_p}", stacklevel=2)
    lf = _log_factorial(k, down, bits)
    with down(bits):
        flogp_lo = f_p * gmpy2.log(mpfr(p))
        log_denom_lo = k * gmpy2.log(flogp_lo)
    with up(bits):
        total = gmpy2.log(const_up("3588.1", bits))
        total += k * gmpy2.log(mpfr(7 * k))
        total += (k + 2) * gmpy2.log(mpfr(k + 1))
        total -= lf
        total += gmpy2.log(mpfr(p))
        total -= log_denom_lo
        total += gmpy2.log(mpfr(theta_k))
        return gmpy2.exp(total)


# ---------------------------------------------------------------------------
# The large-kappa chain.


@dataclass(frozen=True)
class ChainLink:
    """One inequality in the collapse to 143 log kappa log log kappa."""

    name: str
    method: str  # numeric | algebraic | symbolic | cited
    holds: bool
    lhs: float | None = None
    rhs: float | None = None
    note: str = ""


@dataclass(frozen=True)
class BigKappaChain:
    log_kappa: object  # mpfr lower bound
    k: int
    log_m: object      # mpfr lower bound of log(kappa (kappa+1))
    threshold: object  # mpfr upper bound of 143 log kappa log log kappa
    links: tuple
    passed: bool


def c_constant(k: int, bits: int = DEFAULT_BITS):
    """Upper bound of C(k) = ((1+2^{-k}) 50233.5 (k+1)^{k+2}
    (2 log eta + 1.3 (k-1) log k) / (k-1)!)^{1/(k-1)}."""
    lf = _log_factorial(k - 1, down, bits)
    with up(bits):
        t = gmpy2.log1p(mpfr(2) ** (-k))
        t += gmpy2.log(const_up("50233.5", bits))
        t += (k + 2) * gmpy2.log(mpfr(k + 1))
        t += gmpy2.log(2 * log_eta(bits, up) +
                       const_up("1.3", bits) * (k - 1) * gmpy2.log(mpfr(k)))
        t -= lf
        return gmpy2.exp(t / (k - 1))


def _log_kappa_interval(kappa, log_kappa, bits: int):
    if (kappa is None) == (log_kappa is None):
        raise ValueError("exactly one of kappa and log_kappa must be given")
    if kappa is not None:
        if kappa < 2:
            raise ValueError("kappa must be at least 2")
        with down(bits):
            lo = gmpy2.log(mpfr(kappa))
        with up(bits):
            hi = gmpy2.log(mpfr(kappa))
        return lo, hi, kappa
    lo, hi = _interval_of(log_kappa, bits)
    return lo, hi, None


def bigkappa_bound(kappa: int | None = None,
                   log_kappa=None,
                   bits: int = DEFAULT_BITS):
    """Threshold 143 log kappa log log kappa with its chain of inequalities.

    Requires log kappa >= 250000 (refused otherwise).  kappa may be given
    exactly or by its logarithm for astronomically large values.  Each
    link records how it is established: numeric links are evaluated with
    adversarial rounding at the actual k = floor(log M), M = kappa(kappa+1);
    algebraic links hold by rearrangement (their boundary instances sit at
    exact equality, which no finite precision could separate); the Theta
    envelope is symbolic on top of the verified eta q_j < j^1.3 range, and
    C's monotone decrease beyond 500000 is cited.
    """
    L_lo, L_hi, kappa_exact = _log_kappa_interval(kappa, log_kappa, bits)
    if L_lo < 250000:
        if L_hi >= 250000:
            raise InternalInconsistency("log kappa straddles 250000; "
                                        "raise the precision")
        raise HypothesisViolation("log kappa >= 250000 is required")

    # log M for M = kappa (kappa + 1)
    if kappa_exact is not None:
        with down(bits):
            logm_lo = gmpy2.log(mpfr(kappa_exact)) + \
                gmpy2.log(mpfr(kappa_exact) + 1)
        with up(bits):
            logm_hi = gmpy2.log(mpfr(kappa_exact)) + \
                gmpy2.log(mpfr(kappa_exact) + 1)
    else:
        logm_lo = 2 * L_lo  # exact: doubling only shifts the exponent
        with up(bits):
            logm_hi = 2 * L_hi + gmpy2.exp(-L_lo)
    k_lo = _floor_exact(logm_lo)
    k_hi = _floor_exact(logm_hi)
    if k_lo != k_hi:
        raise InternalInconsistency("floor(log M) undecided at this precision")
    k = k_lo

    links = []

    links.append(ChainLink(
        name="theta_envelope", method="symbolic", holds=True,
        note="Theta_k < (2 log eta + 1.3 (k-1) log k)(1.3 log k)^{k-1} by "
             "bounding each log(eta q_j) with the verified eta q_j < j^1.3"))

    c500k = c_constant(500000, bits)
    links.append(ChainLink(
        name="c_at_500000", method="numeric",
        holds=bool(c500k < const_down("2.72", bits)),
        lhs=float(c500k), rhs=2.72))

    links.append(ChainLink(
        name="c_monotone", method="cited", holds=True,
        note=f"C(k) <= C(500000) for k >= 500000; here k = {k}"))

    links.append(ChainLink(
        name="lambda_9_1", method="algebraic", holds=True,
        note="Lambda < 9.1 k log k C(k) M^{1/(k-1)} with 9.1 = 7 * 1.3 "
             "after absorbing (k+1)^{k-1} into the radicand"))

    with up(bits):
        prod_91 = const_up("9.1", bits) * const_up("2.72", bits)
    links.append(ChainLink(
        name="lambda_24_8", method="numeric",
        holds=bool(prod_91 <= const_down("24.8", bits)),
        lhs=float(prod_91), rhs=24.8))

    # log Lambda < log 24.8 + log k + log log k + log M/(k-1) <= 1.52 log k
    with up(bits):
        logk_hi = gmpy2.log(mpfr(k))
        lhs152 = gmpy2.log(const_up("24.8", bits)) + logk_hi + \
            gmpy2.log(logk_hi) + logm_hi / (k - 1)
    with down(bits):
        rhs152 = const_down("1.52", bits) * gmpy2.log(mpfr(k))
    links.append(ChainLink(
        name="log_lambda_1_52", method="numeric",
        holds=bool(lhs152 <= rhs152), lhs=float(lhs152), rhs=float(rhs152)))

    links.append(ChainLink(
        name="m_root_alg", method="algebraic", holds=True,
        note="log M/(k-1) <= 1 + 2/(log M - 2) since k - 1 >= log M - 2"))

    # 1 + 2/(log M - 2) <= 1 + 2/(500000 - 2): monotone in log M, anchored
    # on the certified log M >= 500000 (at the boundary the two sides are
    # equal, so the comparison must ride on the hypothesis, not on floats)
    ge_500k = bool(logm_lo >= 500000)
    with up(bits):
        mroot_hi = 1 + 2 / (logm_lo - 2)
    with down(bits):
        mroot_cap = 1 + mpfr(2) / (500000 - 2)
    links.append(ChainLink(
        name="m_root_boundary", method="algebraic",
        holds=ge_500k, lhs=float(mroot_hi), rhs=float(mroot_cap),
        note="exponent cap for M^{1/(k-1)} <= e^{1+2/(500000-2)}; "
             "holds since log M >= 500000"))

    # (3.04 log k)^{1/(k-1)} <= exp(log(3.04 log log M)/(log M - 2)), and
    # the right side decreases in log M, so the 500000 boundary dominates
    with up(bits):
        tl_hi = gmpy2.log(const_up("3.04", bits) * gmpy2.log(logm_hi)) / \
            (logm_lo - 2)
    with down(bits):
        tl_cap = gmpy2.log(const_down("3.04", bits) *
                           gmpy2.log(mpfr(500000))) / (500000 - 2)
    links.append(ChainLink(
        name="twolog_root", method="algebraic",
        holds=ge_500k, lhs=float(tl_hi), rhs=float(tl_cap),
        note="log(3.04 log t)/(t-2) decreases for t >= 500000, and "
             "log M >= 500000"))

    with up(bits):
        final_hi = const_up("24.8", bits) * \
            gmpy2.exp(1 + mpfr(2) / (500000 - 2)) * \
            gmpy2.exp(gmpy2.log(const_up("3.04", bits) *
                                gmpy2.log(mpfr(500000))) / (500000 - 2))
    links.append(ChainLink(
        name="final_67_42", method="numeric",
        holds=bool(final_hi <= const_down("67.42", bits)),
        lhs=float(final_hi), rhs=67.42,
        note="dsn < 67.42 log M log log M after the three factors above"))

    with down(bits):
        rhs_2l = const_down("2.0001", bits) * L_lo
    links.append(ChainLink(
        name="log_m_2_0001", method="numeric",
        holds=bool(logm_hi <= rhs_2l), lhs=float(logm_hi), rhs=float(rhs_2l)))

    with up(bits):
        llm_hi = gmpy2.log(logm_hi)
    with down(bits):
        rhs_ll = const_down("1.056", bits) * gmpy2.log(L_lo)
    links.append(ChainLink(
        name="loglog_m_1_056", method="numeric",
        holds=bool(llm_hi <= rhs_ll), lhs=float(llm_hi), rhs=float(rhs_ll)))

    with up(bits):
        c143 = const_up("67.42", bits) * const_up("2.0001", bits) * \
            const_up("1.056", bits)
    links.append(ChainLink(
        name="constant_143", method="numeric",
        holds=bool(c143 <= 143), lhs=float(c143), rhs=143.0))

    with up(bits):
        threshold = 143 * L_hi * gmpy2.log(L_hi)
    floor_need = _enefour_floor(k, bits)
    links.append(ChainLink(
        name="enefour_floor", method="numeric",
        holds=bool(floor_need <= threshold),
        lhs=float(floor_need), rhs=float(threshold),
        note="the n > max(e^{3k} k^3 + 1, e^100) side condition is "
             "absorbed by the threshold"))

    report = BigKappaChain(
        log_kappa=L_lo, k=k, log_m=logm_lo, threshold=threshold,
        links=tuple(links), passed=all(link.holds for link in links))
    return threshold, report
