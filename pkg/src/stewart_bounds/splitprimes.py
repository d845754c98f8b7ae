"""Primes split in Q(sqrt 5) and the eta*q_k < k^a verification.

A rational prime p splits exactly when p = +-1 (mod 5); the split primes in
ascending order are indexed q_2 = 11, q_3 = 19, q_4 = 29, q_5 = 31, and so
on, the subscript starting at 2 because q_2 pairs with the second generator
theta_2.  The quantitative input needed downstream is that eta * q_k stays
below k^1.3 once k is large (k >= 500000 suffices, and the computational
range tops out at k = 80802434, q_k = 3375517771).  verify_qk_bound checks
that inequality over any index window with certified directed rounding: a
float64 prefilter disposes of the easy comparisons and anything within its
error margin is re-decided in MPFR with eta rounded up and k^a rounded down.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from typing import Iterator

import gmpy2
import numpy as np
from sympy import primerange

from .errors import InsufficientPrimes, InternalInconsistency
from .rounding import const_down, const_up, down, eta, up

DEFAULT_SEGMENT_ODDS = 1 << 20
DEFAULT_MEMORY_CAP = 256 * 1024 * 1024
# conservative per-entry cost of a Python int inside a tuple
_ENTRY_BYTES = 32


@dataclass(frozen=True)
class SplitPrimeTable:
    """Ascending split primes with q_k = primes[k - start_index]."""

    primes: tuple
    start_index: int = 2

    def q(self, k: int) -> int:
        i = k - self.start_index
        if i < 0 or i >= len(self.primes):
            raise InsufficientPrimes(
                f"table holds q_{self.start_index}..q_{self.last_index}, "
                f"q_{k} requested")
        return self.primes[i]

    @property
    def last_index(self) -> int:
        return self.start_index + len(self.primes) - 1

    def __len__(self) -> int:
        return len(self.primes)


def _segments(lo: int, hi: int, segment_odds: int) -> Iterator[np.ndarray]:
    """Odd primes in [lo, hi) as int64 arrays, one per sieve segment."""
    if hi <= lo:
        return
    base = list(primerange(3, math.isqrt(hi) + 1))
    lo = max(lo, 3)
    if lo % 2 == 0:
        lo += 1
    seg_lo = lo
    while seg_lo < hi:
        seg_hi = min(seg_lo + 2 * segment_odds, hi)
        n_odds = (seg_hi - seg_lo + 1) // 2
        flags = np.ones(n_odds, dtype=bool)
        for p in base:
            start = p * p
            if start >= seg_hi:
                break
            if start < seg_lo:
                start = ((seg_lo + p - 1) // p) * p
                if start % 2 == 0:
                    start += p
            if start < seg_hi:
                flags[(start - seg_lo) // 2::p] = False
        yield seg_lo + 2 * np.nonzero(flags)[0].astype(np.int64)
        seg_lo = seg_hi


def split_prime_stream(upper: int,
                       segment_odds: int = DEFAULT_SEGMENT_ODDS,
                       lower: int = 3) -> Iterator[np.ndarray]:
    """Split primes in [lower, upper] as ascending int64 arrays.

    2 is even and 5 ramifies, so streaming odd primes and keeping residues
    1 and 4 mod 5 loses nothing.
    """
    for primes in _segments(lower, upper + 1, segment_odds):
        r = primes % 5
        yield primes[(r == 1) | (r == 4)]


def enumerate_split_primes(upper: int | None = None,
                           count: int | None = None,
                           segment_odds: int = DEFAULT_SEGMENT_ODDS,
                           memory_cap: int = DEFAULT_MEMORY_CAP) -> SplitPrimeTable:
    """All split primes <= upper, or the first `count` of them, as a table."""
    if (upper is None) == (count is None):
        raise ValueError("exactly one of upper and count must be given")
    if upper is not None and upper < 11:
        raise ValueError("upper must be at least 11 = q_2")
    if count is not None and count < 1:
        raise ValueError("count must be at least 1")

    if upper is not None:
        targets = [upper]
    else:
        # split primes thin out like half of all primes: q_k is near p_{2k}
        m = 2 * count + 10
        guess = int(1.2 * m * (math.log(m) + math.log(math.log(m)))) + 40
        targets = []
        while len(targets) < 8:
            targets.append(guess)
            guess = int(guess * 1.3) + 64

    collected: list = []
    total = 0
    lower = 3
    for target in targets:
        for chunk in split_prime_stream(target, segment_odds, lower=lower):
            total += len(chunk)
            if total * _ENTRY_BYTES > memory_cap:
                raise MemoryError(
                    f"split-prime table would exceed {memory_cap} bytes; "
                    "use verify_qk_bound's streaming mode instead")
            collected.append(chunk)
            if count is not None and total >= count:
                break
        if count is None or total >= count:
            break
        lower = target + 1
    if count is not None and total < count:
        raise InternalInconsistency("prime estimate failed to reach count")

    flat = np.concatenate(collected) if collected else np.empty(0, np.int64)
    if count is not None:
        flat = flat[:count]
    return SplitPrimeTable(tuple(int(p) for p in flat))


@dataclass(frozen=True)
class QkVerification:
    """Outcome of checking eta * q_k < k^exponent over an index window."""

    k_from: int
    k_to: int
    exponent: str
    passed: bool
    first_fail_k: int | None
    first_fail_q: int | None
    checked: int
    last_k: int | None
    last_q: int | None
    max_ratio: float
    escalations: int


def _pow_down(k: int, exponent: str, bits: int):
    # k >= 2 and exponent > 1, so every factor is positive and the
    # down-rounded log/mul/exp chain is a true lower bound.
    with down(bits):
        return gmpy2.exp(const_down(exponent, bits) * gmpy2.log(gmpy2.mpfr(k)))


def _pow_up(k: int, exponent: str, bits: int):
    with up(bits):
        return gmpy2.exp(const_up(exponent, bits) * gmpy2.log(gmpy2.mpfr(k)))


def _certify_single(q: int, k: int, exponent: str, bits: int = 128) -> bool:
    """Directed decision of eta*q < k^exponent; True means the bound holds."""
    b = bits
    while b <= (1 << 12):
        with up(b):
            lhs_hi = eta(b, up) * q
        if lhs_hi < _pow_down(k, exponent, b):
            return True
        with down(b):
            lhs_lo = eta(b, down) * q
        if lhs_lo >= _pow_up(k, exponent, b):
            return False
        b *= 2
    raise InternalInconsistency(f"eta*q_{k} vs {k}^{exponent} undecidable")


def _estimate_q(k: int) -> int:
    """Rough overestimate of q_k for sizing the sieve range."""
    m = max(2 * k + 10, 16)
    return int(1.1 * m * (math.log(m) + math.log(math.log(m)))) + 64


def verify_qk_bound(k_from: int,
                    k_to: int,
                    exponent,
                    segment_odds: int = DEFAULT_SEGMENT_ODDS,
                    checkpoint_path: str | None = None,
                    checkpoint_every: int = 64) -> QkVerification:
    """Check eta * q_k < k^exponent for every k in [k_from, k_to].

    Streams the sieve (no full table in memory), prefilters each segment in
    float64 with a 1e-9 relative guard band, and re-decides anything inside
    the band in directed MPFR.  The first failing k is the minimum over the
    whole window; the scan stops once it is known.
    """
    if k_from < 2:
        raise ValueError("k_from must be at least 2 (q_2 = 11 is the first)")
    if k_to < k_from:
        raise ValueError("empty index window")
    exp_str = exponent if isinstance(exponent, str) else repr(float(exponent))
    if float(exp_str) <= 1:
        raise ValueError("exponent must exceed 1")

    # the 1e-9 guard band below dwarfs both float64 roundoff (~1e-15 per op)
    # and this constant's half-ulp defect, so the prefilter stays safe
    eta_f64 = (1.0 + math.sqrt(5.0)) / 2.0
    exp_f64 = float(exp_str)

    state = None
    if checkpoint_path and os.path.exists(checkpoint_path):
        with open(checkpoint_path, "r", encoding="ascii") as fh:
            saved = json.load(fh)
        if (saved.get("k_from"), saved.get("k_to"), saved.get("exponent")) == \
                (k_from, k_to, exp_str):
            state = saved

    if state is None:
        state = {"k_from": k_from, "k_to": k_to, "exponent": exp_str,
                 "lower": 3, "k_count": 1, "checked": 0, "max_ratio": 0.0,
                 "escalations": 0, "last_k": None, "last_q": None}

    lower = state["lower"]
    k_count = state["k_count"]  # index that the NEXT split prime will get
    checked = state["checked"]
    max_ratio = state["max_ratio"]
    escalations = state["escalations"]
    last_k = state["last_k"]
    last_q = state["last_q"]
    first_fail_k = None
    first_fail_q = None

    upper = _estimate_q(k_to)
    segments_done = 0
    done = False
    while not done:
        for chunk in split_prime_stream(upper, segment_odds, lower=lower):
            lower = int(chunk[-1]) + 1 if len(chunk) else lower
            if len(chunk) == 0:
                continue
            ks = k_count + 1 + np.arange(len(chunk), dtype=np.int64)
            k_count += len(chunk)
            mask = (ks >= k_from) & (ks <= k_to)
            if mask.any():
                qs = chunk[mask]
                kw = ks[mask]
                ratio = (eta_f64 * qs.astype(np.float64)) / \
                    np.power(kw.astype(np.float64), exp_f64)
                seg_max = float(ratio.max())
                if seg_max > max_ratio:
                    max_ratio = seg_max
                checked += int(len(qs))
                last_k = int(kw[-1])
                last_q = int(qs[-1])
                suspect = ratio >= 1.0 - 1e-9
                if suspect.any():
                    for q, k in zip(qs[suspect], kw[suspect]):
                        escalations += 1
                        if not _certify_single(int(q), int(k), exp_str):
                            first_fail_k = int(k)
                            first_fail_q = int(q)
                            break
                if first_fail_k is not None or \
                        (last_k is not None and last_k >= k_to):
                    done = True
                    break
            elif ks[0] > k_to:
                done = True
                break
            segments_done += 1
            if checkpoint_path and segments_done % checkpoint_every == 0:
                tmp = checkpoint_path + ".tmp"
                with open(tmp, "w", encoding="ascii") as fh:
                    json.dump({"k_from": k_from, "k_to": k_to,
                               "exponent": exp_str, "lower": lower,
                               "k_count": k_count, "checked": checked,
                               "max_ratio": max_ratio,
                               "escalations": escalations,
                               "last_k": last_k, "last_q": last_q}, fh)
                os.replace(tmp, checkpoint_path)
        if not done:
            if k_count >= k_to:
                done = True
            else:
                lower = upper + 1
                upper = int(upper * 1.15) + 64

    if last_k is None or (first_fail_k is None and last_k < k_to):
        raise InternalInconsistency("sieve range never reached k_to")
    if checkpoint_path and os.path.exists(checkpoint_path):
        os.remove(checkpoint_path)
    return QkVerification(
        k_from=k_from, k_to=k_to, exponent=exp_str,
        passed=first_fail_k is None,
        first_fail_k=first_fail_k, first_fail_q=first_fail_q,
        checked=checked, last_k=last_k, last_q=last_q,
        max_ratio=max_ratio, escalations=escalations)


CACHE_MAGIC = "SPLITPRIMES v1"


def write_cache(table: SplitPrimeTable, path: str, upper: int) -> None:
    """Persist a table as a versioned newline-delimited decimal file."""
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="ascii") as fh:
        fh.write(f"{CACHE_MAGIC} {upper}\n")
        for p in table.primes:
            fh.write(f"{p}\n")
    os.replace(tmp, path)


def read_cache(path: str,
               segment_odds: int = DEFAULT_SEGMENT_ODDS) -> SplitPrimeTable:
    """Load a cached table, revalidating its final sieve segment."""
    with open(path, "r", encoding="ascii") as fh:
        header = fh.readline().strip()
        parts = header.rsplit(" ", 1)
        if parts[0] != CACHE_MAGIC or not parts[1].isdigit():
            raise InternalInconsistency(f"bad cache header {header!r}")
        upper = int(parts[1])
        primes = tuple(int(line) for line in fh)
    window_lo = max(11, upper - 2 * segment_odds)
    recomputed = np.concatenate(
        list(split_prime_stream(upper, segment_odds, lower=window_lo)) or
        [np.empty(0, np.int64)])
    tail = [p for p in primes if p >= window_lo]
    if list(recomputed) != tail:
        raise InternalInconsistency(f"cache {path} failed final-segment check")
    return SplitPrimeTable(primes)
