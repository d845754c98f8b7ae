"""Acceptance gate: the nine binding criteria, one test per criterion.

Each test computes its criterion at the stated tolerance, records the
verdict (the terminal summary prints one CRITERION n: PASS/FAIL line per
criterion), and asserts it together with the stated runtime budget.

Two criteria fail by design and are left failing: the constant battery
sweep (criterion 6) loses its residual-degree-1 display at every k, and
the oscillation-sweep clause of criterion 8 is capped near 0.48, not
0.24.  The decision ledger carries the analysis; nothing is patched to
go green.
"""

from __future__ import annotations

import time

import pytest

from stewart_bounds import (
    GAMMA,
    ONE,
    RamifiedPrime,
    bigkappa_bound,
    c_constant,
    eliou_check,
    enumerate_split_primes,
    esum_identity_check,
    fib_pair,
    n0_optimize,
    nu_p_fib,
    primitive_divisors,
    schinzel_check,
    schwarz_bound_check,
    split_type,
    verify_qk_bound,
    yu_constants_check,
)

TABLE_1 = (7607, 8006, 8257, 8443, 8588, 8710, 8815, 8904, 8984, 9057)
TABLE_2_KAPPAS = (20, 30, 40, 50, 100, 1000, 10 ** 4, 10 ** 5, 10 ** 6)
TABLE_2 = (9544, 9831, 10036, 10196, 10701, 12405, 14121, 15841, 17575)

ACCEPTANCE_RESULTS: dict[int, bool] = {}


def record(n: int, ok: bool, elapsed: float, budget: float, detail: str):
    within = elapsed < budget
    ACCEPTANCE_RESULTS[n] = bool(ok and within)
    assert ok, f"criterion {n}: {detail}"
    assert within, (f"criterion {n}: exceeded runtime budget "
                    f"({elapsed:.1f} s >= {budget:.0f} s)")


@pytest.fixture(scope="module")
def table():
    return enumerate_split_primes(upper=1000)


def test_criterion_1_first_table(table):
    t0 = time.perf_counter()
    got = tuple(n0_optimize(kappa, table=table).n0
                for kappa in range(1, 11))
    record(1, got == TABLE_1, time.perf_counter() - t0, 5.0,
           f"expected {TABLE_1}, got {got}")


def test_criterion_2_second_table(table):
    t0 = time.perf_counter()
    got = tuple(n0_optimize(kappa, table=table).n0
                for kappa in TABLE_2_KAPPAS)
    record(2, got == TABLE_2, time.perf_counter() - t0, 60.0,
           f"expected {TABLE_2}, got {got}")


def test_criterion_3_anchor(table):
    t0 = time.perf_counter()
    r = n0_optimize(1, k_range=(22, 22), table=table)
    bound = float(r.log_n_bound)
    record(3, bound < 7606.3, time.perf_counter() - t0, 1.0,
           f"log-n bound at kappa = 1, k = 22 is {bound}, not < 7606.3")


def test_criterion_4_growth_slice():
    t0 = time.perf_counter()
    deep = verify_qk_bound(500000, 2 * 10 ** 6, "1.3")
    shallow = verify_qk_bound(2, 11, "1.3")
    ok = (deep.passed is True and shallow.passed is False
          and shallow.first_fail_k == 2)
    record(4, ok, time.perf_counter() - t0, 30.0,
           f"deep slice passed = {deep.passed}, small-k check passed = "
           f"{shallow.passed} (first fail k = {shallow.first_fail_k})")


def test_criterion_5_constant_chain():
    t0 = time.perf_counter()
    c = float(c_constant(500000))
    _, rep = bigkappa_bound(log_kappa=250000)
    bad_links = [link.name for link in rep.links if not link.holds]
    ok = c < 2.72 and rep.passed and not bad_links
    record(5, ok, time.perf_counter() - t0, 5.0,
           f"C(500000) = {c}; failing links: {bad_links}")


def test_criterion_6_constant_battery_sweep():
    # FAILS BY DESIGN: the f_p log p > k' + log k' display loses at
    # residual degree 1 for every k in the range; see the decision ledger
    t0 = time.perf_counter()
    failing = {}
    for k in range(8, 1001):
        rep = yu_constants_check(k)
        if not rep.passed:
            failing[k] = [r.name for r in rep.rows if not r.holds]
    names = sorted({n for v in failing.values() for n in v})
    record(6, not failing, time.perf_counter() - t0, 10.0,
           f"{len(failing)} of 993 k values fail the battery "
           f"(failing rows: {names})")


def test_criterion_7_primitive_divisor_properties():
    t0 = time.perf_counter()
    problems = []
    # Carmichael: a primitive divisor exists for 7 <= n <= 200, n != 12
    for n in range(7, 201):
        if n == 12:
            continue
        got = primitive_divisors(n)
        if not got.divisors:
            problems.append(f"no primitive divisor found for F_{n}")
            continue
        # sign rule: split p = +1, inert p = -1 (mod n); 5 is ramified
        # and carries no sign
        for p, _ in got.divisors:
            if p == 5:
                continue
            want = 1 if split_type(p) == 1 else n - 1
            if p % n != want:
                problems.append(f"p = {p} violates the sign rule at n = {n}")
    # valuation oracle against direct exact division
    primes = [p for p in range(2, 1001) if _is_prime(p)]
    fibs = _fib_list(2000)
    for n in range(1, 2001):
        fn = fibs[n]
        for p in primes:
            if p == 5:
                direct = _valuation(fn, 5)
                try:
                    nu_p_fib(5, n)
                    problems.append("nu accepted the ramified prime")
                except RamifiedPrime:
                    # 5 is handled by its own exact rule elsewhere; the
                    # direct valuation is nu_5(F_n) = nu_5(n)
                    if direct != _valuation(n, 5):
                        problems.append(f"ramified valuation off at n = {n}")
                continue
            if nu_p_fib(p, n) != _valuation(fn, p):
                problems.append(f"nu_{p}(F_{n}) mismatch")
    record(7, not problems, time.perf_counter() - t0, 60.0,
           "; ".join(problems[:5]))


def test_criterion_8_estimate_suite():
    # the oscillation-sweep clause FAILS BY DESIGN: the sweep maximum over
    # 2 <= n <= 10^4 is ~0.4812 (attained already at n = 2), far above the
    # stated 0.24; all other clauses hold.  See the decision ledger.
    t0 = time.perf_counter()
    problems = []
    for n in range(1, 201):
        if not esum_identity_check(n).passed:
            problems.append(f"esum identity fails at n = {n}")
        value = GAMMA ** n - ONE
        fn = fib_pair(n)[0]
        if abs(value.norm()) != 5 * fn * fn:
            problems.append(f"norm identity fails at n = {n}")
        if n != 6 and schinzel_check(n).passed is False:
            problems.append(f"valuation comparison fails at n = {n}")
        if 7 <= n and n != 12 and not eliou_check(n).passed:
            problems.append(f"primitive-part size check fails at n = {n}")
    sweep = schwarz_bound_check(10 ** 4)
    if not sweep.passed_claimed:
        problems.append(
            f"oscillation sweep max is {float(sweep.max_value):.6f} at "
            f"n = {sweep.max_n} with {sweep.failing_count} indices over "
            f"0.24 (the corrected envelope "
            f"{float(sweep.corrected_constant):.6f} does hold)")
    record(8, not problems, time.perf_counter() - t0, 120.0,
           "; ".join(problems[:5]))


def test_criterion_9_precision_stability(table):
    t0 = time.perf_counter()
    mismatches = []
    for kappa in range(1, 11):
        a = n0_optimize(kappa, table=table, bits=128).n0
        b = n0_optimize(kappa, table=table, bits=256).n0
        if a != b:
            mismatches.append((kappa, a, b))
    anchor_256 = n0_optimize(1, k_range=(22, 22), table=table, bits=256)
    if not float(anchor_256.log_n_bound) < 7606.3:
        mismatches.append(("anchor", float(anchor_256.log_n_bound)))
    record(9, not mismatches, time.perf_counter() - t0, 10.0,
           f"256-bit rerun moved: {mismatches}")


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


def _fib_list(n_max: int) -> list:
    fibs = [0, 1]
    for _ in range(n_max - 1):
        fibs.append(fibs[-1] + fibs[-2])
    return fibs


def _valuation(m: int, p: int) -> int:
    if m == 0:
        return 0
    e = 0
    while m % p == 0:
        m //= p
        e += 1
    return e
