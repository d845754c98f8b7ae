from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import divisors

from stewart_bounds.cyclotomic import (
    CyclotomicValue,
    esum_identity_check,
    phi_eval_exact,
    schinzel_check,
    schwarz_bound_check,
)
from stewart_bounds.fiboracle import fib_pair
from stewart_bounds.quadfield import GAMMA, ONE, QuadInt


# ---------------------------------------------------------------------------
# Exact values.


def test_phi_known_values():
    v1 = phi_eval_exact(1)
    assert v1.value == QuadInt(-2, -1)  # gamma - 1
    assert v1.norm == 5
    v2 = phi_eval_exact(2)
    assert v2.value == QuadInt(0, -1)
    assert v2.norm == -1
    assert v2.is_unit
    v7 = phi_eval_exact(7)
    assert v7.norm == 169  # 13^2: the primitive divisor 13 of F_7, squared
    v12 = phi_eval_exact(12)
    assert v12.value == QuadInt(12, 18)
    assert v12.norm == 36
    assert not v12.is_unit


def test_phi_cutoff():
    with pytest.raises(ValueError):
        phi_eval_exact(0)
    with pytest.raises(ValueError):
        phi_eval_exact(500)
    assert phi_eval_exact(500, exact_cutoff=500).n == 500


@given(st.integers(min_value=1, max_value=200))
@settings(max_examples=60)
def test_phi_product_reassembles_power(n):
    # prod_{d | n} Phi_d(gamma) = gamma^n - 1 exactly
    prod = ONE
    for d in divisors(n):
        prod = prod * phi_eval_exact(d).value
    assert prod == GAMMA ** n - ONE


def test_norm_tracks_fibonacci_squares():
    # |N(gamma^n - 1)| = 5 F_n^2 for 1 <= n <= 200
    for n in range(1, 201):
        val = GAMMA ** n - ONE
        assert abs(val.norm()) == 5 * fib_pair(n)[0] ** 2, n


# ---------------------------------------------------------------------------
# Near-unit estimate (log|norm| against 2 phi(n) log eta).


def test_esum_delta_small_everywhere():
    for n in range(1, 201):
        r = esum_identity_check(n)
        assert float(r.delta) <= 0.48, n
        # the identity is exact: delta only reflects interval width
        assert float(r.delta) < 1e-30, n


def test_esum_tail_flag():
    # n = 2: the tail term 2|log|Phi_2(gamma^{-1})|| = 2 log etaexceeds
    # its nominal cap, and the flag says so
    r2 = esum_identity_check(2)
    assert not r2.o1_ok
    assert abs(float(r2.o1_value) - 0.9624236501192069) < 1e-12
    # large n: the tail genuinely decays
    r100 = esum_identity_check(100)
    assert r100.o1_ok
    assert float(r100.o1_value) < 0.1


# ---------------------------------------------------------------------------
# Valuation comparison at non-primitive primes.


def test_schinzel_examples():
    r12 = schinzel_check(12)
    assert r12.passed is True
    got = {(row.p, row.kind, row.nu_ideal, row.nu_allowed)
           for row in r12.rows}
    assert got == {(2, "inert", 1, 2), (3, "inert", 1, 1)}

    r5 = schinzel_check(5)
    rows5 = {(row.p, row.kind, row.nu_ideal, row.nu_allowed)
             for row in r5.rows}
    assert rows5 == {(5, "ramified", 2, 2)}

    r25 = schinzel_check(25)
    rows25 = {(row.p, row.nu_ideal, row.nu_allowed) for row in r25.rows}
    assert rows25 == {(5, 2, 4)}


def test_schinzel_boundary_cases():
    r6 = schinzel_check(6)
    assert r6.excluded
    assert r6.passed is None

    r1 = schinzel_check(1)
    assert r1.out_of_regime
    assert r1.passed is None
    # Phi_1(gamma) = gamma - 1 has norm 5: ramified and outside the rule
    assert any(row.p == 5 and row.kind == "ramified" for row in r1.rows)


def test_schinzel_full_sweep():
    for n in range(1, 201):
        r = schinzel_check(n)
        if n == 6:
            assert r.excluded and r.passed is None
        elif n == 1:
            assert r.passed is None
        else:
            assert r.passed is True, n


# ---------------------------------------------------------------------------
# Schwarz-style tail bound.


def test_schwarz_profile_honest():
    # computed profile of the tail |log Phi_n(gamma^{-1})| * n:
    # the stated cap 0.24 is wrong (the map peaks at n = 2 with value
    # log eta = 0.4812...), while the series-derived cap
    # |log(1 - r)|/r at r = 1/|gamma| does hold
    r = schwarz_bound_check(500)
    assert r.max_n == 2
    assert abs(float(r.max_value) - 0.48121182505960347) < 1e-15
    assert abs(float(r.claimed_constant) - 0.23409195922612248) < 1e-12
    assert abs(float(r.corrected_constant) - 0.7786170887348068) < 1e-12
    assert abs(float(r.n1_value) - 0.3235071311574467) < 1e-12
    assert r.first_failures[:5] == (2, 3, 5, 6, 7)
    assert not r.passed_claimed
    assert r.passed_corrected


def test_schwarz_claimed_cap_on_sweep():
    """Sweep max over 2 <= n <= 10^4 is claimed strictly below 0.24.

    Faithful transcription of the stated invariant.  It is FALSE: the
    sweep max is log eta = 0.4812... attained at n = 2, and 6082 of the
    9999 indices exceed 0.24.  The corrected constant (0.7786...,
    from summing |log(1 - gamma^{-n})| <= |log(1-r)| r^{n-1}/r at
    r = 1/|gamma|) does bound the sweep; see the decision ledger.
    """
    r = schwarz_bound_check(10 ** 4)
    assert r.failing_count == 6082
    assert r.passed_corrected
    assert r.passed_claimed, (
        f"max value {float(r.max_value):.6f} at n = {r.max_n}; "
        f"{r.failing_count} indices exceed the claimed 0.24")
