from __future__ import annotations

import gmpy2
import mpmath
import pytest
from gmpy2 import mpfr
from hypothesis import given
from hypothesis import strategies as st
from sympy import primerange

from stewart_bounds.errors import (
    NotPrime,
    NotSplit,
    RamifiedPrime,
    ZeroElement,
)
from stewart_bounds.quadfield import (
    ETA,
    GAMMA,
    ONE,
    SQRT5,
    QuadInt,
    QuadUnitFraction,
    embedding_interval,
    exact_div,
    height,
    prime_above,
    split_type,
    theta_generator,
    try_div,
)
from stewart_bounds.rounding import down, log_eta, up
from stewart_bounds.splitprimes import enumerate_split_primes

mpmath.mp.dps = 60
MP_ETA = (1 + mpmath.sqrt(5)) / 2

coeff = st.integers(min_value=-10 ** 9, max_value=10 ** 9)
quadints = st.builds(QuadInt, coeff, coeff)


# ---------------------------------------------------------------------------
# Ring structure.


@given(quadints, quadints, quadints)
def test_ring_axioms(x, y, z):
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x
    assert x + (-x) == QuadInt(0, 0)


@given(quadints, quadints)
def test_norm_and_conj_multiplicative(x, y):
    assert (x * y).norm() == x.norm() * y.norm()
    assert (x * y).conj() == x.conj() * y.conj()


@given(quadints)
def test_conj_involution_and_norm(x):
    assert x.conj().conj() == x
    assert (x * x.conj()) == QuadInt(x.norm(), 0)


def test_defining_relation():
    # eta^2 = eta + 1
    assert ETA * ETA == QuadInt(1, 1)
    assert ETA.norm() == -1
    assert GAMMA == -(ETA * ETA)
    assert SQRT5 == ETA + ETA - ONE
    assert SQRT5 * SQRT5 == QuadInt(5, 0)
    assert SQRT5.norm() == -5


@given(st.integers(min_value=1, max_value=40))
def test_gamma_norm_tracks_fibonacci(n):
    # |N(gamma^n - 1)| = 5 F_n^2
    from stewart_bounds.fiboracle import fib_pair

    val = GAMMA ** n - ONE
    assert abs(val.norm()) == 5 * fib_pair(n)[0] ** 2


@given(quadints, quadints)
def test_division_round_trip(x, y):
    if y.is_zero():
        return
    q = try_div(x * y, y)
    assert q == x
    assert exact_div(x * y, y) == x


def test_try_div_none_on_nondivisor():
    assert try_div(QuadInt(1, 0), QuadInt(2, 0)) is None
    assert try_div(QuadInt(3, 1), QuadInt(0, 2)) is None


def test_unit_detection():
    assert ETA.is_unit()
    assert (ETA ** 5).is_unit()
    assert GAMMA.is_unit()
    assert not SQRT5.is_unit()
    assert not QuadInt(2, 0).is_unit()


# ---------------------------------------------------------------------------
# Split primes and their ideal generators.


def test_split_type_classification():
    # residual degree: 1 when p splits, 2 when p is inert
    assert split_type(11) == 1
    assert split_type(19) == 1
    assert split_type(2) == 2
    assert split_type(3) == 2
    assert split_type(13) == 2
    with pytest.raises(RamifiedPrime):
        split_type(5)
    with pytest.raises(NotPrime):
        split_type(4)


def test_prime_above_small_table():
    assert prime_above(11) == QuadInt(3, 1)
    assert prime_above(19) == QuadInt(4, 1)
    assert prime_above(29) == QuadInt(5, 1)
    assert prime_above(31) == QuadInt(5, 2)


def test_prime_above_rejects_nonsplit():
    with pytest.raises(NotSplit):
        prime_above(2)
    with pytest.raises(NotSplit):
        prime_above(5)


def test_prime_above_norm_and_distinct_conjugate():
    # norm = +-q, and the two conjugate ideals differ: pi does not divide
    # its own conjugate
    for q in primerange(2, 10 ** 5):
        if q % 5 not in (1, 4):
            continue
        pi = prime_above(q)
        assert abs(pi.norm()) == q
        assert try_div(pi.conj(), pi) is None


# ---------------------------------------------------------------------------
# Normalized generators theta_k.


def _mp_embedding(theta, conjugate=False):
    """Independent mpmath evaluation of a QuadUnitFraction embedding."""
    e = (1 - MP_ETA) if conjugate else MP_ETA
    num = theta.numerator.a + theta.numerator.b * e
    den = theta.denominator.a + theta.denominator.b * e
    return num / den * e ** (2 * theta.unit_exponent)


def test_theta_generator_known_values():
    table = enumerate_split_primes(upper=100)
    known = {
        2: (-1, 0.7405361848863923, 1.3503729060226983),
        3: (-1, None, None),
        4: (0, None, None),
        5: (-1, None, None),
    }
    for k, (m, emb, emb_conj) in known.items():
        theta = theta_generator(k, table)
        assert theta.unit_exponent == m, k
        lo, hi = theta.embedding_interval(128)
        if emb is not None:
            assert abs(float(lo) - emb) < 1e-14
        clo, chi = theta.embedding_interval(128, conjugate=True)
        if emb_conj is not None:
            assert abs(float(clo) - emb_conj) < 1e-14
        # the two real embeddings of a norm-1 element multiply to 1
        ref = _mp_embedding(theta) * _mp_embedding(theta, conjugate=True)
        assert abs(float(ref) - 1) < 1e-55


def test_theta_generator_invariants_to_1e5():
    # exact norm 1, embeddings inside [1/eta, eta] with 1e-30 slack,
    # height at most (1/2) log(q_k eta)
    table = enumerate_split_primes(upper=10 ** 5)
    inv_eta = float(1 / MP_ETA)
    eta_f = float(MP_ETA)
    for k in range(2, table.last_index + 1):
        theta = theta_generator(k, table)
        assert theta.norm() == 1
        for conjugate in (False, True):
            lo, hi = theta.embedding_interval(128, conjugate=conjugate)
            assert float(hi) >= inv_eta - 1e-30
            assert float(lo) <= eta_f + 1e-30
        q = table.q(k)
        h = height(theta)
        cap = mpmath.log(q * MP_ETA) / 2
        assert float(h.value) <= float(cap) * (1 + 1e-25)


def test_theta_height_example():
    # h(theta_2) = (log 11 + log(larger embedding))/2, independently via
    # mpmath from the generator's own exact fields
    table = enumerate_split_primes(upper=100)
    theta = theta_generator(2, table)
    h = height(theta)
    e1 = _mp_embedding(theta)
    e2 = _mp_embedding(theta, conjugate=True)
    ref = (mpmath.log(11) + sum(mpmath.log(e) for e in (e1, e2) if e > 1)) / 2
    assert abs(float(h.value) - float(ref)) < 1e-25
    cap = float(mpmath.log(11 * MP_ETA) / 2)
    assert float(h.value) <= cap


# ---------------------------------------------------------------------------
# Heights.


def test_height_of_constants():
    # h(eta) = (1/2) log eta; h(gamma) = log eta; h(m) = log|m|
    le = float(mpmath.log(MP_ETA))
    assert abs(float(height(ETA).value) - le / 2) < 1e-30
    assert abs(float(height(GAMMA).value) - le) < 1e-30
    assert abs(float(height(QuadInt(2, 0)).value) - float(mpmath.log(2))) \
        < 1e-30
    assert float(height(ONE).value) == 0.0
    assert float(height(-ONE).value) == 0.0


def test_height_zero_rejected():
    with pytest.raises(ZeroElement):
        height(QuadInt(0, 0))


@given(quadints)
def test_height_floor(x):
    # every tested x outside {0, +-1} has height >= (1/2) log eta
    if x.is_zero() or x in (ONE, -ONE):
        return
    floor = log_eta(128, down) / 2
    with gmpy2.context(precision=128):
        assert height(x).value >= floor * (1 - mpfr(2) ** -100)


def test_embedding_interval_matches_mpmath():
    samples = [QuadInt(3, 1), QuadInt(-2, 7), QuadInt(10 ** 9, -10 ** 9),
               QuadInt(0, -1)]
    for x in samples:
        ref = x.a + x.b * MP_ETA
        ref_conj = x.a + x.b * (1 - MP_ETA)
        lo, hi = embedding_interval(x, 128)
        assert float(lo) <= float(ref) <= float(hi)
        clo, chi = embedding_interval(x, 128, conjugate=True)
        assert float(clo) <= float(ref_conj) <= float(chi)


def test_unit_fraction_validation():
    pi = prime_above(11)
    theta = QuadUnitFraction(numerator=pi, denominator=pi.conj(),
                             unit_exponent=-1)
    assert theta.norm() == 1
    with pytest.raises(ZeroElement):
        QuadUnitFraction(numerator=pi, denominator=QuadInt(0, 0),
                         unit_exponent=0)
