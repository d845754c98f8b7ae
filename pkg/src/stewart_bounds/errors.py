"""Exception types shared across the package."""

from __future__ import annotations


class StewartBoundsError(Exception):
    """Base class for all package-specific errors."""


class RamifiedPrime(StewartBoundsError):
    """p = 5 ramifies in Q(sqrt 5); operations on split/inert primes reject it."""


class NotPrime(StewartBoundsError):
    """A prime was required but a composite (or unit) was supplied."""


class NotSplit(StewartBoundsError):
    """A split prime (p = +-1 mod 5) was required."""


class ZeroElement(StewartBoundsError):
    """Heights and valuations of 0 are undefined."""


class InternalInconsistency(StewartBoundsError):
    """An invariant that must hold by construction failed; indicates a bug."""


class IncompleteFactorization(StewartBoundsError):
    """Neither the exact nor the budgeted route certified a complete factor set."""


class HypothesisViolation(StewartBoundsError):
    """Input falls outside the hypothesis range of the bound being evaluated."""


class InsufficientPrimes(StewartBoundsError):
    """The supplied split-prime table is too short for the requested index."""
