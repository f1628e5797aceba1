"""Finite abelian group invariants.

Groups are stored in canonical invariant-factor form: a divisibility chain
s_1 | s_2 | ... | s_r with every s_i >= 2 (the trivial group is the empty
chain).  Two value objects are equal exactly when the groups are isomorphic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod

from sympy import factorint, isprime


class InvalidFactor(ValueError):
    """A cyclic factor order was not a positive integer."""


class NotPrime(ValueError):
    """A parameter that must be prime was not."""


class ZeroValuation(ValueError):
    """p-adic valuation requested for 0 (it would be infinite)."""


def _check_prime(p: int) -> None:
    if not isinstance(p, int) or not isprime(p):
        raise NotPrime(f"{p} is not prime")


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """A finite abelian group, canonically Z/s_1 + ... + Z/s_r."""

    invariant_factors: tuple[int, ...] = field(default=())

    def __post_init__(self):
        fs = tuple(int(a) for a in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", fs)
        if any(a < 2 for a in fs):
            raise InvalidFactor(f"invariant factors must be >= 2, got {fs}")
        for a, b in zip(fs, fs[1:]):
            if b % a != 0:
                raise InvalidFactor(f"divisibility chain violated: {a} does not divide {b}")

    @classmethod
    def trivial(cls) -> "FiniteAbelianGroup":
        return cls(())

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def __str__(self) -> str:
        if self.is_trivial():
            return "trivial"
        return " + ".join(f"Z/{m}" for m in self.invariant_factors)


def normalize(factors) -> FiniteAbelianGroup:
    """Canonical invariant-factor form of a direct sum of cyclic groups.

    Unit factors are dropped; prime powers are regrouped so that the
    divisibility chain holds.  The result is isomorphic to the input sum.
    """
    cleaned = []
    for f in factors:
        f = int(f)
        if f <= 0:
            raise InvalidFactor(f"cyclic factor orders must be positive, got {f}")
        if f > 1:
            cleaned.append(f)
    exponents_by_prime: dict[int, list[int]] = {}
    for f in cleaned:
        for p, e in factorint(f).items():
            exponents_by_prime.setdefault(p, []).append(e)
    depth = max((len(v) for v in exponents_by_prime.values()), default=0)
    chain_desc = []
    for i in range(depth):
        m = 1
        for p, exps in exponents_by_prime.items():
            exps = sorted(exps, reverse=True)
            if i < len(exps):
                m *= p ** exps[i]
        chain_desc.append(m)
    return FiniteAbelianGroup(tuple(reversed(chain_desc)))


def rank(G: FiniteAbelianGroup) -> int:
    """Minimum number of generators (0 for the trivial group)."""
    return len(G.invariant_factors)


def rank_p(G: FiniteAbelianGroup, p: int) -> int:
    """Rank of G/pG: the number of invariant factors divisible by p."""
    _check_prime(p)
    return sum(1 for m in G.invariant_factors if m % p == 0)


def nu_p(m: int, p: int) -> int:
    """Exact p-adic valuation of a nonzero integer."""
    _check_prime(p)
    if m == 0:
        raise ZeroValuation("valuation of 0 is infinite; callers must special-case it")
    m = abs(m)
    a = 0
    while m % p == 0:
        m //= p
        a += 1
    return a


def direct_sum(G1: FiniteAbelianGroup, G2: FiniteAbelianGroup) -> FiniteAbelianGroup:
    return normalize(G1.invariant_factors + G2.invariant_factors)
