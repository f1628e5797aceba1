"""The bound engine for essential dimension of isogenies.

For an isogeny alpha: A -> A' with kernel G and an abelian subvariety B, let
L = G meet B.  The engine computes:

* a certified lower bound: the ceiling of
  min over B of max over primes p | deg(alpha) of
      dim A - dim B + (p-1)/p * rank_p(L),
  valid only when the subvariety family is provably complete;
* an unconditional upper bound: min over the available B of
      dim A - dim B + rank(L),
  capped by dim A (each B yields a genuine upper bound, so any subfamily
  works);
* the exact value when deg(alpha) is coprime to (dim A)! and enumeration is
  complete, in which case the two bounds provably coincide.

All intermediate arithmetic is exact rational; the ceiling is applied once,
after the minimum over B (per-B ceilings would overstate the bound).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from sympy import primefactors

from . import abvar, fingroup
from .abvar import AbelianVarietyInstance, Isogeny, Subvariety
from .fingroup import FiniteAbelianGroup


class Uncertified(RuntimeError):
    """A certified quantity was requested but the subvariety family is incomplete."""


class CoprimalityFails(RuntimeError):
    """Exact value requested but deg(alpha) shares a factor with (dim A)!."""


@dataclass(frozen=True)
class WitnessEntry:
    """One row of the lower-bound witness table: the per-(B, p) rational value."""

    subvariety: str
    dim_b: int
    prime: int | None  # None when the kernel misses B (no prime contributes)
    value: Fraction


@dataclass(frozen=True)
class UpperWitness:
    subvariety: str
    dim_b: int
    value: int


@dataclass(frozen=True)
class EdBoundReport:
    lower: int | None  # None = uncertified
    upper: int
    exact: int | None
    lower_witness: tuple[WitnessEntry, ...]
    upper_witness: UpperWitness
    coprimality: bool
    enumeration_complete: bool
    assumptions: tuple[str, ...]


def coprimality_check(deg: int, g: int) -> bool:
    """True iff deg is coprime to g! (checked as gcd(deg, k) = 1 for k <= g)."""
    if g < 1:
        raise ValueError("dimension must be >= 1")
    return all(math.gcd(deg, k) == 1 for k in range(2, g + 1))


def _witness_table(alpha: Isogeny, subs: list[Subvariety]):
    """Per-(B, p) values and the per-B maxima, as exact rationals."""
    dim_a = alpha.source.dim
    primes = primefactors(alpha.degree)
    table: list[WitnessEntry] = []
    per_b: list[tuple[Subvariety, Fraction]] = []
    for B in subs:
        L = abvar.kernel_intersect(alpha, B)
        base = Fraction(dim_a - B.dim)
        if primes and not L.is_trivial():
            vals = []
            for p in primes:
                v = base + Fraction(p - 1, p) * fingroup.rank_p(L, p)
                table.append(WitnessEntry(B.label, B.dim, p, v))
                vals.append(v)
            per_b.append((B, max(vals)))
        else:
            table.append(WitnessEntry(B.label, B.dim, None, base))
            per_b.append((B, base))
    return table, per_b


def lower_bound(alpha: Isogeny) -> tuple[int, tuple[WitnessEntry, ...]]:
    """Certified lower bound for ed(alpha), with the full witness table.

    Raises Uncertified when subvariety enumeration is incomplete: a minimum
    over a partial family is not a valid lower bound.
    """
    subs, complete = abvar.enumerate_subvarieties(alpha.source)
    if not complete:
        raise Uncertified("subvariety enumeration is incomplete; refusing a lower bound")
    table, per_b = _witness_table(alpha, subs)
    value = min(v for _, v in per_b)
    return math.ceil(value), tuple(table)


def upper_bound(alpha: Isogeny) -> tuple[int, Subvariety]:
    """Unconditional upper bound min(dim A, min over B of dim A - dim B + rank).

    Works with incomplete families.  Ties are broken by smallest dim B, then
    by label, so the reported minimizer is deterministic.
    """
    dim_a = alpha.source.dim
    subs, _ = abvar.enumerate_subvarieties(alpha.source)
    candidates = []
    for B in subs:
        L = abvar.kernel_intersect(alpha, B)
        candidates.append((dim_a - B.dim + fingroup.rank(L), B.dim, B.label, B))
    value, _, _, best = min(candidates, key=lambda c: (c[0], c[1], c[2]))
    return min(dim_a, value), best


def bound_report(alpha: Isogeny) -> EdBoundReport:
    """Assemble lower/upper/exact bounds with witnesses and echoed assumptions."""
    dim_a = alpha.source.dim
    subs, complete = abvar.enumerate_subvarieties(alpha.source)
    table, per_b = _witness_table(alpha, subs)
    lower = math.ceil(min(v for _, v in per_b)) if complete else None
    upper, best = upper_bound(alpha)
    L_best = abvar.kernel_intersect(alpha, best)
    coprime = coprimality_check(alpha.degree, dim_a)
    exact = None
    if coprime and complete:
        exact = upper
        if lower != upper:  # pragma: no cover - would signal a soundness bug
            raise AssertionError(
                f"coprime-degree equality violated: lower={lower}, upper={upper}"
            )
    return EdBoundReport(
        lower=lower,
        upper=upper,
        exact=exact,
        lower_witness=tuple(table) if complete else (),
        upper_witness=UpperWitness(best.label, best.dim, dim_a - best.dim + fingroup.rank(L_best)),
        coprimality=coprime,
        enumeration_complete=complete,
        assumptions=alpha.source.assumptions,
    )


def exact_ed(alpha: Isogeny) -> tuple[int, EdBoundReport]:
    """Exact essential dimension under the coprime-degree hypothesis."""
    dim_a = alpha.source.dim
    if not coprimality_check(alpha.degree, dim_a):
        raise CoprimalityFails(
            f"degree {alpha.degree} shares a factor with {dim_a}!; only bounds are available"
        )
    _, complete = abvar.enumerate_subvarieties(alpha.source)
    if not complete:
        raise Uncertified("subvariety enumeration is incomplete; refusing an exact value")
    report = bound_report(alpha)
    assert report.exact is not None
    return report.exact, report


def is_incompressible(alpha: Isogeny) -> tuple[bool, tuple[WitnessEntry, ...]]:
    """True iff the certified lower bound equals dim A."""
    lower, table = lower_bound(alpha)
    return lower == alpha.source.dim, table


def ed_upper_fiber_product(e1: int, e2: int) -> int:
    """Upper-bound combinator for a fiber product of two finite covers."""
    if e1 < 0 or e2 < 0:
        raise ValueError("essential dimensions are nonnegative")
    return e1 + e2


def ed_upper_abelian_cover(G: FiniteAbelianGroup) -> int:
    """Upper bound rank(G) for a finite abelian cover with Galois group G.

    The cover is a fiber product of rank(G) cyclic covers, each of essential
    dimension one.
    """
    return fingroup.rank(G)
