"""Closed-form bounds on abelian p-group actions.

Calculators for the rank and orbit-index bounds coming from the divisibility
of Chern numbers by minimal orbit sizes, together with the downstream
consequences: rationally connected varieties, symmetric/alternating degrees,
local rings with rational singularities, and the small-Euler-characteristic
(Calabi-Yau style) branch.  All bounds are exact rationals floored to
integers; no validity of the underlying geometry is checked here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .fingroup import NotPrime, _check_prime, nu_p


class ZeroChi(ValueError):
    """chi(X, O_X) = 0: the valuation is infinite and no bound is available."""


class ChiOutOfRange(ValueError):
    """The small-chi branch requires chi in {-2, -1, 1, 2}."""


class DegreeTooSmall(ValueError):
    """Permutation degree too small for the requested construction."""


@dataclass(frozen=True)
class ActionQuery:
    """An abelian p-group action on an n-dimensional variety."""

    n: int
    p: int
    chi: int | None = None

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("dimension must be >= 0")
        _check_prime(self.p)


@dataclass(frozen=True)
class RankBoundResult:
    raw: Fraction
    integral: int
    # (cap on the rank of the fixed-point part, cap on the order of the rest)
    decomposition: tuple[int, int] | None = None


@dataclass(frozen=True)
class SurfaceChern:
    """Chern numbers of a surface; integrality is the only invariant."""

    c1_sq: int
    c2: int


def todd_denominator_exponent(n: int, p: int) -> int:
    """Exponent of the largest p-power dividing the denominator of the
    degree-n Todd polynomial: floor(n / (p - 1))."""
    _check_prime(p)
    if n < 0:
        raise ValueError("dimension must be >= 0")
    return n // (p - 1)


def _require_chi(q: ActionQuery) -> int:
    if q.chi is None or q.chi == 0:
        raise ZeroChi("chi(X, O_X) must be a nonzero integer; no bound otherwise")
    return q.chi


def orbit_index_bound(q: ActionQuery) -> tuple[Fraction, int]:
    """Bound on log_p of the index of a point stabilizer with a fixed point.

    Returns (nu_p(chi) + n/(p-1), its floor); the index exponent is an
    integer so the floored value is the usable cap.
    """
    chi = _require_chi(q)
    raw = Fraction(nu_p(chi, q.p)) + Fraction(q.n, q.p - 1)
    return raw, raw.numerator // raw.denominator


def abelian_rank_bound(q: ActionQuery) -> RankBoundResult:
    """Rank cap nu_p(chi) + p*n/(p-1) for a faithful abelian p-group action.

    The decomposition refines this: the group splits as G1 x G2 with
    rank(G1) <= n + nu_p(chi) and |G2| <= p^floor(n/(p-1)).
    """
    chi = _require_chi(q)
    a = nu_p(chi, q.p)
    raw = Fraction(a) + Fraction(q.p * q.n, q.p - 1)
    return RankBoundResult(
        raw=raw,
        integral=raw.numerator // raw.denominator,
        decomposition=(q.n + a, q.p ** todd_denominator_exponent(q.n, q.p)),
    )


def rc_rank_bound(n: int, p: int) -> int:
    """Rank cap floor(p*n/(p-1)) on rationally connected varieties (chi = 1)."""
    _check_prime(p)
    if n < 0:
        raise ValueError("dimension must be >= 0")
    return (p * n) // (p - 1)


def sym_alt_degree_bounds(n: int) -> tuple[int, int]:
    """Largest symmetric and alternating degrees acting faithfully on a
    rationally connected n-fold: (4n + 1, 4n + 3)."""
    if n < 1:
        raise ValueError("dimension must be >= 1")
    return 4 * n + 1, 4 * n + 3


def elementary_two_witness(m: int, alternating: bool = False) -> int:
    """Rank of the disjoint-transposition elementary abelian 2-subgroup.

    In the symmetric group on m letters, floor(m/2) disjoint transpositions
    generate a rank-floor(m/2) group; restricting to even products (the
    alternating case) drops the rank by one.
    """
    if alternating:
        if m < 4:
            raise DegreeTooSmall("alternating construction needs degree >= 4")
        return m // 2 - 1
    if m < 2:
        raise DegreeTooSmall("symmetric construction needs degree >= 2")
    return m // 2


def local_ring_bounds(n: int, p: int) -> tuple[int, int]:
    """(index exponent cap, rank cap) for abelian p-group actions on local
    rings of n-dimensional rational singularities."""
    _check_prime(p)
    if n < 1:
        raise ValueError("dimension must be >= 1")
    idx = (n - 1) // (p - 1)
    return idx, n + idx


def cy_rank_bound(n: int, p: int, chi: int) -> int:
    """Rank cap when chi(X, O_X) is +-1 or +-2: floor(p*n/(p-1)) for odd p,
    2n + 1 for p = 2."""
    _check_prime(p)
    if n < 0:
        raise ValueError("dimension must be >= 0")
    if chi not in (-2, -1, 1, 2):
        raise ChiOutOfRange(f"chi must be in {{-2, -1, 1, 2}}, got {chi}")
    if p == 2:
        return 2 * n + 1
    return (p * n) // (p - 1)


def blowup_chern(base: SurfaceChern, r: int) -> SurfaceChern:
    """Chern numbers after blowing up r points of a surface."""
    if r < 0:
        raise ValueError("number of blown-up points must be >= 0")
    return SurfaceChern(base.c1_sq - r, base.c2 + r)


def chern_divisibility_test(chern_number: int, p: int, c: int) -> bool:
    """Whether p^c divides the given Chern number.

    When every orbit of an abelian p-group action has size >= p^c, the Chern
    numbers must pass this test; a failure rules such an action out (and the
    known non-abelian 2-group on a 12-point blow-up of a quadric surface
    shows abelianness is essential).
    """
    _check_prime(p)
    if c < 0:
        raise ValueError("orbit exponent must be >= 0")
    return chern_number % (p ** c) == 0
