"""Tests for the closed-form group-action bound calculators.

The disjoint-transposition witness formula is cross-checked by exhaustive
search over actual permutation subgroups for small degrees.
"""

import itertools
from fractions import Fraction

import pytest
from sympy import primerange

from isoged.groupbounds import (
    ActionQuery,
    ChiOutOfRange,
    DegreeTooSmall,
    SurfaceChern,
    ZeroChi,
    abelian_rank_bound,
    blowup_chern,
    chern_divisibility_test,
    cy_rank_bound,
    elementary_two_witness,
    local_ring_bounds,
    orbit_index_bound,
    rc_rank_bound,
    sym_alt_degree_bounds,
    todd_denominator_exponent,
)


def test_todd_denominator_exponent():
    assert todd_denominator_exponent(3, 2) == 3
    assert todd_denominator_exponent(0, 5) == 0
    assert todd_denominator_exponent(4, 5) == 1


def test_orbit_index_bound():
    assert orbit_index_bound(ActionQuery(2, 2, 1)) == (Fraction(2), 2)
    assert orbit_index_bound(ActionQuery(2, 3, 1)) == (Fraction(1), 1)
    raw, integral = orbit_index_bound(ActionQuery(3, 2, 4))
    assert raw == 5 and integral == 5
    with pytest.raises(ZeroChi):
        orbit_index_bound(ActionQuery(2, 2, 0))


def test_orbit_index_integral_decomposes():
    from isoged.fingroup import nu_p
    for n in range(0, 12):
        for p in (2, 3, 5, 7):
            for chi in (1, -4, 18):
                _, integral = orbit_index_bound(ActionQuery(n, p, chi))
                assert integral == nu_p(chi, p) + todd_denominator_exponent(n, p)


def test_abelian_rank_bound():
    r = abelian_rank_bound(ActionQuery(2, 2, 1))
    assert r.integral == 4
    assert r.decomposition == (2, 4)
    for p in (2, 3, 5, 7):
        assert abelian_rank_bound(ActionQuery(p - 1, p, 1)).integral == p
    r = abelian_rank_bound(ActionQuery(3, 2, 2))
    assert r.integral == 7 and r.raw == 7


def test_rc_rank_bound_examples_and_sweep():
    assert rc_rank_bound(2, 2) == 4
    assert rc_rank_bound(2, 3) == 3
    assert rc_rank_bound(1, 5) == 1
    for p in primerange(2, 101):
        for n in range(1, 51):
            b = rc_rank_bound(n, p)
            assert b <= 2 * n
            assert (b == 2 * n) == (p == 2)
            q = abelian_rank_bound(ActionQuery(n, p, 1))
            assert q.integral == b


def test_sharpness_witnesses():
    # coordinatewise rank-2n group on a product of n lines attains the p=2 bound
    for n in (1, 2, 3, 4):
        assert 2 * n == rc_rank_bound(n, 2)
    # diagonal rank-p group on the degree-p Fermat hypersurface of dim p-1
    for p in (2, 3, 5, 7):
        assert p == rc_rank_bound(p - 1, p)


def test_sym_alt_degree_bounds():
    assert sym_alt_degree_bounds(1) == (5, 7)
    assert sym_alt_degree_bounds(2) == (9, 11)
    with pytest.raises(ValueError):
        sym_alt_degree_bounds(0)


def test_sym_alt_bounds_rederived_from_witnesses():
    # largest m whose witness rank still fits under the p=2 rank cap 2n
    for n in range(1, 11):
        cap = rc_rank_bound(n, 2)
        m_sym = max(m for m in range(2, 100) if elementary_two_witness(m) <= cap)
        m_alt = max(m for m in range(4, 100)
                    if elementary_two_witness(m, alternating=True) <= cap)
        assert (m_sym, m_alt) == sym_alt_degree_bounds(n)


def test_elementary_two_witness_values():
    for n in range(1, 6):
        assert elementary_two_witness(4 * n + 2) == 2 * n + 1
        assert elementary_two_witness(4 * n + 4, alternating=True) == 2 * n + 1
    assert elementary_two_witness(5) == 2
    with pytest.raises(DegreeTooSmall):
        elementary_two_witness(1)
    with pytest.raises(DegreeTooSmall):
        elementary_two_witness(3, alternating=True)


def _compose(a, b):
    return tuple(a[b[i]] for i in range(len(a)))


def _group_generated(gens, m):
    identity = tuple(range(m))
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                c = _compose(g, h)
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    return seen


def _is_even(perm):
    inv = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm))
              if perm[i] > perm[j])
    return inv % 2 == 0


def test_witness_formula_by_exhaustive_search():
    # maximize over all sets of disjoint transpositions on m points
    for m in range(2, 9):
        pairs = list(itertools.combinations(range(m), 2))
        best_sym = 0
        best_alt = 0
        for k in range(1, m // 2 + 1):
            for chosen in itertools.combinations(pairs, k):
                points = [x for p in chosen for x in p]
                if len(set(points)) != len(points):
                    continue
                gens = []
                for a, b in chosen:
                    t = list(range(m))
                    t[a], t[b] = t[b], t[a]
                    gens.append(tuple(t))
                G = _group_generated(gens, m)
                assert len(G) == 2 ** k  # independent disjoint involutions
                even = {g for g in G if _is_even(g)}
                best_sym = max(best_sym, k)
                best_alt = max(best_alt, len(even).bit_length() - 1)
        assert best_sym == elementary_two_witness(m)
        if m >= 4:
            assert best_alt == elementary_two_witness(m, alternating=True)


def test_local_ring_bounds():
    assert local_ring_bounds(2, 2) == (1, 3)
    for p in (2, 3, 5):
        assert local_ring_bounds(1, p) == (0, 1)
    assert local_ring_bounds(4, 3) == (1, 5)
    for n in range(1, 20):
        for p in primerange(2, 30):
            assert local_ring_bounds(n, p)[1] <= 2 * n - 1


def test_cy_rank_bound():
    assert cy_rank_bound(2, 2, 2) == 5
    assert cy_rank_bound(3, 3, 1) == 4
    assert cy_rank_bound(2, 2, 1) == 5  # coarser than the chi=1 bound of 4
    with pytest.raises(ChiOutOfRange):
        cy_rank_bound(2, 2, 3)
    with pytest.raises(ChiOutOfRange):
        cy_rank_bound(3, 2, 0)


def test_blowup_chern():
    quadric = SurfaceChern(8, 4)  # Euler number of a product of two lines is 4
    s = blowup_chern(quadric, 12)
    assert (s.c1_sq, s.c2) == (-4, 16)
    assert blowup_chern(quadric, 0) == quadric


def test_chern_divisibility():
    assert chern_divisibility_test(-4, 2, 3) is False
    assert chern_divisibility_test(-4, 2, 2) is True
    for p, c in ((2, 5), (3, 2), (7, 1)):
        assert chern_divisibility_test(0, p, c) is True
