"""Tests for the essential-dimension bound engine."""

import random
from fractions import Fraction

import pytest

from isoged import abvar, edim, fingroup
from isoged.abvar import Isogeny, build_instance, enumerate_subvarieties, mult_by_m
from isoged.edim import (
    CoprimalityFails,
    Uncertified,
    bound_report,
    coprimality_check,
    ed_upper_abelian_cover,
    ed_upper_fiber_product,
    exact_ed,
    is_incompressible,
    lower_bound,
    upper_bound,
)
from isoged.fingroup import normalize
from isoged.intlinalg import IntMatrix
from isoged.randomized import random_block_isogeny, random_product_instance
from test_abvar import diagonal_isogeny, product_instance, simple_instance


def test_lower_bound_mult2_on_elliptic_product():
    alpha = mult_by_m(product_instance(1, 1), 2)
    lower, table = lower_bound(alpha)
    assert lower == 2
    # every per-(B, p) entry equals dim A = 2 for mult-by-2
    assert {w.value for w in table} == {Fraction(2)}


def test_lower_bound_simple_prime_kernel():
    A = simple_instance(3)
    alpha = diagonal_isogeny(A, [5, 1, 1, 1, 1, 1])
    lower, table = lower_bound(alpha)
    assert lower == 1
    by_label = {(w.subvariety, w.prime): w.value for w in table}
    assert by_label[("A", 5)] == Fraction(4, 5)
    assert by_label[("0", None)] == 3


def test_lower_bound_identity_isogeny():
    alpha = mult_by_m(product_instance(1, 1), 1)
    assert lower_bound(alpha)[0] == 0


def test_lower_bound_refused_when_incomplete():
    A = build_instance("A", {"kind": "custom", "ambient_rank": 4,
                             "subvarieties": [], "complete": False})
    with pytest.raises(Uncertified):
        lower_bound(mult_by_m(A, 2))


def test_upper_bound_examples():
    assert upper_bound(mult_by_m(product_instance(1, 1, 1), 4))[0] == 3
    A = product_instance(1, 1)
    alpha = diagonal_isogeny(A, [1, 5, 1, 1])
    value, best = upper_bound(alpha)
    assert value == 1 and best.label == "E2"
    S = simple_instance(3)
    value, best = upper_bound(diagonal_isogeny(S, [5, 1, 1, 1, 1, 1]))
    assert value == 1 and best.label == "A"


def test_upper_bound_works_without_completeness():
    A = build_instance("A", {"kind": "custom", "ambient_rank": 4,
                             "subvarieties": [], "complete": False})
    value, _ = upper_bound(mult_by_m(A, 2))
    assert value == 2


def test_upper_bound_monotone_in_family():
    # adding a subvariety can only lower the minimum
    base = build_instance("A", {"kind": "custom", "ambient_rank": 4,
                                "subvarieties": [], "complete": False})
    richer = build_instance("A", {
        "kind": "custom", "ambient_rank": 4,
        "subvarieties": [{"label": "B", "basis": [[1, 0, 0, 0], [0, 1, 0, 0]]}],
        "complete": False,
    })
    M = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 5, 0], [0, 0, 0, 5]]
    u_base = upper_bound(Isogeny(base, base, IntMatrix.from_rows(M)))[0]
    u_rich = upper_bound(Isogeny(richer, richer, IntMatrix.from_rows(M)))[0]
    assert u_rich <= u_base
    assert u_rich == 1  # via B: 2 - 1 + 0


def test_exact_ed_examples():
    S = simple_instance(3)
    assert exact_ed(diagonal_isogeny(S, [5, 1, 1, 1, 1, 1]))[0] == 1
    A = product_instance(1, 1)
    assert exact_ed(diagonal_isogeny(A, [1, 5, 1, 1]))[0] == 1
    with pytest.raises(CoprimalityFails):
        exact_ed(mult_by_m(A, 2))


def test_exact_ed_simple_min_formula():
    # min{dim A, rank of the kernel} for simple instances with coprime degree
    for g in (2, 3):
        for r in range(1, 2 * g + 1):
            S = simple_instance(g)
            alpha = diagonal_isogeny(S, [7] * r + [1] * (2 * g - r))
            assert exact_ed(alpha)[0] == min(g, r)


def test_is_incompressible():
    A = product_instance(1, 1)
    for m in (2, 3):
        flag, _ = is_incompressible(mult_by_m(A, m))
        assert flag
    assert not is_incompressible(mult_by_m(A, 1))[0]
    S = simple_instance(3)
    assert not is_incompressible(diagonal_isogeny(S, [5, 1, 1, 1, 1, 1]))[0]


def test_coprimality_check():
    assert coprimality_check(5, 3)
    assert not coprimality_check(6, 3)
    assert coprimality_check(49, 6)
    assert coprimality_check(17, 1)


def test_combinators():
    assert ed_upper_fiber_product(0, 5) == 5
    assert ed_upper_fiber_product(1, 1) == 2
    assert ed_upper_abelian_cover(fingroup.FiniteAbelianGroup.trivial()) == 0
    assert ed_upper_abelian_cover(normalize([2, 2, 2])) == 3
    assert ed_upper_abelian_cover(normalize([2, 4, 4])) == 3


def test_mult_map_witness_values():
    # per-B value for mult-by-m at p | m is dim A - dim B + (p-1)/p * 2 dim B,
    # which is >= dim A with equality iff p = 2 or dim B = 0
    A = product_instance(1, 2)
    alpha = mult_by_m(A, 6)
    _, table = lower_bound(alpha)
    dim_a = A.dim
    for w in table:
        if w.prime is None:
            continue
        expected = Fraction(dim_a - w.dim_b) + Fraction(w.prime - 1, w.prime) * 2 * w.dim_b
        assert w.value == expected
        assert w.value >= dim_a
        assert (w.value == dim_a) == (w.prime == 2 or w.dim_b == 0)


def test_report_invariants_random():
    rng = random.Random(41)
    for _ in range(25):
        A = random_product_instance(rng, max_total_dim=3)
        alpha, _ = random_block_isogeny(rng, A, prime_pool=[2, 3, 5, 7])
        rep = bound_report(alpha)
        assert rep.enumeration_complete
        assert rep.lower is not None and rep.lower <= rep.upper <= A.dim
        assert (rep.exact is not None) == (rep.coprimality and rep.enumeration_complete)
        if rep.exact is not None:
            assert rep.exact == rep.lower == rep.upper


def test_report_uncertified_custom():
    A = build_instance("A", {"kind": "custom", "ambient_rank": 4,
                             "subvarieties": [], "complete": False})
    rep = bound_report(mult_by_m(A, 2))
    assert rep.lower is None and rep.exact is None
    assert rep.upper == 2
    assert not rep.enumeration_complete
