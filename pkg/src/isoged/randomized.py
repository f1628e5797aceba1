"""Seeded random generators and brute-force cross-check suites.

The suites are the soundness net behind the ``oracle`` CLI command and the
randomized parts of the test suite.  Everything is driven by an explicit
``random.Random`` instance so runs are reproducible byte for byte.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import abvar, edim, fingroup, intlinalg
from .abvar import AbelianVarietyInstance, Isogeny
from .intlinalg import IntMatrix


@dataclass
class SuiteResult:
    name: str
    trials: int
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def random_int_matrix(rng: random.Random, rows: int, cols: int, max_entry: int) -> IntMatrix:
    return IntMatrix.from_rows(
        [[rng.randint(-max_entry, max_entry) for _ in range(cols)] for _ in range(rows)]
    )


def random_unimodular(rng: random.Random, n: int, shears: int = 12) -> IntMatrix:
    """Random unimodular matrix: a product of shears, swaps, and sign flips."""
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(shears):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            continue
        op = rng.randrange(3)
        if op == 0:
            c = rng.choice([-2, -1, 1, 2])
            m[i] = [a + c * b for a, b in zip(m[i], m[j])]
        elif op == 1:
            m[i], m[j] = m[j], m[i]
        else:
            m[i] = [-a for a in m[i]]
    return IntMatrix.from_rows(m)


def random_product_instance(rng: random.Random, max_total_dim: int = 3) -> AbelianVarietyInstance:
    """Product of pairwise non-isogenous simple factors with total dim <= cap."""
    total = rng.randint(1, max_total_dim)
    dims = []
    left = total
    while left > 0:
        d = rng.randint(1, left)
        dims.append(d)
        left -= d
    factors = [{"label": f"F{i + 1}", "dim": d} for i, d in enumerate(dims)]
    return abvar.build_instance("A", {"kind": "product", "factors": factors})


def random_block_isogeny(
    rng: random.Random,
    A: AbelianVarietyInstance,
    prime_pool: list[int],
    max_exponent: int = 2,
) -> tuple[Isogeny, list[IntMatrix]]:
    """Block-diagonal isogeny on a product instance; returns the blocks too.

    Each factor block is U * D * W with U, W unimodular and D diagonal with
    entries drawn from powers of the given primes, so block determinants
    (hence the degree) factor over the pool.
    """
    assert A.kind == "product"
    blocks = []
    n = A.ambient_rank
    entries = [[0] * n for _ in range(n)]
    pos = 0
    for _, d in A.factors:
        size = 2 * d
        diag = [rng.choice(prime_pool) ** rng.randint(0, max_exponent) for _ in range(size)]
        D = IntMatrix.from_rows(
            [[diag[i] if i == j else 0 for j in range(size)] for i in range(size)]
        )
        block = random_unimodular(rng, size) @ D @ random_unimodular(rng, size)
        blocks.append(block)
        for i in range(size):
            for j in range(size):
                entries[pos + i][pos + j] = block.entries[i][j]
        pos += size
    return Isogeny(A, A, IntMatrix.from_rows(entries)), blocks


# ---------------------------------------------------------------------------
# Suites


def suite_snf_vs_determinantal(
    rng: random.Random, trials: int, max_dim: int = 6, max_entry: int = 20
) -> SuiteResult:
    """Invariant factors from elimination must match determinantal-divisor ratios."""
    res = SuiteResult("snf-vs-determinantal-divisors", trials)
    for t in range(trials):
        rows = rng.randint(1, max_dim)
        cols = rng.randint(1, max_dim)
        M = random_int_matrix(rng, rows, cols, max_entry)
        snf = intlinalg.smith_normal_form(M)
        dd = intlinalg.determinantal_divisors(M)
        expect = []
        prev = 1
        for d in dd:
            if d == 0:
                break
            expect.append(d // prev)
            prev = d
        if tuple(expect) != snf.invariant_factors:
            res.failures.append(f"trial {t}: snf {snf.invariant_factors} vs divisors {dd}")
            continue
        prod = snf.left_transform @ M @ snf.right_transform
        if prod != snf.diagonal:
            res.failures.append(f"trial {t}: U*M*V != S")
        if abs(snf.left_transform.det()) != 1 or abs(snf.right_transform.det()) != 1:
            res.failures.append(f"trial {t}: transform not unimodular")
    return res


def suite_kernel_splitting(rng: random.Random, trials: int) -> SuiteResult:
    """On products, the kernel over a sub-product is the sum of block kernels."""
    res = SuiteResult("kernel-splitting", trials)
    for t in range(trials):
        A = random_product_instance(rng, max_total_dim=3)
        alpha, blocks = random_block_isogeny(rng, A, prime_pool=[2, 3, 5])
        block_kernels = [
            fingroup.normalize(intlinalg.smith_normal_form(b).invariant_factors)
            for b in blocks
        ]
        labels = [lab for lab, _ in A.factors]
        subs, complete = abvar.enumerate_subvarieties(A)
        if not complete:
            res.failures.append(f"trial {t}: product enumeration reported incomplete")
            continue
        for B in subs:
            if B.label == "0":
                chosen = []
            elif B.label == "A":
                chosen = list(range(len(labels)))
            else:
                parts = B.label.split("x")
                chosen = [labels.index(p) for p in parts]
            expected = fingroup.FiniteAbelianGroup.trivial()
            for i in chosen:
                expected = fingroup.direct_sum(expected, block_kernels[i])
            got = abvar.kernel_intersect(alpha, B)
            if got != expected:
                res.failures.append(f"trial {t}: B={B.label}: {got} != {expected}")
            if alpha.degree % max(got.order, 1) != 0:
                res.failures.append(f"trial {t}: |kernel meet B| does not divide degree")
        if abvar.kernel(alpha).order != alpha.degree:
            res.failures.append(f"trial {t}: kernel order != degree")
    return res


def suite_bound_ordering(rng: random.Random, trials: int) -> SuiteResult:
    """Certified lower <= upper <= dim A, including non-coprime degrees."""
    res = SuiteResult("lower-le-upper", trials)
    for t in range(trials):
        A = random_product_instance(rng, max_total_dim=3)
        alpha, _ = random_block_isogeny(rng, A, prime_pool=[2, 3, 5, 7])
        report = edim.bound_report(alpha)
        if report.lower is None:
            res.failures.append(f"trial {t}: complete product family reported uncertified")
            continue
        if not (report.lower <= report.upper <= A.dim):
            res.failures.append(
                f"trial {t}: ordering violated: {report.lower} / {report.upper} / {A.dim}"
            )
    return res


def suite_coprime_equality(rng: random.Random, trials: int) -> SuiteResult:
    """With degree built from primes > dim A, lower and upper must agree."""
    res = SuiteResult("coprime-degree-equality", trials)
    for t in range(trials):
        A = random_product_instance(rng, max_total_dim=3)
        pool = [p for p in (5, 7, 11, 13) if p > A.dim]
        alpha, _ = random_block_isogeny(rng, A, prime_pool=pool)
        if not edim.coprimality_check(alpha.degree, A.dim):
            res.failures.append(f"trial {t}: generator produced a non-coprime degree")
            continue
        report = edim.bound_report(alpha)
        if report.lower != report.upper or report.exact != report.upper:
            res.failures.append(
                f"trial {t}: expected equality, got lower={report.lower} upper={report.upper}"
            )
    return res


def run_all_suites(
    seed: int, trials: int, max_dim: int = 6, max_entry: int = 20
) -> list[SuiteResult]:
    rng = random.Random(seed)
    return [
        suite_snf_vs_determinantal(rng, trials, max_dim=max_dim, max_entry=max_entry),
        suite_kernel_splitting(rng, max(1, trials // 2)),
        suite_bound_ordering(rng, max(1, trials // 2)),
        suite_coprime_equality(rng, max(1, trials // 2)),
    ]
