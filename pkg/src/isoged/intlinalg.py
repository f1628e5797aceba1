"""Exact integer matrix and lattice arithmetic.

Everything here is computed over arbitrary-precision integers (with exact
rationals used internally where needed); no floating point appears anywhere.

Lattices are sublattices of an ambient Z^n, stored in a canonical form
(Hermite-reduced basis plus a global positive denominator) so that equal
lattices compare equal.  A denominator d > 1 represents the fractional
lattice (1/d) * <basis rows>.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

from .fingroup import FiniteAbelianGroup, normalize


class SingularMatrix(ValueError):
    """A nonsingular square matrix was required."""


class NotASublattice(ValueError):
    """The claimed sublattice is not contained in the bigger one."""


class InfiniteQuotient(ValueError):
    """The lattice quotient has positive rank."""


# ---------------------------------------------------------------------------
# Integer matrices


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError("matrix dimensions must be >= 1")
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entry grid does not match the declared shape")
        for r in self.entries:
            for a in r:
                if not isinstance(a, int):
                    raise ValueError(f"entries must be integers, got {a!r}")

    @classmethod
    def from_rows(cls, rows) -> "IntMatrix":
        data = tuple(tuple(int(a) for a in row) for row in rows)
        if not data:
            raise ValueError("a matrix needs at least one row")
        return cls(len(data), len(data[0]), data)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.from_rows([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def scalar(cls, n: int, c: int) -> "IntMatrix":
        return cls.from_rows([[c if i == j else 0 for j in range(n)] for i in range(n)])

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("incompatible shapes for multiplication")
        ot = list(zip(*other.entries))
        return IntMatrix.from_rows(
            [[sum(a * b for a, b in zip(row, col)) for col in ot] for row in self.entries]
        )

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows(list(zip(*self.entries)))

    def det(self) -> int:
        """Exact determinant via fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        m = [list(r) for r in self.entries]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k] != 0:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            prev = m[k][k]
        return sign * m[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Rational elimination helpers (exact, Fraction-based)


def _inverse_rational(M: IntMatrix) -> list[list[Fraction]]:
    """Inverse of a nonsingular square integer matrix, as exact rationals."""
    if M.rows != M.cols:
        raise SingularMatrix("inverse of a non-square matrix")
    n = M.rows
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(M.entries)]
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            raise SingularMatrix("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        inv = Fraction(1) / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for i in range(n):
            if i != col and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return [row[n:] for row in a]


def _solve_left(basis: list[list[Fraction]], target: list[Fraction]):
    """Solve x . basis = target for x, given linearly independent basis rows.

    Returns the unique rational solution, or None if target is outside the
    row span.
    """
    m = len(basis)
    n = len(target)
    # Transposed augmented system: one equation per ambient coordinate.
    a = [[basis[i][j] for i in range(m)] + [target[j]] for j in range(n)]
    row = 0
    pivot_cols = []
    for col in range(m):
        piv = next((i for i in range(row, n) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        inv = Fraction(1) / a[row][col]
        a[row] = [x * inv for x in a[row]]
        for i in range(n):
            if i != row and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[row])]
        pivot_cols.append(col)
        row += 1
    for i in range(row, n):
        if a[i][m] != 0:
            return None
    x = [Fraction(0)] * m
    for r, col in enumerate(pivot_cols):
        x[col] = a[r][m]
    return x


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SnfResult:
    left_transform: IntMatrix
    diagonal: IntMatrix
    right_transform: IntMatrix
    invariant_factors: tuple[int, ...]


def smith_normal_form(M: IntMatrix) -> SnfResult:
    """Smith normal form U * M * V = S with unimodular U, V.

    The pivot rule picks a nonzero entry of minimal absolute value in the
    remaining submatrix, which keeps intermediate entries small without
    randomization.  Diagonal entries are nonnegative and form a
    divisibility chain.
    """
    nr, nc = M.rows, M.cols
    S = [list(r) for r in M.entries]
    U = [[int(i == j) for j in range(nr)] for i in range(nr)]
    V = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):
        S[dst] = [a + c * b for a, b in zip(S[dst], S[src])]
        U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, c):
        for row in S:
            row[dst] += c * row[src]
        for row in V:
            row[dst] += c * row[src]

    def negate_row(i):
        S[i] = [-a for a in S[i]]
        U[i] = [-a for a in U[i]]

    def find_pivot(t):
        best = None
        where = None
        for i in range(t, nr):
            for j in range(t, nc):
                a = S[i][j]
                if a != 0 and (best is None or abs(a) < best):
                    best = abs(a)
                    where = (i, j)
        return where

    t = 0
    while t < min(nr, nc):
        pos = find_pivot(t)
        if pos is None:
            break
        while True:
            i, j = pos
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            piv = S[t][t]
            for i in range(t + 1, nr):
                if S[i][t] != 0:
                    add_row(i, t, -(S[i][t] // piv))
            for j in range(t + 1, nc):
                if S[t][j] != 0:
                    add_col(j, t, -(S[t][j] // piv))
            if any(S[i][t] for i in range(t + 1, nr)) or any(S[t][j] for j in range(t + 1, nc)):
                pos = find_pivot(t)  # remainders are strictly smaller than |piv|
                continue
            bad = next(((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc)
                        if S[i][j] % piv != 0), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)  # pull the non-divisible entry into the pivot row
            pos = (t, t)
        if S[t][t] < 0:
            negate_row(t)
        t += 1

    factors = tuple(S[i][i] for i in range(min(nr, nc)) if S[i][i] != 0)
    return SnfResult(
        left_transform=IntMatrix.from_rows(U),
        diagonal=IntMatrix.from_rows(S),
        right_transform=IntMatrix.from_rows(V),
        invariant_factors=factors,
    )


def determinantal_divisors(M: IntMatrix) -> tuple[int, ...]:
    """d_k = gcd of all k x k minors (0 when all vanish).

    Serves as an oracle independent of the elimination in
    :func:`smith_normal_form`: for nonsingular square M the invariant factors
    are s_k = d_k / d_{k-1}.
    """
    out = []
    kmax = min(M.rows, M.cols)
    for k in range(1, kmax + 1):
        g = 0
        for rows in itertools.combinations(range(M.rows), k):
            for cols in itertools.combinations(range(M.cols), k):
                sub = IntMatrix.from_rows(
                    [[M.entries[i][j] for j in cols] for i in rows]
                )
                g = gcd(g, abs(sub.det()))
                if g == 1:
                    break
            if g == 1:
                break
        out.append(g)
        if g == 0:
            out.extend([0] * (kmax - k))
            break
    return tuple(out)


def left_kernel(M: IntMatrix) -> list[tuple[int, ...]]:
    """Basis of the lattice {x in Z^rows : x * M = 0}."""
    snf = smith_normal_form(M)
    r = len(snf.invariant_factors)
    return [tuple(row) for row in snf.left_transform.entries[r:]]


# ---------------------------------------------------------------------------
# Lattices


def _hermite_rows(rows: list[list[int]], n: int) -> tuple[tuple[int, ...], ...]:
    """Row-style Hermite normal form of a spanning set; zero rows dropped.

    Pivots are positive, entries above a pivot are reduced into [0, pivot).
    The output is the unique canonical basis of the generated lattice.
    """
    mat = [list(r) for r in rows if any(r)]
    r = 0
    for col in range(n):
        while True:
            nz = [i for i in range(r, len(mat)) if mat[i][col] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda i: abs(mat[i][col]))
            i0 = nz[0]
            for i in nz[1:]:
                q = mat[i][col] // mat[i0][col]
                mat[i] = [a - q * b for a, b in zip(mat[i], mat[i0])]
        nz = [i for i in range(r, len(mat)) if mat[i][col] != 0]
        if not nz:
            continue
        mat[r], mat[nz[0]] = mat[nz[0]], mat[r]
        if mat[r][col] < 0:
            mat[r] = [-a for a in mat[r]]
        piv = mat[r][col]
        for i in range(r):
            q = mat[i][col] // piv
            if q:
                mat[i] = [a - q * b for a, b in zip(mat[i], mat[r])]
        r += 1
    return tuple(tuple(row) for row in mat[:r] if any(row))


@dataclass(frozen=True)
class Lattice:
    """A finitely generated subgroup of (1/denominator) * Z^ambient_rank.

    The constructor accepts any spanning set and canonicalizes: the stored
    basis is the Hermite normal form of the span, and the denominator is
    reduced by the common content.  Equality of objects is equality of
    lattices.  The zero lattice has an empty basis and denominator 1.
    """

    ambient_rank: int
    basis_rows: tuple[tuple[int, ...], ...] = field(default=())
    denominator: int = 1

    def __post_init__(self):
        n = self.ambient_rank
        if n < 1:
            raise ValueError("ambient rank must be >= 1")
        d = self.denominator
        if not isinstance(d, int) or d < 1:
            raise ValueError("denominator must be a positive integer")
        rows = [list(map(int, r)) for r in self.basis_rows]
        if any(len(r) != n for r in rows):
            raise ValueError("basis rows must have length ambient_rank")
        hnf = _hermite_rows(rows, n)
        if hnf:
            g = d
            for r in hnf:
                for a in r:
                    g = gcd(g, a)
            if g > 1:
                hnf = tuple(tuple(a // g for a in r) for r in hnf)
                d //= g
        else:
            d = 1
        object.__setattr__(self, "basis_rows", hnf)
        object.__setattr__(self, "denominator", d)

    @classmethod
    def standard(cls, n: int) -> "Lattice":
        return cls(n, IntMatrix.identity(n).entries, 1)

    @classmethod
    def zero(cls, n: int) -> "Lattice":
        return cls(n, (), 1)

    @classmethod
    def from_fraction_rows(cls, n: int, rows) -> "Lattice":
        """Lattice spanned by rows of exact rationals."""
        rows = [[Fraction(a) for a in r] for r in rows]
        d = 1
        for r in rows:
            for a in r:
                d = lcm(d, a.denominator)
        ints = [[int(a * d) for a in r] for r in rows]
        return cls(n, tuple(tuple(r) for r in ints), d)

    @property
    def rank(self) -> int:
        return len(self.basis_rows)

    @property
    def basis(self) -> IntMatrix | None:
        """Integer basis matrix (numerators); None for the zero lattice."""
        if not self.basis_rows:
            return None
        return IntMatrix.from_rows(self.basis_rows)

    def fraction_rows(self) -> list[list[Fraction]]:
        d = self.denominator
        return [[Fraction(a, d) for a in row] for row in self.basis_rows]

    def contains_vector(self, vec) -> bool:
        """Membership test for a vector of exact rationals."""
        vec = [Fraction(a) for a in vec]
        if len(vec) != self.ambient_rank:
            raise ValueError("vector length does not match ambient rank")
        if self.rank == 0:
            return all(a == 0 for a in vec)
        x = _solve_left(self.fraction_rows(), vec)
        return x is not None and all(c.denominator == 1 for c in x)

    def contains_lattice(self, other: "Lattice") -> bool:
        if other.ambient_rank != self.ambient_rank:
            raise ValueError("ambient ranks differ")
        return all(self.contains_vector(row) for row in other.fraction_rows())

    def same_rational_span(self, other: "Lattice") -> bool:
        if self.rank != other.rank:
            return False
        frows = self.fraction_rows()
        grows = other.fraction_rows()
        return (all(_solve_left(frows, g) is not None for g in grows)
                and all(_solve_left(grows, f) is not None for f in frows))


def saturate(L: Lattice) -> Lattice:
    """Saturation: the same rational span intersected with the ambient Z^n.

    The quotient of the result inside Z^n is torsion-free; the map is
    idempotent and rank-preserving.
    """
    n = L.ambient_rank
    if L.rank == 0:
        return Lattice.zero(n)
    snf = smith_normal_form(L.basis)
    r = L.rank
    v_inv = _inverse_rational(snf.right_transform)
    rows = [tuple(int(x) for x in row) for row in v_inv[:r]]
    return Lattice(n, tuple(rows), 1)


def lattice_intersect(L1: Lattice, L2: Lattice) -> Lattice:
    """Intersection of two lattices in the same ambient space."""
    if L1.ambient_rank != L2.ambient_rank:
        raise ValueError("ambient ranks differ")
    n = L1.ambient_rank
    if L1.rank == 0 or L2.rank == 0:
        return Lattice.zero(n)
    d = lcm(L1.denominator, L2.denominator)
    b1 = [[a * (d // L1.denominator) for a in row] for row in L1.basis_rows]
    b2 = [[a * (d // L2.denominator) for a in row] for row in L2.basis_rows]
    stacked = IntMatrix.from_rows(b1 + b2)
    r1 = len(b1)
    rows = []
    for ker_row in left_kernel(stacked):
        x = ker_row[:r1]
        rows.append(tuple(sum(x[i] * b1[i][j] for i in range(r1)) for j in range(n)))
    return Lattice(n, tuple(rows), d)


def lattice_quotient(sup: Lattice, sub: Lattice) -> FiniteAbelianGroup:
    """Finite quotient sup/sub, as a canonical finite abelian group."""
    if sup.ambient_rank != sub.ambient_rank:
        raise ValueError("ambient ranks differ")
    if sub.rank == 0 and sup.rank == 0:
        return FiniteAbelianGroup.trivial()
    sup_rows = sup.fraction_rows()
    coeffs = []
    for row in sub.fraction_rows():
        if sup.rank == 0:
            raise NotASublattice("nonzero lattice is not contained in the zero lattice")
        x = _solve_left(sup_rows, row)
        if x is None:
            raise NotASublattice("claimed sublattice leaves the rational span")
        if any(c.denominator != 1 for c in x):
            raise NotASublattice("claimed sublattice has non-integral coordinates")
        coeffs.append([int(c) for c in x])
    if sub.rank != sup.rank:
        raise InfiniteQuotient(f"ranks differ: {sup.rank} vs {sub.rank}")
    snf = smith_normal_form(IntMatrix.from_rows(coeffs))
    return normalize(snf.invariant_factors)


def preimage_lattice(M: IntMatrix, target: Lattice) -> Lattice:
    """The lattice {x : M x is in target}, for nonsingular square M.

    Vectors are rows; M acts on the corresponding column vectors.  The
    result is fractional in general, with denominator dividing
    target.denominator * |det M|.
    """
    if M.rows != M.cols:
        raise SingularMatrix("preimage requires a square matrix")
    if M.cols != target.ambient_rank:
        raise ValueError("matrix size does not match ambient rank")
    if M.det() == 0:
        raise SingularMatrix("matrix is singular")
    n = M.rows
    if target.rank == 0:
        return Lattice.zero(n)
    minv = _inverse_rational(M)
    rows = []
    for trow in target.fraction_rows():
        rows.append([sum(minv[j][k] * trow[k] for k in range(n)) for j in range(n)])
    return Lattice.from_fraction_rows(n, rows)
