"""Abelian varieties, isogenies, and subvarieties at the lattice level.

An abelian variety of dimension g is modeled purely by its ambient lattice
Z^{2g}; abelian subvarieties are saturated even-rank sublattices and
isogenies are nonsingular integer matrices mapping the source lattice into
the target lattice.  No complex-analytic data is carried: the complex
structure only constrains which sublattices count as subvarieties, and that
is delegated to the instance kind.

Two kinds of instances are supported:

* ``product``: a product of pairwise non-isogenous simple factors with
  trivial endomorphism rings (asserted by the user, not verified).  The
  abelian subvarieties are then exactly the 2^k coordinate sub-products,
  so enumeration is provably complete.
* ``custom``: an explicit candidate list of subvarieties; completeness is
  user-asserted.  The zero subvariety and the whole variety are always
  included.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .fingroup import FiniteAbelianGroup, normalize
from .intlinalg import (
    IntMatrix,
    Lattice,
    lattice_intersect,
    lattice_quotient,
    preimage_lattice,
    saturate,
    smith_normal_form,
)


class MalformedSpec(ValueError):
    """Instance description violates the schema."""


class UnsaturatedSubvariety(ValueError):
    """A declared subvariety lattice is not saturated."""


class OddRankSubvariety(ValueError):
    """A declared subvariety lattice has odd rank."""


class InvalidMultiplier(ValueError):
    """Multiplication-by-m requires m >= 1."""


class ForeignSubvariety(ValueError):
    """Subvariety does not live in the isogeny's source instance."""


class IncompatibleComposition(ValueError):
    """Isogeny composition with mismatched source/target."""


@dataclass(frozen=True)
class Subvariety:
    label: str
    lattice: Lattice

    @property
    def dim(self) -> int:
        return self.lattice.rank // 2


@dataclass(frozen=True)
class AbelianVarietyInstance:
    label: str
    kind: str  # "product" | "custom"
    ambient_rank: int
    factors: tuple[tuple[str, int], ...] = ()  # (label, dim) per product factor
    declared_subvarieties: tuple[Subvariety, ...] = ()
    completeness_asserted: bool = False

    @property
    def dim(self) -> int:
        return self.ambient_rank // 2

    @property
    def assumptions(self) -> tuple[str, ...]:
        if self.kind == "product":
            return (
                "product factors assumed pairwise non-isogenous, simple, "
                "with endomorphism ring Z (asserted by input, not verified)",
            )
        word = "asserted complete" if self.completeness_asserted else "declared incomplete"
        return (f"custom subvariety family {word} by input (not verified)",)


def build_instance(name: str, variety: dict) -> AbelianVarietyInstance:
    """Validate an instance description and construct the value object."""
    if not isinstance(variety, dict):
        raise MalformedSpec("variety description must be a mapping")
    kind = variety.get("kind")
    if kind == "product":
        allowed = {"kind", "factors"}
        if set(variety) != allowed:
            raise MalformedSpec(f"product variety fields must be exactly {sorted(allowed)}")
        raw = variety["factors"]
        if not isinstance(raw, list) or not raw:
            raise MalformedSpec("factors must be a nonempty list")
        factors = []
        for f in raw:
            if not isinstance(f, dict) or set(f) != {"label", "dim"}:
                raise MalformedSpec("each factor needs exactly the fields label, dim")
            if not isinstance(f["label"], str) or not f["label"]:
                raise MalformedSpec("factor labels must be nonempty strings")
            if not isinstance(f["dim"], int) or f["dim"] < 1:
                raise MalformedSpec("factor dims must be integers >= 1")
            factors.append((f["label"], f["dim"]))
        labels = [lab for lab, _ in factors]
        if len(set(labels)) != len(labels):
            raise MalformedSpec("factor labels must be distinct")
        ambient = 2 * sum(d for _, d in factors)
        return AbelianVarietyInstance(
            label=name, kind="product", ambient_rank=ambient, factors=tuple(factors)
        )
    if kind == "custom":
        allowed = {"kind", "ambient_rank", "subvarieties", "complete"}
        if set(variety) != allowed:
            raise MalformedSpec(f"custom variety fields must be exactly {sorted(allowed)}")
        ambient = variety["ambient_rank"]
        if not isinstance(ambient, int) or ambient < 2 or ambient % 2 != 0:
            raise MalformedSpec("ambient_rank must be an even integer >= 2")
        complete = variety["complete"]
        if not isinstance(complete, bool):
            raise MalformedSpec("complete must be a boolean")
        subs = []
        seen_labels = set()
        seen_lattices = set()
        for s in variety["subvarieties"]:
            if not isinstance(s, dict) or set(s) != {"label", "basis"}:
                raise MalformedSpec("each subvariety needs exactly the fields label, basis")
            label = s["label"]
            if not isinstance(label, str) or not label or label in seen_labels:
                raise MalformedSpec("subvariety labels must be distinct nonempty strings")
            seen_labels.add(label)
            try:
                lat = Lattice(ambient, tuple(tuple(r) for r in s["basis"]), 1)
            except (TypeError, ValueError) as exc:
                raise MalformedSpec(f"bad basis for subvariety {label}: {exc}") from exc
            if lat.rank != len(s["basis"]):
                raise MalformedSpec(f"basis rows of subvariety {label} are dependent")
            if lat.rank % 2 != 0:
                raise OddRankSubvariety(f"subvariety {label} has odd rank {lat.rank}")
            if saturate(lat) != lat:
                raise UnsaturatedSubvariety(f"subvariety {label} basis is not saturated")
            if lat in seen_lattices:
                raise MalformedSpec(f"subvariety {label} duplicates another lattice")
            seen_lattices.add(lat)
            subs.append(Subvariety(label, lat))
        return AbelianVarietyInstance(
            label=name,
            kind="custom",
            ambient_rank=ambient,
            declared_subvarieties=tuple(subs),
            completeness_asserted=complete,
        )
    raise MalformedSpec(f"unknown variety kind {kind!r}")


@dataclass(frozen=True)
class Isogeny:
    source: AbelianVarietyInstance
    target: AbelianVarietyInstance
    matrix: IntMatrix
    degree: int = field(init=False)

    def __post_init__(self):
        n = self.source.ambient_rank
        if self.target.ambient_rank != n:
            raise ValueError("source and target ambient ranks differ")
        if self.matrix.rows != n or self.matrix.cols != n:
            raise ValueError("isogeny matrix shape does not match ambient rank")
        d = self.matrix.det()
        if d == 0:
            raise ValueError("isogeny matrix must be nonsingular")
        object.__setattr__(self, "degree", abs(d))


def mult_by_m(A: AbelianVarietyInstance, m: int) -> Isogeny:
    """The multiplication-by-m endomorphism, with matrix m * Id."""
    if not isinstance(m, int) or m < 1:
        raise InvalidMultiplier(f"multiplier must be an integer >= 1, got {m}")
    return Isogeny(A, A, IntMatrix.scalar(A.ambient_rank, m))


def kernel(alpha: Isogeny) -> FiniteAbelianGroup:
    """Kernel of the isogeny: the target lattice modulo the image lattice."""
    return normalize(smith_normal_form(alpha.matrix).invariant_factors)


def enumerate_subvarieties(A: AbelianVarietyInstance) -> tuple[list[Subvariety], bool]:
    """The known abelian subvarieties of A and whether the list is complete.

    Product instances enumerate all 2^k coordinate sub-products (complete by
    the non-isogenous simple factor assumption); custom instances return the
    declared list together with 0 and A, with user-asserted completeness.
    """
    n = A.ambient_rank
    zero = Subvariety("0", Lattice.zero(n))
    full = Subvariety("A", Lattice.standard(n))
    if A.kind == "product":
        offsets = []
        pos = 0
        for _, d in A.factors:
            offsets.append((pos, pos + 2 * d))
            pos += 2 * d
        subs = []
        k = len(A.factors)
        for mask in range(1 << k):
            chosen = [i for i in range(k) if mask & (1 << i)]
            if not chosen:
                subs.append(zero)
                continue
            if len(chosen) == k:
                subs.append(full)
                continue
            rows = []
            for i in chosen:
                lo, hi = offsets[i]
                for j in range(lo, hi):
                    rows.append(tuple(int(j == c) for c in range(n)))
            label = "x".join(A.factors[i][0] for i in chosen)
            subs.append(Subvariety(label, Lattice(n, tuple(rows), 1)))
        subs.sort(key=lambda s: (s.dim, s.label))
        return subs, True
    subs = [zero, full]
    known = {zero.lattice, full.lattice}
    for s in A.declared_subvarieties:
        if s.lattice not in known:
            known.add(s.lattice)
            subs.append(s)
    subs.sort(key=lambda s: (s.dim, s.label))
    return subs, A.completeness_asserted


def kernel_intersect(alpha: Isogeny, B: Subvariety) -> FiniteAbelianGroup:
    """The finite group ker(alpha) meet B.

    Computed at the lattice level as (M^{-1}(target lattice) meet the
    rational span of B) modulo B's lattice.
    """
    n = alpha.source.ambient_rank
    if B.lattice.ambient_rank != n:
        raise ForeignSubvariety("subvariety ambient rank does not match the isogeny")
    if B.lattice.rank == 0:
        return FiniteAbelianGroup.trivial()
    pre = preimage_lattice(alpha.matrix, Lattice.standard(n))
    # pre is contained in (1/d) Z^n, so intersecting with (1/d) * sat(B)
    # realizes the intersection with the rational span of B.
    span_window = Lattice(n, B.lattice.basis_rows, pre.denominator)
    met = lattice_intersect(pre, span_window)
    return lattice_quotient(met, B.lattice)


def compose(beta: Isogeny, alpha: Isogeny) -> Isogeny:
    """The composite beta after alpha."""
    if alpha.target != beta.source:
        raise IncompatibleComposition("target of the first isogeny must be the source of the second")
    return Isogeny(alpha.source, beta.target, beta.matrix @ alpha.matrix)
