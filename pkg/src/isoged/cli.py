"""Command-line interface: instance ingestion, bound reports, calculators,
golden-example verification, and the randomized oracle runner.

Exit codes: 0 success, 2 invalid input, 3 certification refused,
4 soundness/oracle failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__, abvar, edim, fingroup, groupbounds, intlinalg, randomized
from .abvar import (
    AbelianVarietyInstance,
    IncompatibleComposition,
    InvalidMultiplier,
    Isogeny,
    MalformedSpec,
    OddRankSubvariety,
    UnsaturatedSubvariety,
)
from .edim import CoprimalityFails, Uncertified
from .fingroup import InvalidFactor, NotPrime, ZeroValuation
from .groupbounds import ActionQuery, ChiOutOfRange, DegreeTooSmall, SurfaceChern, ZeroChi
from .intlinalg import IntMatrix, SingularMatrix

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_REFUSED = 3
EXIT_SOUNDNESS = 4

_INPUT_ERRORS = (
    MalformedSpec,
    UnsaturatedSubvariety,
    OddRankSubvariety,
    InvalidMultiplier,
    IncompatibleComposition,
    SingularMatrix,
    InvalidFactor,
    NotPrime,
    ZeroValuation,
    ZeroChi,
    ChiOutOfRange,
    DegreeTooSmall,
    ValueError,
    OSError,
    json.JSONDecodeError,
)


def parse_instance(path: str) -> tuple[AbelianVarietyInstance, Isogeny]:
    """Load and validate an instance file (JSON, exact schema, unknown fields rejected)."""
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict) or set(doc) != {"name", "variety", "isogeny"}:
        raise MalformedSpec("top-level fields must be exactly name, variety, isogeny")
    name = doc["name"]
    if not isinstance(name, str) or not name:
        raise MalformedSpec("name must be a nonempty string")
    instance = abvar.build_instance(name, doc["variety"])
    iso = doc["isogeny"]
    if not isinstance(iso, dict):
        raise MalformedSpec("isogeny description must be a mapping")
    if iso.get("kind") == "mult":
        if set(iso) != {"kind", "m"}:
            raise MalformedSpec("mult isogeny fields must be exactly kind, m")
        if not isinstance(iso["m"], int):
            raise MalformedSpec("m must be an integer")
        return instance, abvar.mult_by_m(instance, iso["m"])
    if iso.get("kind") == "matrix":
        if set(iso) != {"kind", "entries"}:
            raise MalformedSpec("matrix isogeny fields must be exactly kind, entries")
        entries = iso["entries"]
        n = instance.ambient_rank
        if (not isinstance(entries, list) or len(entries) != n
                or any(not isinstance(r, list) or len(r) != n for r in entries)
                or any(not isinstance(a, int) for r in entries for a in r)):
            raise MalformedSpec(f"entries must be a {n}x{n} integer matrix")
        matrix = IntMatrix.from_rows(entries)
        if matrix.det() == 0:
            raise SingularMatrix("isogeny matrix must be nonsingular")
        return instance, Isogeny(instance, instance, matrix)
    raise MalformedSpec(f"unknown isogeny kind {iso.get('kind')!r}")


# ---------------------------------------------------------------------------
# Report assembly


def _frac_str(v: Fraction) -> str:
    return str(v)


def report_to_dict(name: str, alpha: Isogeny, report: edim.EdBoundReport) -> dict:
    return {
        "tool_version": __version__,
        "name": name,
        "dim": alpha.source.dim,
        "degree": alpha.degree,
        "kernel": list(abvar.kernel(alpha).invariant_factors),
        "enumeration_complete": report.enumeration_complete,
        "coprimality": report.coprimality,
        "lower": report.lower,
        "upper": report.upper,
        "exact": report.exact,
        "lower_witness": [
            {
                "subvariety": w.subvariety,
                "dim": w.dim_b,
                "prime": w.prime,
                "value": _frac_str(w.value),
            }
            for w in report.lower_witness
        ],
        "upper_witness": {
            "subvariety": report.upper_witness.subvariety,
            "dim": report.upper_witness.dim_b,
            "value": report.upper_witness.value,
        },
        "assumptions": list(report.assumptions),
    }


def dump_json(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2)


def render_bounds_text(name: str, alpha: Isogeny, report: edim.EdBoundReport) -> str:
    lines = [
        f"instance: {name}",
        f"dim A = {alpha.source.dim}, degree = {alpha.degree}",
        f"kernel: {abvar.kernel(alpha)}",
        f"subvariety family: {'complete' if report.enumeration_complete else 'INCOMPLETE'}",
    ]
    for a in report.assumptions:
        lines.append(f"assumption: {a}")
    if report.lower is None:
        lines.append("lower bound: uncertified (family incomplete; refusing)")
    else:
        lines.append(f"lower bound (certified): {report.lower}")
        for w in report.lower_witness:
            p = "-" if w.prime is None else str(w.prime)
            lines.append(f"  B={w.subvariety} (dim {w.dim_b}), p={p}: {_frac_str(w.value)}")
    uw = report.upper_witness
    lines.append(f"upper bound: {report.upper} via B={uw.subvariety} (dim {uw.dim_b}, value {uw.value})")
    if report.exact is not None:
        lines.append(f"exact essential dimension: {report.exact} (degree coprime to (dim A)!)")
        lines.append(f"incompressible: {'yes' if report.exact == alpha.source.dim else 'no'}")
    elif report.lower is not None:
        lines.append(f"incompressible: {'yes' if report.lower == alpha.source.dim else 'no'}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Commands


def cmd_kernel(args) -> int:
    _, alpha = parse_instance(args.file)
    print(f"degree = {alpha.degree}")
    print(f"kernel = {abvar.kernel(alpha)}")
    return EXIT_OK


def cmd_subvarieties(args) -> int:
    instance, _ = parse_instance(args.file)
    subs, complete = abvar.enumerate_subvarieties(instance)
    print(f"family: {'complete' if complete else 'INCOMPLETE'} ({len(subs)} members)")
    for s in subs:
        print(f"  {s.label}: dim {s.dim}")
    return EXIT_OK


def cmd_bounds(args) -> int:
    instance, alpha = parse_instance(args.file)
    report = edim.bound_report(alpha)
    if args.require_lower and report.lower is None:
        print(
            "certified lower bound unavailable: subvariety enumeration is incomplete",
            file=sys.stderr,
        )
        return EXIT_REFUSED
    if args.json:
        print(dump_json(report_to_dict(instance.label, alpha, report)))
    else:
        print(render_bounds_text(instance.label, alpha, report))
    return EXIT_OK


def cmd_exact(args) -> int:
    instance, alpha = parse_instance(args.file)
    try:
        value, report = edim.exact_ed(alpha)
    except (Uncertified, CoprimalityFails) as exc:
        print(f"exact value refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    print(render_bounds_text(instance.label, alpha, report))
    return EXIT_OK


def cmd_groupbound(args) -> int:
    kind = args.kind
    n, p, chi = args.n, args.p, args.chi

    def need_p():
        if p is None:
            raise ValueError(f"--p is required for kind {kind}")
        return p

    if kind == "todd":
        print(f"todd denominator exponent: {groupbounds.todd_denominator_exponent(n, need_p())}")
    elif kind == "rc":
        print(f"rank bound (rationally connected): {groupbounds.rc_rank_bound(n, need_p())}")
    elif kind == "orbit":
        if chi is None:
            raise ValueError("--chi is required for kind orbit")
        raw, integral = groupbounds.orbit_index_bound(ActionQuery(n, need_p(), chi))
        print(f"orbit index exponent bound: raw {raw}, integral {integral}")
    elif kind == "abelian":
        if chi is None:
            raise ValueError("--chi is required for kind abelian")
        r = groupbounds.abelian_rank_bound(ActionQuery(n, need_p(), chi))
        g1, g2 = r.decomposition
        print(f"rank bound: raw {r.raw}, integral {r.integral}")
        print(f"decomposition: rank(G1) <= {g1}, |G2| <= {g2}")
    elif kind == "symalt":
        ms, ma = groupbounds.sym_alt_degree_bounds(n)
        print(f"max symmetric degree: {ms}")
        print(f"max alternating degree: {ma}")
    elif kind == "local":
        idx, rk = groupbounds.local_ring_bounds(n, need_p())
        print(f"index exponent cap: {idx}")
        print(f"rank cap: {rk}")
    elif kind == "cy":
        if chi is None:
            raise ValueError("--chi is required for kind cy")
        print(f"rank bound (small chi): {groupbounds.cy_rank_bound(n, need_p(), chi)}")
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(f"unknown kind {kind}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# Golden fixtures


def _product_of_elliptic_curves(k: int) -> AbelianVarietyInstance:
    return abvar.build_instance(
        "A", {"kind": "product", "factors": [{"label": f"E{i + 1}", "dim": 1} for i in range(k)]}
    )


def _simple_instance(g: int) -> AbelianVarietyInstance:
    return abvar.build_instance(
        "A", {"kind": "custom", "ambient_rank": 2 * g, "subvarieties": [], "complete": True}
    )


def _diagonal_isogeny(A: AbelianVarietyInstance, diag: list[int]) -> Isogeny:
    n = A.ambient_rank
    return Isogeny(A, A, IntMatrix.from_rows(
        [[diag[i] if i == j else 0 for j in range(n)] for i in range(n)]
    ))


def golden_fixtures() -> list[tuple[str, "callable"]]:
    """Worked examples with independently known answers."""

    def mult_map_incompressible():
        for g in (1, 2):
            for m in (2, 3):
                A = _product_of_elliptic_curves(g)
                report = edim.bound_report(abvar.mult_by_m(A, m))
                assert report.lower == report.upper == g, (g, m, report)

    def mult_by_3_kernel():
        A = _product_of_elliptic_curves(1)
        assert abvar.kernel(abvar.mult_by_m(A, 3)) == fingroup.normalize([3, 3])

    def mult_map_kernel_meets_every_subvariety_fully():
        A = _product_of_elliptic_curves(2)
        alpha = abvar.mult_by_m(A, 4)
        subs, complete = abvar.enumerate_subvarieties(A)
        assert complete
        for B in subs:
            L = abvar.kernel_intersect(alpha, B)
            assert fingroup.rank_p(L, 2) == 2 * B.dim, B.label

    def simple_variety_formula():
        for g in (2, 3, 4):
            A = _simple_instance(g)
            alpha = _diagonal_isogeny(A, [5] + [1] * (2 * g - 1))
            value, _ = edim.exact_ed(alpha)
            assert value == 1, (g, value)

    def mult_map_group_ranks():
        for g in (1, 2, 3):
            for m in (2, 3, 5):
                G = fingroup.normalize([m] * (2 * g))
                assert fingroup.rank(G) == 2 * g
                for p in (2, 3, 5):
                    expected = 2 * g if m % p == 0 else 0
                    assert fingroup.rank_p(G, p) == expected

    def valuation_of_minus_four():
        assert fingroup.nu_p(-4, 2) == 2

    def todd_exponent():
        assert groupbounds.todd_denominator_exponent(3, 2) == 3

    def rank_bound_sharpness():
        # (Z/2)^{2n} acting coordinatewise on a product of n lines.
        for n in (1, 2, 3):
            assert groupbounds.rc_rank_bound(n, 2) == 2 * n
        q = groupbounds.abelian_rank_bound(ActionQuery(2, 2, 1))
        assert q.integral == 4
        # (Z/p)^p acting diagonally on the degree-p Fermat hypersurface of dim p-1.
        for p in (2, 3, 5, 7):
            assert groupbounds.rc_rank_bound(p - 1, p) == p

    def sym_alt_degrees():
        for n in range(1, 11):
            assert groupbounds.sym_alt_degree_bounds(n) == (4 * n + 1, 4 * n + 3)
            assert groupbounds.elementary_two_witness(4 * n + 2) == 2 * n + 1
            assert groupbounds.elementary_two_witness(4 * n + 4, alternating=True) == 2 * n + 1

    def local_ring_caps():
        assert groupbounds.local_ring_bounds(2, 2) == (1, 3)
        for n in range(1, 8):
            assert groupbounds.local_ring_bounds(n, 2)[1] == 2 * n - 1

    def small_chi_branch():
        # Rank-5 elementary 2-group on the K3 intersection of three diagonal quadrics.
        assert groupbounds.cy_rank_bound(2, 2, 2) == 5

    def blown_up_quadric_surface():
        s = groupbounds.blowup_chern(SurfaceChern(8, 4), 12)
        assert (s.c1_sq, s.c2) == (-4, 16)
        assert groupbounds.chern_divisibility_test(-4, 2, 3) is False
        assert groupbounds.chern_divisibility_test(-4, 2, 2) is True

    def abelian_cover_combinators():
        G = fingroup.normalize([2, 4, 4])
        assert edim.ed_upper_abelian_cover(G) == 3
        total = 0
        for _ in range(fingroup.rank(G)):
            total = edim.ed_upper_fiber_product(total, 1)
        assert total == fingroup.rank(G)

    return [
        ("mult-by-m maps are incompressible (elliptic products, m=2,3)", mult_map_incompressible),
        ("mult-by-3 kernel on an elliptic curve is (Z/3)^2", mult_by_3_kernel),
        ("mult-by-m kernel meets each subvariety in full 2*dim rank", mult_map_kernel_meets_every_subvariety_fully),
        ("simple variety with prime cyclic kernel has exact value 1", simple_variety_formula),
        ("rank and p-rank of (Z/m)^(2g)", mult_map_group_ranks),
        ("2-adic valuation of -4 is 2", valuation_of_minus_four),
        ("Todd denominator exponent (n=3, p=2) is 3", todd_exponent),
        ("rank bounds on rationally connected varieties are sharp", rank_bound_sharpness),
        ("symmetric/alternating degree caps 4n+1 and 4n+3", sym_alt_degrees),
        ("local ring caps, rank cap 2n-1 at p=2", local_ring_caps),
        ("small-chi rank cap 5 for n=2, p=2, chi=2", small_chi_branch),
        ("12-point blow-up of a quadric surface: c1^2=-4 kills divisibility by 8", blown_up_quadric_surface),
        ("abelian cover and fiber product upper-bound combinators", abelian_cover_combinators),
    ]


def cmd_verify_paper(args) -> int:
    failures = 0
    for name, fn in golden_fixtures():
        try:
            fn()
        except AssertionError as exc:
            failures += 1
            print(f"FAIL  {name}: {exc}")
        else:
            print(f"PASS  {name}")
    if failures:
        print(f"{failures} fixture(s) failed")
        return EXIT_SOUNDNESS
    print("all fixtures passed")
    return EXIT_OK


def cmd_oracle(args) -> int:
    results = randomized.run_all_suites(
        seed=args.seed, trials=args.trials, max_dim=args.max_dim, max_entry=args.max_entry
    )
    bad = 0
    for r in results:
        if r.ok:
            print(f"PASS  {r.name}: {r.trials} trials")
        else:
            bad += 1
            print(f"FAIL  {r.name}: {len(r.failures)} failure(s)")
            for f in r.failures[:10]:
                print(f"      {f}")
    if bad:
        return EXIT_SOUNDNESS
    print(f"all oracle suites passed (seed {args.seed})")
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="isoged",
        description="Certified essential-dimension bounds for isogenies of abelian varieties",
    )
    parser.add_argument("--version", action="version", version=f"isoged {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kernel", help="kernel structure of the isogeny")
    p.add_argument("file")
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("subvarieties", help="list the subvariety family")
    p.add_argument("file")
    p.set_defaults(func=cmd_subvarieties)

    p = sub.add_parser("bounds", help="lower/upper/exact bound report")
    p.add_argument("file")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--require-lower", action="store_true",
                   help="exit 3 unless a certified lower bound is available")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("exact", help="exact value under the coprime-degree hypothesis")
    p.add_argument("file")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("groupbound", help="closed-form group-action bounds")
    p.add_argument("--kind", required=True,
                   choices=["rc", "abelian", "orbit", "symalt", "local", "cy", "todd"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int)
    p.add_argument("--chi", type=int)
    p.set_defaults(func=cmd_groupbound)

    p = sub.add_parser("verify-paper", help="run the golden example battery")
    p.set_defaults(func=cmd_verify_paper)

    p = sub.add_parser("oracle", help="randomized brute-force cross-checks")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-dim", type=int, default=6)
    p.add_argument("--max-entry", type=int, default=20)
    p.set_defaults(func=cmd_oracle)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (Uncertified, CoprimalityFails) as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except _INPUT_ERRORS as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID


def console_main() -> None:  # pragma: no cover - thin wrapper
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    console_main()
