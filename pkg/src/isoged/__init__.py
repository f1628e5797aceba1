"""Certified essential-dimension bounds for isogenies of complex abelian
varieties, with companion bounds on abelian p-group actions.

All arithmetic is exact (arbitrary-precision integers and rationals)."""

__version__ = "0.1.0"

from .abvar import (
    AbelianVarietyInstance,
    Isogeny,
    Subvariety,
    build_instance,
    compose,
    enumerate_subvarieties,
    kernel,
    kernel_intersect,
    mult_by_m,
)
from .edim import (
    EdBoundReport,
    bound_report,
    coprimality_check,
    ed_upper_abelian_cover,
    ed_upper_fiber_product,
    exact_ed,
    is_incompressible,
    lower_bound,
    upper_bound,
)
from .fingroup import FiniteAbelianGroup, direct_sum, normalize, nu_p, rank, rank_p
from .intlinalg import (
    IntMatrix,
    Lattice,
    SnfResult,
    determinantal_divisors,
    lattice_intersect,
    lattice_quotient,
    preimage_lattice,
    saturate,
    smith_normal_form,
)

__all__ = [
    "AbelianVarietyInstance", "Isogeny", "Subvariety", "build_instance", "compose",
    "enumerate_subvarieties", "kernel", "kernel_intersect", "mult_by_m",
    "EdBoundReport", "bound_report", "coprimality_check", "ed_upper_abelian_cover",
    "ed_upper_fiber_product", "exact_ed", "is_incompressible", "lower_bound", "upper_bound",
    "FiniteAbelianGroup", "direct_sum", "normalize", "nu_p", "rank", "rank_p",
    "IntMatrix", "Lattice", "SnfResult", "determinantal_divisors", "lattice_intersect",
    "lattice_quotient", "preimage_lattice", "saturate", "smith_normal_form",
    "__version__",
]
