"""Orders and element sets of unitary subgroups of modular group algebras.

For a finite p-group G over GF(p^m), computes |V(FG)| under an involution
arising from G: by closed formula (odd p), by the quotient recursion over a
central involution (p = 2), and by an exhaustive certified oracle. Exposes
theta, the S_H bound constructions, and group-order recovery, plus the
`unitary-lab` CLI.
"""

from .errors import UnitaryLabError
from .finite_field import (
    FieldElement,
    FieldSpec,
    make_field,
    parse_field_literal,
    tau,
    tau_image,
)
from .group_algebra import (
    AlgebraElement,
    GroupInvolution,
    algebra_one,
    algebra_zero,
    apply_involution,
    basis_element,
    canonical_star,
    format_algebra_literal,
    from_coeffs,
    ideal_and_quotient,
    involution_from_map,
    parse_algebra_literal,
    skew_symmetric_basis,
)
from .group_catalog import CatalogEntry, build, catalog_entries, sweep
from .group_core import Group, SpecialSets, SubgroupHandle, validate_group
from .unitary import (
    BoundsReport,
    UnitaryResult,
    bounds_and_constructions,
    cayley,
    clear_caches,
    is_unitary,
    recover_group_order,
    s_h_enumerate,
    theta,
    unitary_enumerate_oracle,
    unitary_order_char2,
    unitary_order_odd,
)
from .verify import CheckResult, run_suite

__version__ = "0.1.0"

__all__ = [
    "AlgebraElement",
    "BoundsReport",
    "CatalogEntry",
    "CheckResult",
    "FieldElement",
    "FieldSpec",
    "Group",
    "GroupInvolution",
    "SpecialSets",
    "SubgroupHandle",
    "UnitaryLabError",
    "UnitaryResult",
    "algebra_one",
    "algebra_zero",
    "apply_involution",
    "basis_element",
    "bounds_and_constructions",
    "build",
    "canonical_star",
    "catalog_entries",
    "cayley",
    "clear_caches",
    "format_algebra_literal",
    "from_coeffs",
    "ideal_and_quotient",
    "involution_from_map",
    "is_unitary",
    "make_field",
    "parse_algebra_literal",
    "parse_field_literal",
    "recover_group_order",
    "run_suite",
    "s_h_enumerate",
    "skew_symmetric_basis",
    "sweep",
    "tau",
    "tau_image",
    "theta",
    "unitary_enumerate_oracle",
    "unitary_order_char2",
    "unitary_order_odd",
    "validate_group",
]
