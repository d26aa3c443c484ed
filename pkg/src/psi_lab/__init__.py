"""psi-lab: exact sum-of-element-orders computations on finite groups.

The package computes psi (the sum of element orders) and its cyclic
normalization psi' exactly, realizes the named group families, enumerates
all groups of small orders, and verifies the sharp psi'-threshold
criteria for nilpotency, solvability, and supersolvability with
witnessed, machine-readable verdicts.
"""

from .families import (
    Abelian,
    Alt4,
    Alt5,
    Cyclic,
    Dihedral,
    DirectProduct,
    GroupSpec,
    KLEIN,
    Modular,
    NoClosedForm,
    Quaternion,
    Semidihedral,
    SemidirectCyclic,
    Sym3,
    build,
    canonical_label,
    psi_closed_form,
    spec_order,
)
from .kernel import (
    Automorphism,
    CapExceeded,
    ConcreteGroup,
    Subgroup,
    direct_product,
    element_order,
    from_table,
    generated_subgroup,
    is_normal,
    order_spectrum,
    quotient,
    semidirect_product,
)
from .psi import (
    cyclic_lower_bound,
    herzog_bound_f,
    psi,
    psi_cyclic,
    psi_cyclic_oracle,
    psi_prime,
    sylow_ratio,
)
from .structure import (
    IsomorphismCertificate,
    has_cyclic_normal_sylow,
    is_cyclic,
    is_nilpotent,
    is_solvable,
    is_supersolvable,
    isomorphic,
    maximal_subgroups,
    sylow_subgroup,
)
from .enumeration import OrderCatalog, abelian_groups_of_order, all_groups_of_order

__version__ = "0.1.0"

__all__ = [
    "Abelian", "Alt4", "Alt5", "Automorphism", "CapExceeded", "ConcreteGroup",
    "Cyclic", "Dihedral", "DirectProduct", "GroupSpec", "IsomorphismCertificate",
    "KLEIN", "Modular", "NoClosedForm", "OrderCatalog", "Quaternion",
    "Semidihedral", "SemidirectCyclic", "Subgroup", "Sym3",
    "abelian_groups_of_order", "all_groups_of_order", "build",
    "canonical_label", "cyclic_lower_bound", "direct_product", "element_order",
    "from_table", "generated_subgroup", "has_cyclic_normal_sylow",
    "herzog_bound_f", "is_cyclic", "is_nilpotent", "is_normal", "is_solvable",
    "is_supersolvable", "isomorphic", "maximal_subgroups", "order_spectrum",
    "psi", "psi_closed_form", "psi_cyclic", "psi_cyclic_oracle", "psi_prime",
    "quotient", "semidirect_product", "spec_order", "sylow_ratio",
    "sylow_subgroup",
]
