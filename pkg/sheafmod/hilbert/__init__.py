"""Inner products, Hilbert B-modules, Hilbert bases and the étale equivalence."""

from sheafmod.hilbert.basis import (
    based,
    basis_properties,
    check_basis_converse,
    check_projection_entries,
    etale_based,
    etale_equivalence_check,
    find_basis,
    is_hilbert_basis,
    projectivity_split,
    reconstruct,
    support_from_inner,
)
from sheafmod.hilbert.inner import (
    check_axioms,
    check_nondegenerate,
    check_strict,
    check_supported,
    check_weakly_nondegenerate,
    inner_from_support,
    inner_from_table,
    make_hilbert,
    support_hilbert,
)
from sheafmod.hilbert.models import (
    BasedModule,
    EquivalenceVerdict,
    HilbertBasis,
    HilbertModule,
    InnerProduct,
    ProjectivitySplit,
    Verdict,
)

__all__ = [
    "BasedModule",
    "EquivalenceVerdict",
    "HilbertBasis",
    "HilbertModule",
    "InnerProduct",
    "ProjectivitySplit",
    "Verdict",
    "based",
    "basis_properties",
    "check_axioms",
    "check_basis_converse",
    "check_nondegenerate",
    "check_projection_entries",
    "check_strict",
    "check_supported",
    "check_weakly_nondegenerate",
    "etale_based",
    "etale_equivalence_check",
    "find_basis",
    "inner_from_support",
    "inner_from_table",
    "is_hilbert_basis",
    "make_hilbert",
    "projectivity_split",
    "reconstruct",
    "support_from_inner",
    "support_hilbert",
]
