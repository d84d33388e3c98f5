"""B-modules, B-locales, supports, openness, local sections and étale-ness."""

from sheafmod.bmodule.construct import (
    blocale_from_map,
    free_module,
    make_blocale,
    module_from_map,
    projection_of,
    unit_vectors,
)
from sheafmod.bmodule.laws import check_meet_distribution, check_module_laws, check_stability
from sheafmod.bmodule.models import BLocale, BModule, ModuleHom, Projection
from sheafmod.bmodule.morphism import (
    check_map_roundtrip,
    check_module_hom,
    compose,
    identity_hom,
    join_homs,
    require_module_hom,
    zero_hom,
)
from sheafmod.bmodule.support import (
    check_open_conditions,
    check_support_characterization,
    compute_support,
    is_etale,
    local_sections,
    support,
    support_candidate,
)

__all__ = [
    "BLocale",
    "BModule",
    "ModuleHom",
    "Projection",
    "blocale_from_map",
    "check_map_roundtrip",
    "check_meet_distribution",
    "check_module_hom",
    "check_module_laws",
    "check_open_conditions",
    "check_stability",
    "check_support_characterization",
    "compose",
    "compute_support",
    "free_module",
    "identity_hom",
    "is_etale",
    "join_homs",
    "local_sections",
    "make_blocale",
    "module_from_map",
    "projection_of",
    "require_module_hom",
    "support",
    "support_candidate",
    "unit_vectors",
    "zero_hom",
]
