"""Adjoints, sheaf homomorphisms and maps of B-locales."""

from sheafmod.homs.adjoint import (
    adjoint,
    adjoint_table,
    check_dagger_is_transpose,
    check_strong_duality,
    is_adjointable_iff_hom_check,
)
from sheafmod.homs.maps import (
    check_blocale_hom,
    check_dagger_is_direct_image,
    check_direct_image_is_sheaf_hom,
    check_meet_preservation,
    check_section_meet_lemmas,
    direct_image,
    direct_image_table,
    functor_S_iso_check,
    identity_map,
    make_map,
    map_from_sheaf_hom,
)
from sheafmod.homs.models import (
    Adjoint,
    BLocaleMap,
    NaturalTransformation,
    SectionsPresheaf,
    SheafHom,
)
from sheafmod.homs.sheaf import is_sheaf_hom, make_sheaf_hom, presheaf_of_hom, sections_presheaf

__all__ = [
    "Adjoint",
    "BLocaleMap",
    "NaturalTransformation",
    "SectionsPresheaf",
    "SheafHom",
    "adjoint",
    "adjoint_table",
    "check_blocale_hom",
    "check_dagger_is_direct_image",
    "check_dagger_is_transpose",
    "check_direct_image_is_sheaf_hom",
    "check_meet_preservation",
    "check_section_meet_lemmas",
    "check_strong_duality",
    "direct_image",
    "direct_image_table",
    "functor_S_iso_check",
    "identity_map",
    "is_adjointable_iff_hom_check",
    "is_sheaf_hom",
    "make_map",
    "make_sheaf_hom",
    "map_from_sheaf_hom",
    "presheaf_of_hom",
    "sections_presheaf",
]
