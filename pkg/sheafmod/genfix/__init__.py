"""Seeded generators, named fixtures and brute-force oracles."""

from sheafmod.genfix.fixtures import FIXTURES, fixture, fixtures
from sheafmod.genfix.generators import (
    check_presheaf,
    elements_poset,
    etale_from_presheaf,
    etale_map,
    identity_presheaf_map,
    principal_basis,
    random_etale_instance,
    random_poset,
    random_presheaf,
    random_presheaf_map,
    random_projection_matrix,
    sibling_presheaf_map,
    terminal_presheaf,
)
from sheafmod.genfix.models import EtaleInstance, Fixture, Presheaf, PresheafMap
from sheafmod.genfix.oracle import (
    brute_force,
    brute_force_map,
    cached_map_verdicts,
    cached_verdicts,
    oracle_verify,
    oracle_verify_map,
)

__all__ = [
    "FIXTURES",
    "EtaleInstance",
    "Fixture",
    "Presheaf",
    "PresheafMap",
    "brute_force",
    "brute_force_map",
    "cached_map_verdicts",
    "cached_verdicts",
    "check_presheaf",
    "elements_poset",
    "etale_from_presheaf",
    "etale_map",
    "fixture",
    "fixtures",
    "identity_presheaf_map",
    "oracle_verify",
    "oracle_verify_map",
    "principal_basis",
    "random_etale_instance",
    "random_poset",
    "random_presheaf",
    "random_presheaf_map",
    "random_projection_matrix",
    "sibling_presheaf_map",
    "terminal_presheaf",
]
