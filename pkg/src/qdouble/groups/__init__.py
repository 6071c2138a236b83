"""Finite groups: exact elements, Cayley tables and the catalog."""

from .catalog import EXCEPTIONAL_SU3, CatalogEntry, catalog, catalog_entry, catalog_names
from .core import (
    ConjugacyClass,
    GroupData,
    centralizer,
    conjugacy_classes,
    coset_representative_indices,
    coset_representatives,
    enumerate_group,
    is_subgroup,
    load_permutation_generators,
    structure_invariants,
    subgroup,
)
from .elements import CycMatrix, FFMatrix, Perm, galois_field, parse_cycles

__all__ = [
    "EXCEPTIONAL_SU3",
    "CatalogEntry",
    "ConjugacyClass",
    "CycMatrix",
    "FFMatrix",
    "GroupData",
    "Perm",
    "catalog",
    "catalog_entry",
    "catalog_names",
    "centralizer",
    "conjugacy_classes",
    "coset_representative_indices",
    "coset_representatives",
    "enumerate_group",
    "galois_field",
    "is_subgroup",
    "load_permutation_generators",
    "parse_cycles",
    "structure_invariants",
    "subgroup",
]
