"""Supplementary difference sets on cyclic groups and skew-Hadamard matrices
from the Goethals-Seidel array."""

from .catalog import CatalogEntry, catalog, get_entry
from .cosets import CosetSystem, build_coset_system, expand_index_set, skew_index_predicate
from .diffsets import (
    Fingerprint,
    FamilyWitness,
    SdsFamily,
    declared_parameters,
    families_equivalent,
    fingerprint,
    four_square_check,
    sets_equivalent,
    verify_sds,
)
from .gsmatrix import (
    back_diagonal,
    circulant,
    goethals_seidel,
    gs_matrix_from_blocks,
    is_hadamard,
    is_skew_hadamard,
    sign_vector,
    verify_block_identity,
)
from .modring import ResidueSet, affine_image, difference_table, is_skew_type, negate, paley_set
from .searcher import SearchResult, SearchSpec, cost, search

__version__ = "0.1.0"
