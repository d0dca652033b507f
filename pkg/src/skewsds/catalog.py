"""Built-in difference families over Z_47 and Z_97.

Element and index lists are stored exactly as listed for each family; the
Z_47 families get the Paley set as block 0 so every entry is a four-block
family ready for the Goethals-Seidel array.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .cosets import CosetSystem, build_coset_system, expand_index_set
from .diffsets import SdsFamily, four_square_check
from .modring import paley_set

X_SETS = (
    (2, 3, 5, 6, 7, 9, 10, 11, 12, 13, 14, 17, 18, 19, 20, 21, 22, 25, 27, 30,
     31, 33, 35, 37, 38, 39, 40, 42, 43, 44),
    (1, 3, 6, 7, 8, 11, 13, 14, 15, 19, 20, 21, 24, 27, 30, 33, 39, 41, 43,
     44, 45, 46),
    (3, 6, 8, 10, 11, 12, 14, 20, 21, 23, 24, 25, 26, 27, 30, 31, 32, 34, 35,
     41, 42, 45),
)
Y_SETS = (
    (1, 2, 3, 4, 5, 6, 10, 11, 12, 13, 14, 15, 17, 18, 19, 21, 23, 24, 25, 27,
     28, 29, 30, 31, 35, 38, 41, 43, 44, 46),
    (3, 6, 7, 8, 10, 11, 12, 16, 22, 25, 26, 31, 32, 33, 34, 37, 39, 41, 42,
     43, 44, 46),
    (3, 7, 12, 13, 15, 16, 18, 20, 21, 23, 25, 26, 27, 28, 32, 35, 38, 39, 42,
     44, 45, 46),
)
P_SETS = (
    (0, 2, 4, 5, 9, 10, 12, 16, 17, 19, 21, 22, 23, 25, 27, 28, 35, 36, 37,
     43, 46),
    (0, 1, 2, 6, 8, 9, 11, 15, 16, 19, 25, 32, 33, 35, 36, 37, 38, 40, 44),
    (1, 2, 3, 4, 5, 6, 7, 10, 11, 16, 18, 22, 24, 28, 31, 35, 38, 40, 43),
)
Q_SETS = (
    (4, 5, 6, 8, 11, 12, 15, 20, 21, 23, 25, 26, 28, 29, 30, 31, 32, 36,
     39, 41, 43),
    (1, 2, 5, 7, 13, 14, 21, 22, 24, 26, 31, 32, 35, 36, 37, 39, 40, 42, 46),
    (1, 2, 3, 4, 5, 9, 12, 18, 20, 21, 24, 25, 32, 34, 38, 39, 43, 44, 46),
)

# Subgroup <35> = {1, 35, 61} of the units mod 97.
COSET_MODULUS, COSET_GENERATOR = 97, 35
J_INDICES = (
    (1, 2, 4, 6, 9, 11, 13, 14, 17, 18, 21, 23, 25, 27, 29, 30),
    (1, 2, 6, 7, 8, 9, 10, 11, 12, 13, 23, 27, 29),
    (0, 1, 2, 5, 6, 12, 13, 15, 16, 20, 24, 25, 26, 29, 30, 31),
    (0, 2, 3, 4, 7, 8, 9, 11, 12, 13, 15, 16, 17, 18, 23, 28, 29),
)
K_INDICES = (
    (0, 3, 4, 7, 9, 11, 12, 14, 17, 19, 20, 22, 24, 27, 28, 30),
    (4, 7, 8, 10, 12, 13, 14, 15, 17, 18, 20, 26, 27),
    (0, 1, 2, 3, 6, 7, 8, 11, 12, 14, 20, 23, 24, 25, 28, 31),
    (1, 2, 4, 7, 8, 9, 10, 12, 13, 19, 21, 23, 24, 25, 26, 27, 31),
)

TRIPLE_LAMBDA = {"X": 39, "Y": 39, "P": 24, "Q": 24}


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    family: SdsFamily  # four blocks, skew-type block first
    listed: SdsFamily  # the blocks exactly as published (3 for Z_47, 4 for Z_97)
    skew_block: int
    provenance: str
    expected_squares: str
    index_sets: Optional[tuple[tuple[int, ...], ...]] = None


def coset_system_97() -> CosetSystem:
    return build_coset_system(COSET_MODULUS, COSET_GENERATOR)


def _z47_entry(letter: str, sets, provenance: str) -> CatalogEntry:
    name = f"47-{letter}"
    listed = SdsFamily.from_lists(47, sets, TRIPLE_LAMBDA[letter], name=f"{name} (listed)")
    blocks = (paley_set(47),) + listed.blocks
    family = SdsFamily(47, blocks, 0, name=name)
    family = family.replace(lam=family.gs_lambda())
    return CatalogEntry(name, family, listed, 0, provenance, four_square_check(family).squares)


def _z97_entry(letter: str, index_sets, provenance: str) -> CatalogEntry:
    name = f"97-{letter}"
    system = coset_system_97()
    blocks = tuple(expand_index_set(system, j) for j in index_sets)
    family = SdsFamily(97, blocks, 0, name=name)
    family = family.replace(lam=family.gs_lambda())
    return CatalogEntry(name, family, family, 0, provenance,
                        four_square_check(family).squares, tuple(index_sets))


@lru_cache(maxsize=None)
def _entries() -> tuple[CatalogEntry, ...]:
    return (
        _z47_entry("X", X_SETS, "Z_47 triple X_1..X_3 with the Paley block prepended"),
        _z47_entry("Y", Y_SETS, "Z_47 triple Y_1..Y_3 with the Paley block prepended"),
        _z47_entry("P", P_SETS, "Z_47 triple P_1..P_3 with the Paley block prepended"),
        _z47_entry("Q", Q_SETS, "Z_47 triple Q_1..Q_3 with the Paley block prepended"),
        _z97_entry("U", J_INDICES, "Z_97 unions of <35>-cosets over J_0..J_3"),
        _z97_entry("V", K_INDICES, "Z_97 unions of <35>-cosets over K_0..K_3"),
    )


def catalog() -> list[CatalogEntry]:
    return list(_entries())


def get_entry(name: str) -> CatalogEntry:
    for entry in _entries():
        if entry.name == name:
            return entry
    known = ", ".join(e.name for e in _entries())
    raise KeyError(f"unknown catalog entry {name!r} (known: {known})")
