"""Cosets of a cyclic subgroup H of the unit group of Z_p, in sign-paired order.

Cosets are numbered so that ``alpha[2i + 1] == -alpha[2i]``; the even-indexed
ones are sorted by their smallest element.  For (97, 35) this reproduces the
table 1H, 2H, 3H, 4H, 5H, 6H, 7H, 9H, 10H, 12H, ..., 26H.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .modring import ResidueSet, check_modulus, is_prime


@dataclass(frozen=True)
class CosetSystem:
    n: int
    generator: int
    subgroup: ResidueSet
    cosets: tuple[ResidueSet, ...]

    @property
    def coset_count(self) -> int:
        return len(self.cosets)

    @property
    def subgroup_order(self) -> int:
        return len(self.subgroup)

    @property
    def representatives(self) -> list[int]:
        return [int(c.members[0]) for c in self.cosets]

    def coset_of(self) -> np.ndarray:
        """Array mapping each nonzero residue to its coset index (-1 at 0)."""
        owner = np.full(self.n, -1, dtype=np.int64)
        for i, c in enumerate(self.cosets):
            owner[c.members] = i
        return owner


def partner(i: int) -> int:
    """Index of the coset -alpha_i."""
    return i ^ 1


def build_coset_system(n: int, h: int) -> CosetSystem:
    n = check_modulus(n)
    if not is_prime(n):
        raise ValueError(f"coset systems need a prime modulus, got {n}")
    h %= n
    if h == 0:
        raise ValueError("subgroup generator must be a unit")
    elements = [1]
    while (elements[-1] * h) % n != 1:
        elements.append((elements[-1] * h) % n)
    if (n - 1) in elements and n > 2:
        raise ValueError(f"<{h}> contains -1 mod {n}; cosets cannot be sign-paired")
    if n == 2:
        raise ValueError("Z_2 has no sign pairing (-1 == 1)")
    sub = np.array(elements, dtype=np.int64)

    covered = np.zeros(n, dtype=bool)
    cosets: list[ResidueSet] = []
    for a in range(1, n):
        if covered[a]:
            continue
        pos = (a * sub) % n
        neg = (-pos) % n
        for part in (pos, neg):
            covered[part] = True
            cosets.append(ResidueSet.from_members(n, part.tolist()))
    return CosetSystem(n, h, ResidueSet.from_members(n, elements), tuple(cosets))


def _check_indices(system: CosetSystem, indices: Iterable[int]) -> list[int]:
    idx = [int(i) for i in indices]
    if len(set(idx)) != len(idx):
        raise ValueError("index set has duplicates")
    for i in idx:
        if not 0 <= i < system.coset_count:
            raise ValueError(f"coset index {i} outside 0..{system.coset_count - 1}")
    return idx


def expand_index_set(system: CosetSystem, indices: Iterable[int]) -> ResidueSet:
    mask = np.zeros(system.n, dtype=bool)
    for i in _check_indices(system, indices):
        mask |= system.cosets[i].mask
    return ResidueSet(system.n, mask)


def skew_index_predicate(system: CosetSystem, indices: Iterable[int]) -> bool:
    """True iff exactly one index of every pair {2i, 2i+1} is selected."""
    idx = set(_check_indices(system, indices))
    return all((2 * i in idx) != (2 * i + 1 in idx) for i in range(system.coset_count // 2))


def index_set_of(system: CosetSystem, x: ResidueSet) -> list[int]:
    """Inverse of :func:`expand_index_set`; raises if x is not a union of cosets."""
    idx = [i for i, c in enumerate(system.cosets) if (c & x) == c]
    if expand_index_set(system, idx) != x:
        raise ValueError("set is not a union of cosets")
    return idx
