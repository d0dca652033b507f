"""Exact arithmetic on subsets of the cyclic group Z_n.

A :class:`ResidueSet` is stored as a read-only boolean characteristic vector,
so membership is O(1) and set algebra is vectorised.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt
from typing import Iterable, Iterator

import numpy as np


def check_modulus(n: int) -> int:
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise ValueError(f"modulus must be a positive integer, got {n!r}")
    return int(n)


def is_prime(n: int) -> bool:
    """Deterministic trial division."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def units(n: int) -> list[int]:
    """The multiplicative units of Z_n in ascending order."""
    if n == 1:
        return [0]
    return [m for m in range(1, n) if gcd(m, n) == 1]


@dataclass(frozen=True, eq=False)
class ResidueSet:
    n: int
    mask: np.ndarray

    def __post_init__(self):
        mask = np.array(self.mask, dtype=bool)
        if mask.shape != (self.n,):
            raise ValueError(f"mask must have shape ({self.n},), got {mask.shape}")
        mask.flags.writeable = False
        object.__setattr__(self, "mask", mask)

    @classmethod
    def from_members(cls, n: int, members: Iterable[int]) -> ResidueSet:
        n = check_modulus(n)
        mask = np.zeros(n, dtype=bool)
        for x in members:
            if int(x) != x or not 0 <= x < n:
                raise ValueError(f"residue {x!r} outside 0..{n - 1}")
            mask[int(x)] = True
        return cls(n, mask)

    @classmethod
    def empty(cls, n: int) -> ResidueSet:
        return cls(check_modulus(n), np.zeros(n, dtype=bool))

    @property
    def members(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    def tolist(self) -> list[int]:
        return self.members.tolist()

    def __len__(self) -> int:
        return int(self.mask.sum())

    def __iter__(self) -> Iterator[int]:
        return iter(self.tolist())

    def __contains__(self, x) -> bool:
        return 0 <= x < self.n and bool(self.mask[x])

    def __eq__(self, other) -> bool:
        if not isinstance(other, ResidueSet):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.mask, other.mask)

    def __hash__(self) -> int:
        return hash((self.n, self.mask.tobytes()))

    def __or__(self, other: ResidueSet) -> ResidueSet:
        _same_modulus(self, other)
        return ResidueSet(self.n, self.mask | other.mask)

    def __and__(self, other: ResidueSet) -> ResidueSet:
        _same_modulus(self, other)
        return ResidueSet(self.n, self.mask & other.mask)

    def __repr__(self) -> str:
        return f"ResidueSet({self.n}, {set(self.tolist()) or '{}'})"


def _same_modulus(x: ResidueSet, y: ResidueSet) -> None:
    if x.n != y.n:
        raise ValueError(f"moduli differ: {x.n} != {y.n}")


@dataclass(frozen=True, eq=False)
class DifferenceTable:
    """Ordered difference counts of a set; ``counts[r]`` for r in 1..n-1.

    ``counts[0]`` is kept at zero so the array can be indexed by residue.
    """

    n: int
    counts: np.ndarray

    def __getitem__(self, r: int) -> int:
        if not 1 <= r < self.n:
            raise IndexError(f"difference {r} outside 1..{self.n - 1}")
        return int(self.counts[r])

    def as_dict(self) -> dict[int, int]:
        return {r: int(self.counts[r]) for r in range(1, self.n)}

    def total(self) -> int:
        return int(self.counts[1:].sum())


def difference_counts(members: np.ndarray, n: int) -> np.ndarray:
    """Length-n int64 array of ordered differences i - j (i != j); entry 0 is zero."""
    members = np.asarray(members, dtype=np.int64)
    diffs = (members[:, None] - members[None, :]) % n
    counts = np.bincount(diffs.ravel(), minlength=n).astype(np.int64)
    counts[0] = 0
    return counts


def difference_table(x: ResidueSet) -> DifferenceTable:
    counts = difference_counts(x.members, x.n)
    counts.flags.writeable = False
    return DifferenceTable(x.n, counts)


def negate(x: ResidueSet) -> ResidueSet:
    return ResidueSet.from_members(x.n, ((-m) % x.n for m in x.tolist()))


def affine_image(x: ResidueSet, m: int, t: int = 0) -> ResidueSet:
    """The image {m*x + t mod n}; m must be a unit so the map is an automorphism."""
    n = x.n
    if gcd(m, n) != 1:
        raise ValueError(f"multiplier {m} is not a unit modulo {n}")
    image = (m * x.members + t) % n
    mask = np.zeros(n, dtype=bool)
    mask[image] = True
    return ResidueSet(n, mask)


def is_skew_type(x: ResidueSet) -> bool:
    """True iff X and -X partition the nonzero residues."""
    n = x.n
    if n % 2 == 0 or x.mask[0]:
        return False
    neg = np.roll(x.mask[::-1], 1)  # neg[i] == mask[-i mod n]
    return bool(np.all(x.mask[1:] ^ neg[1:]))


def paley_set(n: int) -> ResidueSet:
    """Nonzero quadratic residues modulo a prime n = 3 (mod 4)."""
    n = check_modulus(n)
    if not is_prime(n):
        raise ValueError(f"Paley set needs a prime modulus, got {n}")
    if n % 4 != 3:
        raise ValueError(f"Paley set is skew-type only for n = 3 mod 4, got {n}")
    return ResidueSet.from_members(n, {(x * x) % n for x in range(1, n)})
