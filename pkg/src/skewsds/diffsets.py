"""Supplementary difference sets: verification, fingerprints and equivalence."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .modring import ResidueSet, affine_image, difference_counts, units

SUPERSCRIPT_TWO = "²"


@dataclass(frozen=True)
class SdsFamily:
    """An ordered family of blocks in Z_v with a declared lambda.

    The counting identity sum n_k(n_k - 1) = lambda(v - 1) is not enforced
    here so that broken or perturbed families can still be represented and
    reported on; see :func:`verify_sds`.
    """

    v: int
    blocks: tuple[ResidueSet, ...]
    lam: int
    name: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))
        if not self.blocks:
            raise ValueError("a family needs at least one block")
        for b in self.blocks:
            if b.n != self.v:
                raise ValueError(f"block modulus {b.n} does not match v={self.v}")
        if self.lam < 0:
            raise ValueError(f"lambda must be nonnegative, got {self.lam}")

    @classmethod
    def from_lists(cls, v: int, blocks: Sequence[Sequence[int]], lam: int, name=None) -> SdsFamily:
        return cls(v, tuple(ResidueSet.from_members(v, b) for b in blocks), lam, name)

    @property
    def cardinals(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    def counting_identity_holds(self) -> bool:
        return sum(k * (k - 1) for k in self.cardinals) == self.lam * (self.v - 1)

    def gs_lambda(self) -> int:
        """lambda = sum n_k - v, the value a four-block Goethals-Seidel family must have."""
        return sum(self.cardinals) - self.v

    def replace(self, **changes) -> SdsFamily:
        fields = {"v": self.v, "blocks": self.blocks, "lam": self.lam, "name": self.name}
        fields.update(changes)
        return SdsFamily(**fields)


@dataclass(frozen=True, eq=False)
class VerificationReport:
    parameters: str
    totals: np.ndarray  # totals[r] = sum_k lambda_k(r), r = 1..v-1 (index 0 unused)
    residuals: np.ndarray  # totals - lambda, same indexing
    passed: bool

    @property
    def worst_deviation(self) -> int:
        return int(np.abs(self.residuals[1:]).max(initial=0))

    @property
    def failing_differences(self) -> list[int]:
        return [int(r) for r in np.flatnonzero(self.residuals) if r > 0]


def family_totals(family: SdsFamily) -> np.ndarray:
    totals = np.zeros(family.v, dtype=np.int64)
    for b in family.blocks:
        totals += difference_counts(b.members, family.v)
    return totals


def verify_sds(family: SdsFamily) -> VerificationReport:
    totals = family_totals(family)
    residuals = totals - family.lam
    residuals[0] = 0
    return VerificationReport(
        parameters=declared_parameters(family),
        totals=totals,
        residuals=residuals,
        passed=not residuals[1:].any(),
    )


def declared_parameters(family: SdsFamily, gs_lambda: bool = False) -> str:
    """Format ``t-(v;n_0,...,n_{t-1};lambda)``.

    With ``gs_lambda`` the lambda shown is sum n_k - v instead of the declared one.
    """
    lam = family.gs_lambda() if gs_lambda else family.lam
    sizes = ",".join(str(k) for k in family.cardinals)
    return f"{len(family.blocks)}-({family.v};{sizes};{lam})"


@dataclass(frozen=True)
class Fingerprint:
    histogram: dict[int, int]

    def __str__(self) -> str:
        return " ".join(f"{mu}:{c}" for mu, c in sorted(self.histogram.items()))


def fingerprint(x: ResidueSet) -> Fingerprint:
    counts = difference_counts(x.members, x.n)[1:]
    return Fingerprint(dict(sorted(Counter(int(c) for c in counts).items())))


def _translates(mask: np.ndarray) -> np.ndarray:
    """Row t is the characteristic vector of X + t."""
    n = mask.shape[0]
    idx = (np.arange(n)[None, :] - np.arange(n)[:, None]) % n
    return mask[idx]


def translation_canonical_form(x: ResidueSet) -> bytes:
    """Lexicographically smallest characteristic vector among all translates of x."""
    return min(row.tobytes() for row in _translates(x.mask))


def _find_translation(x: ResidueSet, y: ResidueSet) -> Optional[int]:
    hits = np.flatnonzero((_translates(x.mask) == y.mask).all(axis=1))
    return int(hits[0]) if hits.size else None


def sets_equivalent(x: ResidueSet, y: ResidueSet) -> Optional[tuple[int, int]]:
    """Return the first (m, t) in ascending order with y = m*x + t, or None."""
    if x.n != y.n:
        raise ValueError(f"moduli differ: {x.n} != {y.n}")
    if len(x) != len(y) or fingerprint(x) != fingerprint(y):
        return None
    for m in units(x.n):
        t = _find_translation(affine_image(x, m, 0), y)
        if t is not None:
            return m, t
    return None


@dataclass(frozen=True)
class FamilyWitness:
    """G[permutation[k]] == affine_image(F[k], multiplier, translations[k])."""

    multiplier: int
    permutation: tuple[int, ...]
    translations: tuple[int, ...]

    def apply(self, family: SdsFamily) -> list[ResidueSet]:
        out: list[Optional[ResidueSet]] = [None] * len(family.blocks)
        for k, b in enumerate(family.blocks):
            out[self.permutation[k]] = affine_image(b, self.multiplier, self.translations[k])
        return out  # type: ignore[return-value]


def families_equivalent(f: SdsFamily, g: SdsFamily) -> Optional[FamilyWitness]:
    """Search one global automorphism, a cardinal-respecting block permutation and
    per-block translations mapping ``f`` onto ``g``. None means inequivalent."""
    if f.v != g.v:
        raise ValueError(f"moduli differ: {f.v} != {g.v}")
    if len(f.blocks) != len(g.blocks) or sorted(f.cardinals) != sorted(g.cardinals):
        return None
    target = [translation_canonical_form(b) for b in g.blocks]
    nblocks = len(f.blocks)
    for m in units(f.v):
        images = [affine_image(b, m, 0) for b in f.blocks]
        forms = [translation_canonical_form(b) for b in images]
        if Counter(forms) != Counter(target):
            continue
        for perm in itertools.permutations(range(nblocks)):
            if all(forms[k] == target[perm[k]] for k in range(nblocks)):
                shifts = tuple(_find_translation(images[k], g.blocks[perm[k]]) for k in range(nblocks))
                return FamilyWitness(m, perm, shifts)  # type: ignore[arg-type]
    return None


@dataclass(frozen=True)
class FourSquareReport:
    terms: tuple[int, ...]  # |v - 2 n_k|, descending
    total: int
    target: int

    @property
    def passed(self) -> bool:
        return self.total == self.target

    @property
    def squares(self) -> str:
        return "+".join(f"{t}{SUPERSCRIPT_TWO}" for t in self.terms)

    def __str__(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"{self.target if self.passed else self.total} = {self.squares} ({verdict})"


def four_square_check(family: SdsFamily) -> FourSquareReport:
    if len(family.blocks) != 4:
        raise ValueError(f"four-square check needs 4 blocks, got {len(family.blocks)}")
    terms = tuple(sorted((abs(family.v - 2 * k) for k in family.cardinals), reverse=True))
    return FourSquareReport(terms, sum(t * t for t in terms), 4 * family.v)
