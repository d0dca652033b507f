"""Randomised local search for supplementary difference sets.

The state is a family with fixed block sizes.  A move exchanges one unit of a
block for one unit outside it, where a unit is a single residue or, when a
coset system is given, a whole coset.  On the skew-type block the only move
is swapping a unit for its negative, which keeps the block skew.

Descent is first-improvement over a freshly shuffled neighbourhood, with a
bounded run of sideways (equal-cost) moves; a local minimum triggers a
restart from a new random state.  Every restart draws from its own
``SeedSequence(seed, spawn_key=(restart,))`` stream, so any restart can be
replayed on its own.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Optional

import numpy as np

from .cosets import CosetSystem, partner
from .diffsets import SdsFamily, family_totals
from .modring import ResidueSet, difference_counts

log = logging.getLogger(__name__)


class InfeasibleSpecError(ValueError):
    pass


@dataclass(frozen=True)
class SearchSpec:
    v: int
    sizes: tuple[int, ...]
    lam: int
    skew_block: Optional[int] = None
    cosets: Optional[CosetSystem] = None
    seed: int = 0
    restarts: int = 100
    max_steps: int = 100_000  # move evaluations per restart
    max_sideways: int = 50  # consecutive equal-cost moves before giving up
    record_trace: bool = False

    def __post_init__(self):
        object.__setattr__(self, "sizes", tuple(int(s) for s in self.sizes))
        v, sizes, lam = self.v, self.sizes, self.lam
        if v < 1:
            raise InfeasibleSpecError(f"v must be positive, got {v}")
        if not sizes:
            raise InfeasibleSpecError("at least one block size is required")
        if lam < 0:
            raise InfeasibleSpecError(f"lambda must be nonnegative, got {lam}")
        if any(not 0 <= s <= v for s in sizes):
            raise InfeasibleSpecError(f"block sizes must lie in 0..{v}, got {sizes}")
        lhs = sum(s * (s - 1) for s in sizes)
        if lhs != lam * (v - 1):
            raise InfeasibleSpecError(
                f"counting identity sum n_k(n_k-1) = lambda(v-1) fails: {lhs} != {lam * (v - 1)}"
            )
        if self.skew_block is not None:
            k = self.skew_block
            if not 0 <= k < len(sizes):
                raise InfeasibleSpecError(f"skew block index {k} out of range")
            if v % 2 == 0:
                raise InfeasibleSpecError(f"skew-type blocks need odd v, got {v}")
            if sizes[k] != (v - 1) // 2:
                raise InfeasibleSpecError(
                    f"skew block {k} must have size (v-1)/2 = {(v - 1) // 2}, got {sizes[k]}"
                )
        if self.cosets is not None:
            h = self.cosets.subgroup_order
            if self.cosets.n != v:
                raise InfeasibleSpecError(f"coset system is over Z_{self.cosets.n}, not Z_{v}")
            if any(s % h for s in sizes):
                raise InfeasibleSpecError(f"every block size must be a multiple of |H| = {h}")
        if self.restarts < 1 or self.max_steps < 0 or self.max_sideways < 0:
            raise InfeasibleSpecError("restarts must be >= 1 and budgets nonnegative")

    def describe(self) -> str:
        sizes = ",".join(map(str, self.sizes))
        parts = [f"{len(self.sizes)}-({self.v};{sizes};{self.lam})"]
        if self.skew_block is not None:
            parts.append(f"skew_block={self.skew_block}")
        if self.cosets is not None:
            parts.append(f"cosets=({self.cosets.n},{self.cosets.generator})")
        parts += [f"seed={self.seed}", f"restarts={self.restarts}",
                  f"max_steps={self.max_steps}", f"max_sideways={self.max_sideways}"]
        return " ".join(parts)


class Move(NamedTuple):
    block: int
    remove: int  # unit id leaving the block
    add: int  # unit id entering the block


@dataclass
class SearchResult:
    family: SdsFamily
    final_cost: int
    steps_used: int
    restarts_used: int
    seed: int
    restart_index: int  # substream of the returned family
    traces: list[list[int]] = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.final_cost == 0


def cost(family: SdsFamily, lam: Optional[int] = None) -> int:
    """Sum over r = 1..v-1 of (sum_k lambda_k(r) - lambda)^2."""
    lam = family.lam if lam is None else lam
    res = family_totals(family)[1:] - lam
    return int(res @ res)


def _reverse(hist: np.ndarray) -> np.ndarray:
    """hist indexed by -r mod n."""
    return np.roll(hist[::-1], 1)


class SearchState:
    """Mutable search state with incrementally maintained difference counts."""

    def __init__(self, spec: SearchSpec, unit_blocks: list[list[int]]):
        self.spec = spec
        v = spec.v
        if spec.cosets is not None:
            self.unit_members = [c.members.astype(np.int64) for c in spec.cosets.cosets]
            self._partner = partner
        else:
            self.unit_members = [np.array([x], dtype=np.int64) for x in range(v)]
            self._partner = lambda x: (-x) % v
        nunits = len(self.unit_members)
        self.masks: list[np.ndarray] = []
        self.inside: list[list[int]] = []
        self.outside: list[list[int]] = []
        self.counts: list[np.ndarray] = []
        for k, chosen in enumerate(unit_blocks):
            chosen = sorted(chosen)
            mask = np.zeros(v, dtype=bool)
            for u in chosen:
                mask[self.unit_members[u]] = True
            self.masks.append(mask)
            self.inside.append(chosen)
            if k == spec.skew_block:
                self.outside.append([self._partner(u) for u in chosen])
            else:
                taken = set(chosen)
                self.outside.append([u for u in range(nunits) if u not in taken])
            self.counts.append(difference_counts(np.flatnonzero(mask), v))
        self.totals = sum(self.counts)
        self.residual = self.totals - spec.lam
        self.residual[0] = 0
        self.cost = int(self.residual @ self.residual)

    @classmethod
    def random(cls, spec: SearchSpec, rng: np.random.Generator) -> SearchState:
        unit = spec.cosets.subgroup_order if spec.cosets is not None else 1
        v = spec.v
        if spec.cosets is not None:
            pool = list(range(spec.cosets.coset_count))
            pairs = [(2 * i, 2 * i + 1) for i in range(spec.cosets.coset_count // 2)]
        else:
            pool = list(range(v))
            pairs = [(x, v - x) for x in range(1, (v - 1) // 2 + 1)]
        blocks = []
        for k, size in enumerate(spec.sizes):
            if k == spec.skew_block:
                flips = rng.integers(0, 2, size=len(pairs))
                blocks.append([p[f] for p, f in zip(pairs, flips)])
            else:
                picked = rng.choice(len(pool), size=size // unit, replace=False)
                blocks.append([pool[i] for i in picked])
        return cls(spec, blocks)

    def is_skew_move_block(self, k: int) -> bool:
        return k == self.spec.skew_block

    def block_move_count(self, k: int) -> int:
        if self.is_skew_move_block(k):
            return len(self.inside[k])
        return len(self.inside[k]) * len(self.outside[k])

    def move_count(self) -> int:
        return sum(self.block_move_count(k) for k in range(len(self.inside)))

    def decode(self, index: int) -> Move:
        """Map 0..move_count()-1 onto moves, in the order :meth:`moves` yields them."""
        for k in range(len(self.inside)):
            c = self.block_move_count(k)
            if index < c:
                if self.is_skew_move_block(k):
                    u = self.inside[k][index]
                    return Move(k, u, self._partner(u))
                i, j = divmod(index, len(self.outside[k]))
                return Move(k, self.inside[k][i], self.outside[k][j])
            index -= c
        raise IndexError("move index out of range")

    def moves(self) -> Iterator[Move]:
        for index in range(self.move_count()):
            yield self.decode(index)

    def table_delta(self, move: Move) -> np.ndarray:
        """Change in block ``move.block``'s difference counts under ``move``."""
        v = self.spec.v
        a = self.unit_members[move.remove]
        b = self.unit_members[move.add]
        keep = self.masks[move.block].copy()
        keep[a] = False
        s = np.flatnonzero(keep)

        def cross(p, q):
            return np.bincount(((p[:, None] - q[None, :]) % v).ravel(), minlength=v)

        sb, sa = cross(s, b), cross(s, a)
        delta = sb + _reverse(sb) + cross(b, b) - sa - _reverse(sa) - cross(a, a)
        delta[0] = 0
        return delta

    def evaluate(self, move: Move) -> tuple[int, np.ndarray]:
        delta = self.table_delta(move)
        return int(delta @ (2 * self.residual + delta)), delta

    def apply(self, move: Move, delta: Optional[np.ndarray] = None) -> None:
        if delta is None:
            delta = self.table_delta(move)
        k = move.block
        self.cost += int(delta @ (2 * self.residual + delta))
        self.counts[k] = self.counts[k] + delta
        self.totals = self.totals + delta
        self.residual = self.residual + delta
        self.masks[k][self.unit_members[move.remove]] = False
        self.masks[k][self.unit_members[move.add]] = True
        inside, outside = self.inside[k], self.outside[k]
        inside[inside.index(move.remove)] = move.add
        outside[outside.index(move.add)] = move.remove

    def family(self) -> SdsFamily:
        v = self.spec.v
        blocks = tuple(ResidueSet(v, m.copy()) for m in self.masks)
        return SdsFamily(v, blocks, self.spec.lam)


def neighbors(state: SearchState) -> Iterator[Move]:
    return state.moves()


@dataclass
class _RestartOutcome:
    index: int
    state_family: SdsFamily
    cost: int
    steps: int
    trace: list[int]


def _descend(spec: SearchSpec, index: int) -> _RestartOutcome:
    rng = np.random.default_rng(np.random.SeedSequence(spec.seed, spawn_key=(index,)))
    state = SearchState.random(spec, rng)
    steps = 0
    sideways = 0
    trace = [state.cost]
    while state.cost > 0 and steps < spec.max_steps:
        total = state.move_count()
        if total == 0:
            break
        improving = flat = None
        for idx in rng.permutation(total):
            if steps >= spec.max_steps:
                break
            steps += 1
            move = state.decode(int(idx))
            change, delta = state.evaluate(move)
            if change < 0:
                improving = (move, delta)
                break
            if change == 0 and flat is None:
                flat = (move, delta)
        if improving is not None:
            state.apply(*improving)
            sideways = 0
        elif flat is not None and sideways < spec.max_sideways:
            state.apply(*flat)
            sideways += 1
        else:
            break
        trace.append(state.cost)
    return _RestartOutcome(index, state.family(), state.cost, steps,
                           trace if spec.record_trace else [])


def search(spec: SearchSpec, n_jobs: int = 1) -> SearchResult:
    """Run restarts until one reaches zero cost or the budget is spent.

    The returned family is the zero-cost one from the lowest restart index,
    or the lowest-cost family seen when exhausted.  ``n_jobs > 1`` runs
    restarts in worker processes without changing the result.
    """
    outcomes: list[_RestartOutcome] = []
    if n_jobs > 1:
        with ProcessPoolExecutor(max_workers=n_jobs) as pool:
            for start in range(0, spec.restarts, n_jobs):
                batch = range(start, min(start + n_jobs, spec.restarts))
                outcomes.extend(pool.map(_descend, [spec] * len(batch), batch))
                if any(o.cost == 0 for o in outcomes):
                    break
    else:
        for i in range(spec.restarts):
            outcomes.append(_descend(spec, i))
            log.debug("restart %d ended at cost %d", i, outcomes[-1].cost)
            if outcomes[-1].cost == 0:
                break
    winner = next((o for o in outcomes if o.cost == 0), None)
    if winner is not None:
        outcomes = outcomes[: outcomes.index(winner) + 1]
    else:
        winner = min(outcomes, key=lambda o: (o.cost, o.index))
    return SearchResult(
        family=winner.state_family,
        final_cost=winner.cost,
        steps_used=sum(o.steps for o in outcomes),
        restarts_used=len(outcomes),
        seed=spec.seed,
        restart_index=winner.index,
        traces=[o.trace for o in outcomes] if spec.record_trace else [],
    )
