"""Families given implicitly as unions of size-constrained lattice intervals.

A clause ``(required, allowed, min_size)`` stands for every set ``S`` with
``required ⊆ S ⊆ allowed`` and ``|S| >= min_size``.  Sizes, element counts
and co-occurrence counts come from inclusion-exclusion over the clauses,
so families with ~2**48 members can be analysed without being listed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb

from .errors import DomainError
from .family import (
    BlockPartition,
    FrequencyProfile,
    SetFamily,
    blocks,
    check_ground,
    check_size,
    frequency_profile,
    is_union_closed,
)


def _popcount(x: int) -> int:
    return bin(x).count("1")


@lru_cache(maxsize=None)
def _tail(free: int, at_least: int) -> int:
    """Number of subsets of a ``free``-set with at least ``at_least`` elements."""
    at_least = max(at_least, 0)
    if at_least > free:
        return 0
    if at_least == 0:
        return 1 << free
    return sum(comb(free, j) for j in range(at_least, free + 1))


@dataclass(frozen=True)
class Clause:
    required: int
    allowed: int
    min_size: int = 0

    def count(self) -> int:
        if self.required & ~self.allowed:
            return 0
        r = _popcount(self.required)
        return _tail(_popcount(self.allowed) - r, self.min_size - r)

    def meet(self, other: Clause) -> Clause:
        return Clause(
            self.required | other.required,
            self.allowed & other.allowed,
            max(self.min_size, other.min_size),
        )

    def __contains__(self, bits: int) -> bool:
        return (
            bits & self.required == self.required
            and bits & ~self.allowed == 0
            and _popcount(bits) >= self.min_size
        )


@dataclass(frozen=True)
class ClauseFamily:
    """Union of clauses over the ground set [n]."""

    n: int
    clauses: tuple[Clause, ...]

    def __post_init__(self):
        check_ground(self.n)
        full = (1 << self.n) - 1
        for c in self.clauses:
            if c.allowed & ~full:
                raise DomainError("clause allows elements outside the ground set")
        if self.size == 0:
            raise DomainError("clause family is empty")

    def __contains__(self, bits: int) -> bool:
        return any(bits in c for c in self.clauses)

    def count(self, required: int = 0, forbidden: int = 0) -> int:
        """Members containing ``required`` and disjoint from ``forbidden``."""
        box = Clause(required, ~forbidden & ((1 << self.n) - 1), 0)
        total = 0
        for r in range(1, len(self.clauses) + 1):
            sign = 1 if r % 2 else -1
            for group in combinations(self.clauses, r):
                meet = box
                for c in group:
                    meet = meet.meet(c)
                total += sign * meet.count()
        return total

    @property
    def size(self) -> int:
        cached = self.__dict__.get("_size")
        if cached is None:
            cached = self.count()
            object.__setattr__(self, "_size", cached)
        return cached

    def __len__(self) -> int:
        return self.size

    def materialize(self, cap: int | None = None) -> SetFamily:
        """List every member explicitly (subject to the size guard)."""
        check_size(self.size, cap)
        members = set()
        for c in self.clauses:
            if c.required & ~c.allowed:
                continue
            free = c.allowed & ~c.required
            sub = free
            while True:
                s = c.required | sub
                if _popcount(s) >= c.min_size:
                    members.add(s)
                if sub == 0:
                    break
                sub = (sub - 1) & free
        return SetFamily(self.n, tuple(members))

    def covers_box(self, low: int, high: int, constraints: tuple[tuple[int, int], ...]) -> int | None:
        """Check every ``T`` with ``low ⊆ T ⊆ high`` and all ``|T ∩ W| >= k`` is a member.

        Returns ``None`` when covered, otherwise a witness set outside the family.
        """
        if low & ~high:
            return None
        for w, k in constraints:
            if _popcount(high & w) < k:
                return None
        size_floor = max([_popcount(low)] + [k for _, k in constraints])
        relevant = 0
        for c in self.clauses:
            if c.required & ~low == 0 and high & ~c.allowed == 0 and size_floor >= c.min_size:
                return None
            relevant |= (c.required & ~low) | (high & ~c.allowed)
        if low == high:
            return None if low in self else low
        free = high & ~low
        pick = free & relevant or free
        e = pick & -pick
        witness = self.covers_box(low | e, high, constraints)
        if witness is not None:
            return witness
        return self.covers_box(low, high & ~e, constraints)

    def union_counterexample(self) -> int | None:
        """A union of two members that is not a member, or ``None``."""
        for i, a in enumerate(self.clauses):
            for b in self.clauses[i:]:
                if a.count() == 0 or b.count() == 0:
                    continue
                # T = S1 ∪ S2 is reachable iff S1 = T∩allowed_a, S2 = T∩allowed_b work.
                witness = self.covers_box(
                    a.required | b.required,
                    a.allowed | b.allowed,
                    ((a.allowed, a.min_size), (b.allowed, b.min_size)),
                )
                if witness is not None:
                    return witness
        return None


@is_union_closed.register
def _(F: ClauseFamily) -> bool:
    return F.union_counterexample() is None


@frequency_profile.register
def _(F: ClauseFamily) -> FrequencyProfile:
    return FrequencyProfile({i: F.count(required=1 << (i - 1)) for i in range(1, F.n + 1)}, F.size)


@blocks.register
def _(F: ClauseFamily) -> BlockPartition:
    present = [i for i in range(1, F.n + 1) if F.count(required=1 << (i - 1))]
    absent = tuple(i for i in range(1, F.n + 1) if i not in present)
    parent = {i: i for i in present}

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for a, b in combinations(present, 2):
        if find(a) == find(b):
            continue
        ba, bb = 1 << (a - 1), 1 << (b - 1)
        if F.count(required=ba, forbidden=bb) == 0 and F.count(required=bb, forbidden=ba) == 0:
            parent[find(b)] = find(a)
    groups: dict[int, list[int]] = {}
    for i in present:
        groups.setdefault(find(i), []).append(i)
    return BlockPartition(F.n, tuple(sorted(tuple(g) for g in groups.values())), absent)
