"""Exhaustive enumeration of union-closed families on tiny ground sets.

A family on [n] is encoded as a ``2**n``-bit mask: bit ``s`` is set when the
subset with bitset ``s`` is a member.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

from .entropy import Verdict, gilmer_certificate
from .errors import ResourceError
from .family import SetFamily, frequency_profile, is_union_closed

MAX_ENUM_N = 4
MAX_COVERAGE_N = 3


def _members(mask: int) -> tuple[int, ...]:
    out = []
    s = 0
    while mask:
        if mask & 1:
            out.append(s)
        mask >>= 1
        s += 1
    return tuple(out)


def _mask_closed(mask: int) -> bool:
    ms = _members(mask)
    for i, a in enumerate(ms):
        for b in ms[i + 1 :]:
            if not mask >> (a | b) & 1:
                return False
    return True


def union_closed_masks(n: int) -> Iterator[int]:
    """Every nonempty union-closed family on [n], by a pruned search.

    Subsets are decided in increasing bitset order.  Including ``S`` forces
    every ``S ∪ T`` with ``T`` already included; since ``S ∪ T >= S``, forced
    sets are all still undecided, and excluding a forced set is pruned.
    """
    universe = 1 << n

    def walk(s: int, family: int, forced: int):
        if s == universe:
            if family:
                yield family
            return
        bit = 1 << s
        if not forced & bit:
            yield from walk(s + 1, family, forced)
        new_forced = forced
        for t in _members(family):
            new_forced |= 1 << (s | t)
        yield from walk(s + 1, family | bit, new_forced)

    yield from walk(0, 0, 0)


def union_closed_masks_brute(n: int) -> Iterator[int]:
    """Same families by testing all ``2**(2**n)`` candidates (reference path)."""
    for mask in range(1, 1 << (1 << n)):
        if _mask_closed(mask):
            yield mask


@dataclass(frozen=True)
class EnumerationReport:
    n: int
    families_scanned: int
    uc_count: int
    min_max_fraction: Fraction
    worst_family: SetFamily

    @property
    def conjecture_holds(self) -> bool:
        return self.min_max_fraction >= Fraction(1, 2)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "families_scanned": self.families_scanned,
            "uc_count": self.uc_count,
            "min_max_fraction_num": self.min_max_fraction.numerator,
            "min_max_fraction_den": self.min_max_fraction.denominator,
            "min_max_fraction": float(self.min_max_fraction),
            "worst_family": [sorted(s) for s in self.worst_family.sets()],
            "conjecture_holds": self.conjecture_holds,
        }


def enumerate_union_closed(
    n: int,
    visitor: Callable[[SetFamily], None] | None = None,
    *,
    brute_force: bool = False,
) -> EnumerationReport:
    """Visit every union-closed family on [n] other than ``{∅}`` and fold the statistics.

    ``families_scanned`` is the size of the candidate space ``2**(2**n)``; the
    minimum max-fraction witness is the least family in (size, members) order,
    so the report does not depend on visiting order.
    """
    if not 1 <= n <= MAX_ENUM_N:
        raise ResourceError(
            f"exhaustive enumeration supports 1 <= n <= {MAX_ENUM_N}; "
            "larger ground sets need random sampling"
        )
    source = union_closed_masks_brute(n) if brute_force else union_closed_masks(n)
    count = 0
    best: tuple[Fraction, int, tuple[int, ...]] | None = None
    for mask in source:
        if mask == 1:  # the family {∅}
            continue
        F = SetFamily(n, _members(mask))
        count += 1
        if visitor is not None:
            visitor(F)
        key = (frequency_profile(F).max_fraction, len(F), F.members)
        if best is None or key < best:
            best = key
    assert best is not None
    return EnumerationReport(n, 1 << (1 << n), count, best[0], SetFamily(n, best[2]))


@dataclass(frozen=True)
class CoverageReport:
    n: int
    total_non_uc: int
    proved_by_entropy: int
    proved: tuple[SetFamily, ...] = field(repr=False)
    unsound: int  # certificates issued for union-closed families; must be 0

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "total_non_uc": self.total_non_uc,
            "proved_by_entropy": self.proved_by_entropy,
            "unsound": self.unsound,
        }


def certificate_coverage(n: int) -> CoverageReport:
    """How many non-union-closed families on [n] the entropy certificate catches."""
    if not 1 <= n <= MAX_COVERAGE_N:
        raise ResourceError(f"coverage enumeration supports 1 <= n <= {MAX_COVERAGE_N}")
    total = 0
    proved = []
    unsound = 0
    for mask in range(1, 1 << (1 << n)):
        F = SetFamily(n, _members(mask))
        if len(F) < 2:
            continue
        closed = is_union_closed(F)
        verdict = gilmer_certificate(F).verdict
        if verdict is Verdict.PROVED_NOT_UNION_CLOSED:
            if closed:
                unsound += 1
            else:
                proved.append(F)
        if not closed:
            total += 1
    return CoverageReport(n, total, len(proved), tuple(proved), unsound)
