"""Finite set families over a ground set [n], stored as integer bitsets.

Element ``i`` (1-indexed) corresponds to bit ``i - 1`` of a member.  Python
integers are arbitrary precision, so ground sets up to ``MAX_GROUND`` need
no special multiword handling.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import singledispatch
from typing import Iterable, Iterator, Mapping

from .errors import DomainError, ParseError, ResourceError

MAX_GROUND = 1024
DEFAULT_SIZE_CAP = 10**7


def size_cap() -> int:
    """Member-count ceiling for materialized families (``UCLAB_SIZE_CAP`` overrides)."""
    raw = os.environ.get("UCLAB_SIZE_CAP")
    if raw is None:
        return DEFAULT_SIZE_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise DomainError(f"UCLAB_SIZE_CAP must be an integer, got {raw!r}") from None
    if cap < 1:
        raise DomainError("UCLAB_SIZE_CAP must be positive")
    return cap


def check_size(size: int, cap: int | None = None) -> None:
    cap = size_cap() if cap is None else cap
    if size > cap:
        raise ResourceError(
            f"family would have {size} members, above the cap of {cap} "
            "(raise UCLAB_SIZE_CAP or use an implicit/sampled representation)"
        )


def check_ground(n: int) -> int:
    if not isinstance(n, int) or isinstance(n, bool):
        raise DomainError(f"ground set size must be an int, got {n!r}")
    if not 1 <= n <= MAX_GROUND:
        raise DomainError(f"ground set size must lie in 1..{MAX_GROUND}, got {n}")
    return n


def to_bitset(elements: Iterable[int], n: int) -> int:
    bits = 0
    for e in elements:
        if not 1 <= e <= n:
            raise DomainError(f"element {e} outside the ground set [1..{n}]")
        bits |= 1 << (e - 1)
    return bits


def elements_of(bits: int) -> tuple[int, ...]:
    """Ascending 1-indexed elements of a bitset."""
    out = []
    while bits:
        low = bits & -bits
        out.append(low.bit_length())
        bits ^= low
    return tuple(out)


@dataclass(frozen=True)
class SetFamily:
    """A deduplicated family of subsets of [n].

    ``members`` is kept in ascending bitset order, so two families are equal
    exactly when their encodings are.
    """

    n: int
    members: tuple[int, ...]

    def __post_init__(self):
        check_ground(self.n)
        canon = tuple(sorted(set(self.members)))
        if not canon:
            raise DomainError("the empty family is not a valid SetFamily")
        if canon[0] < 0 or canon[-1] >> self.n:
            raise DomainError(f"member outside the ground set [1..{self.n}]")
        object.__setattr__(self, "members", canon)

    @classmethod
    def from_sets(cls, n: int, sets: Iterable[Iterable[int]]) -> SetFamily:
        check_ground(n)
        return cls(n, tuple(to_bitset(s, n) for s in sets))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, bits: int) -> bool:
        return bits in self._lookup

    @property
    def _lookup(self) -> frozenset[int]:
        cached = self.__dict__.get("_lookup_cache")
        if cached is None:
            cached = frozenset(self.members)
            object.__setattr__(self, "_lookup_cache", cached)
        return cached

    @property
    def size(self) -> int:
        return len(self.members)

    def sets(self) -> list[frozenset[int]]:
        return [frozenset(elements_of(m)) for m in self.members]

    def relabel(self, mapping: Mapping[int, int]) -> SetFamily:
        """Apply a permutation of [n] (given as ``old -> new``) to every member."""
        if sorted(mapping) != list(range(1, self.n + 1)) or sorted(
            mapping.values()
        ) != list(range(1, self.n + 1)):
            raise DomainError("relabeling must be a permutation of the ground set")
        return SetFamily(
            self.n,
            tuple(to_bitset((mapping[e] for e in elements_of(m)), self.n) for m in self.members),
        )

    def __repr__(self) -> str:
        shown = ", ".join(_brace(m) for m in self.members[:8])
        more = ", ..." if len(self.members) > 8 else ""
        return f"SetFamily(n={self.n}, [{shown}{more}], size={len(self.members)})"


def _brace(bits: int) -> str:
    return "{" + ",".join(map(str, elements_of(bits))) + "}"


# -- text format -------------------------------------------------------------

_HEADER = re.compile(r"^n\s*=\s*(\d+)$")
_BITS = re.compile(r"^[01]+$")


def parse_family(text: str, format: str | None = None) -> SetFamily:
    """Parse ``.ucf`` text in ``braces`` or ``bitstring`` format.

    The format is auto-detected when not given.  An optional first line
    ``n=<int>`` fixes the ground set; otherwise it is the bitstring width, or
    the largest element mentioned in braces format.
    """
    lines = [(i, ln.strip()) for i, ln in enumerate(text.splitlines(), start=1)]
    lines = [(i, ln) for i, ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("no member sets found", line=None)

    n = None
    m = _HEADER.match(lines[0][1])
    if m:
        n = int(m.group(1))
        if not 1 <= n <= MAX_GROUND:
            raise DomainError(f"header ground set size {n} outside 1..{MAX_GROUND}")
        lines = lines[1:]
        if not lines:
            raise ParseError("header present but no member sets", line=None)

    if format is None:
        format = "braces" if lines[0][1].startswith("{") else "bitstring"
    if format == "bitstring":
        return _parse_bitstrings(lines, n)
    if format == "braces":
        return _parse_braces(lines, n)
    raise DomainError(f"unknown family format {format!r}")


def _parse_bitstrings(lines, n):
    width = None
    members = []
    for lineno, ln in lines:
        if not _BITS.match(ln):
            raise ParseError(f"expected a 0/1 string, got {ln!r}", line=lineno)
        if width is None:
            width = len(ln)
        elif len(ln) != width:
            raise ParseError(f"bitstring width {len(ln)} differs from {width}", line=lineno)
        members.append(sum(1 << k for k, ch in enumerate(ln) if ch == "1"))
    if n is None:
        n = width
    elif n != width:
        raise ParseError(f"bitstring width {width} does not match header n={n}", line=lines[0][0])
    check_ground(n)
    return SetFamily(n, tuple(members))


def _parse_braces(lines, n):
    parsed = []
    for lineno, ln in lines:
        if not (ln.startswith("{") and ln.endswith("}")):
            raise ParseError(f"expected a brace set like {{1,3}}, got {ln!r}", line=lineno)
        body = ln[1:-1].strip()
        try:
            elems = [int(tok) for tok in body.split(",")] if body else []
        except ValueError:
            raise ParseError(f"non-integer element in {ln!r}", line=lineno) from None
        parsed.append((lineno, elems))
    if n is None:
        n = max([1] + [e for _, elems in parsed for e in elems])
    check_ground(n)
    members = []
    for lineno, elems in parsed:
        for e in elems:
            if not 1 <= e <= n:
                raise DomainError(f"line {lineno}: element {e} outside [1..{n}]")
        members.append(to_bitset(elems, n))
    return SetFamily(n, tuple(members))


def serialize_family(F: SetFamily, format: str = "braces") -> str:
    """Render ``F`` as ``.ucf`` text; ``parse_family`` inverts this exactly."""
    out = [f"n={F.n}"]
    if format == "braces":
        out.extend(_brace(m) for m in F.members)
    elif format == "bitstring":
        out.extend(
            "".join("1" if m >> k & 1 else "0" for k in range(F.n)) for m in F.members
        )
    else:
        raise DomainError(f"unknown family format {format!r}")
    return "\n".join(out) + "\n"


# -- closure ----------------------------------------------------------------


def union_closure_step(F: SetFamily) -> SetFamily:
    """The family F∪F of all pairwise unions (contains F itself)."""
    ms = F.members
    out = set(ms)
    for i, a in enumerate(ms):
        for b in ms[i + 1 :]:
            out.add(a | b)
    return SetFamily(F.n, tuple(out))


@singledispatch
def is_union_closed(F) -> bool:
    raise TypeError(f"cannot decide union-closedness of {type(F).__name__}")


@is_union_closed.register
def _(F: SetFamily) -> bool:
    ms = F.members
    lookup = F._lookup
    for i, a in enumerate(ms):
        for b in ms[i + 1 :]:
            if (a | b) not in lookup:
                return False
    return True


def generate_closure(generators: SetFamily) -> SetFamily:
    """Smallest union-closed family containing ``generators``."""
    closed: set[int] = set()
    for g in generators.members:
        closed |= {c | g for c in closed}
        closed.add(g)
    return SetFamily(generators.n, tuple(closed))


# -- frequencies and blocks ---------------------------------------------------


@dataclass(frozen=True)
class FrequencyProfile:
    counts: Mapping[int, int]
    total: int

    @property
    def max_count(self) -> int:
        return max(self.counts.values())

    @property
    def max_fraction(self) -> Fraction:
        return Fraction(self.max_count, self.total)

    def fraction(self, element: int) -> Fraction:
        return Fraction(self.counts[element], self.total)

    def abundant(self) -> frozenset[int]:
        return frozenset(i for i, c in self.counts.items() if 2 * c >= self.total)


@singledispatch
def frequency_profile(F) -> FrequencyProfile:
    raise TypeError(f"no frequency profile for {type(F).__name__}")


@frequency_profile.register
def _(F: SetFamily) -> FrequencyProfile:
    counts = [0] * F.n
    for m in F.members:
        while m:
            low = m & -m
            counts[low.bit_length() - 1] += 1
            m ^= low
    return FrequencyProfile({i + 1: c for i, c in enumerate(counts)}, len(F.members))


def abundant_elements(F) -> frozenset[int]:
    """Elements lying in at least half the members (``2*count >= |F|``)."""
    return frequency_profile(F).abundant()


@dataclass(frozen=True)
class BlockPartition:
    """Classes of elements with identical membership patterns.

    ``blocks`` covers the elements that occur in some member; ``absent``
    holds the never-occurring elements as one designated class.
    """

    n: int
    blocks: tuple[tuple[int, ...], ...]
    absent: tuple[int, ...]

    @property
    def all_singletons(self) -> bool:
        return not self.absent and all(len(b) == 1 for b in self.blocks)

    @property
    def singleton_blocks(self) -> tuple[int, ...]:
        return tuple(b[0] for b in self.blocks if len(b) == 1)

    def classes(self) -> tuple[tuple[int, ...], ...]:
        return self.blocks + ((self.absent,) if self.absent else ())


@singledispatch
def blocks(F) -> BlockPartition:
    raise TypeError(f"no block partition for {type(F).__name__}")


@blocks.register
def _(F: SetFamily) -> BlockPartition:
    signature = [0] * F.n
    for j, m in enumerate(F.members):
        bit = 1 << j
        while m:
            low = m & -m
            signature[low.bit_length() - 1] |= bit
            m ^= low
    groups: dict[int, list[int]] = {}
    for i, sig in enumerate(signature, start=1):
        groups.setdefault(sig, []).append(i)
    absent = tuple(groups.pop(0, ()))
    return BlockPartition(F.n, tuple(sorted(tuple(g) for g in groups.values())), absent)
