"""Exact subset distributions, Shannon entropy and the entropy certificate.

Weights are kept as integer numerators over one common denominator, so every
probability is an exact rational.  Only the final entropy is floating point;
it comes with an a-priori bound on its rounding error.
"""

from __future__ import annotations

import enum
import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, NamedTuple

from .errors import DomainError, ResourceError
from .family import (
    SetFamily,
    check_ground,
    frequency_profile,
    is_union_closed,
    union_closure_step,
)

MAX_PAIRS = 10**8
UNIT_ROUNDOFF = 2.0**-53


@dataclass(frozen=True)
class SubsetDistribution:
    """Finite distribution over subsets of [n].

    ``atoms`` pairs each support bitset with an integer numerator; all
    numerators share ``denominator``.  The representation is reduced by the
    common gcd and sorted, so equal distributions compare equal.
    """

    n: int
    atoms: tuple[tuple[int, int], ...]
    denominator: int

    def __post_init__(self):
        check_ground(self.n)
        merged: dict[int, int] = {}
        for bits, w in self.atoms:
            if bits in merged:
                raise DomainError(f"duplicate support atom {bits}")
            if w <= 0:
                raise DomainError("atom weights must be positive")
            if bits < 0 or bits >> self.n:
                raise DomainError("atom outside the ground set")
            merged[bits] = w
        if sum(merged.values()) != self.denominator:
            raise DomainError("weights do not sum to 1")
        g = math.gcd(self.denominator, *merged.values())
        object.__setattr__(self, "atoms", tuple((b, w // g) for b, w in sorted(merged.items())))
        object.__setattr__(self, "denominator", self.denominator // g)

    @classmethod
    def from_weights(cls, n: int, weights: Mapping[int, Fraction | int]) -> SubsetDistribution:
        """Build from ``{bitset: probability}`` with rational probabilities."""
        fracs = {b: Fraction(w) for b, w in weights.items() if w != 0}
        den = math.lcm(*(f.denominator for f in fracs.values())) if fracs else 1
        return cls(n, tuple((b, int(f * den)) for b, f in fracs.items()), den)

    @classmethod
    def _from_counts(cls, n: int, counts: Mapping[int, int], den: int) -> SubsetDistribution:
        return cls(n, tuple(counts.items()), den)

    def __len__(self) -> int:
        return len(self.atoms)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(b for b, _ in self.atoms)

    def probability(self, bits: int) -> Fraction:
        for b, w in self.atoms:
            if b == bits:
                return Fraction(w, self.denominator)
        return Fraction(0)

    def items(self) -> Iterator[tuple[int, Fraction]]:
        for b, w in self.atoms:
            yield b, Fraction(w, self.denominator)

    def marginals(self) -> dict[int, Fraction]:
        """``Pr[i ∈ A]`` for every element i, exactly."""
        num = [0] * self.n
        for bits, w in self.atoms:
            while bits:
                low = bits & -bits
                num[low.bit_length() - 1] += w
                bits ^= low
        return {i + 1: Fraction(c, self.denominator) for i, c in enumerate(num)}

    def max_marginal(self) -> Fraction:
        return max(self.marginals().values())


def uniform_distribution(F: SetFamily) -> SubsetDistribution:
    return SubsetDistribution(F.n, tuple((m, 1) for m in F.members), len(F.members))


def union_distribution(D1: SubsetDistribution, D2: SubsetDistribution) -> SubsetDistribution:
    """Exact law of ``A ∪ B`` for independent ``A ~ D1``, ``B ~ D2``."""
    if D1.n != D2.n:
        raise DomainError(f"ground sets differ: [{D1.n}] vs [{D2.n}]")
    if len(D1) * len(D2) > MAX_PAIRS:
        raise ResourceError(f"{len(D1) * len(D2)} atom pairs exceed the {MAX_PAIRS} guard")
    counts: defaultdict[int, int] = defaultdict(int)
    for a, wa in D1.atoms:
        for b, wb in D2.atoms:
            counts[a | b] += wa * wb
    return SubsetDistribution._from_counts(D1.n, counts, D1.denominator * D2.denominator)


class EntropyValue(NamedTuple):
    """Entropy in bits, with an upper bound on its absolute rounding error."""

    bits: float
    error: float
    provenance: str = "exact-rational-weights"


def shannon_entropy(D: SubsetDistribution | Iterable[float]) -> EntropyValue:
    """Base-2 Shannon entropy.

    For a ``SubsetDistribution`` the value is ``log2(den) - Σ c·log2(c) / den``
    over the integer numerators ``c``; a plain iterable of probabilities is
    summed in floating point and tagged ``floating``.
    """
    if not isinstance(D, SubsetDistribution):
        ps = [float(p) for p in D]
        if any(p < 0 for p in ps):
            raise DomainError("probabilities must be nonnegative")
        h = -math.fsum(p * math.log2(p) for p in ps if p > 0)
        return EntropyValue(max(h, 0.0), 8 * UNIT_ROUNDOFF * len(ps) * max(1.0, abs(h)), "floating")

    den = D.denominator
    if len(D.atoms) == 1:
        return EntropyValue(0.0, 0.0)
    log_den = math.log2(den)
    weighted = math.fsum(float(c) * math.log2(c) for _, c in D.atoms if c > 1)
    mean = weighted / den
    h = log_den - mean
    # log2 and products carry <= a few ulps each; fsum is correctly rounded.
    err = 2 * UNIT_ROUNDOFF * (4 * log_den + 8 * mean + abs(h) + 1)
    return EntropyValue(min(max(h, 0.0), log_den), err)


# -- the certificate ----------------------------------------------------------


class Verdict(str, enum.Enum):
    PROVED_NOT_UNION_CLOSED = "ProvedNotUnionClosed"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class CertificateReport:
    n: int
    family_size: int
    h_a: EntropyValue
    h_aub: EntropyValue
    verdict: Verdict
    max_fraction: Fraction

    @property
    def margin(self) -> float:
        return self.h_aub.bits - self.h_a.bits

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "family_size": self.family_size,
            "h_a": _sig12(self.h_a.bits),
            "h_aub": _sig12(self.h_aub.bits),
            "max_fraction_num": self.max_fraction.numerator,
            "max_fraction_den": self.max_fraction.denominator,
            "verdict": self.verdict.value,
        }


def _sig12(x: float) -> float:
    return float(f"{x:.12g}")


def gilmer_certificate(F: SetFamily) -> CertificateReport:
    """Compare ``H(A ∪ B)`` with ``log2 |F|`` for iid uniform ``A, B`` on F.

    Entropy exceeding ``log2 |F|`` by more than the combined rounding bound
    shows ``A ∪ B`` has more than ``|F|`` values, so F is not union-closed.
    Anything else is reported as inconclusive.
    """
    if len(F) < 2:
        raise DomainError("the certificate needs |F| >= 2")
    uniform = uniform_distribution(F)
    h_a = shannon_entropy(uniform)
    h_aub = shannon_entropy(union_distribution(uniform, uniform))
    proved = h_aub.bits - h_a.bits > h_a.error + h_aub.error
    return CertificateReport(
        n=F.n,
        family_size=len(F),
        h_a=h_a,
        h_aub=h_aub,
        verdict=Verdict.PROVED_NOT_UNION_CLOSED if proved else Verdict.INCONCLUSIVE,
        max_fraction=frequency_profile(F).max_fraction,
    )


class GilmerRatio(NamedTuple):
    ratio: float
    max_marginal: Fraction
    h_a: float
    h_aub: float


def gilmer_ratio(D: SubsetDistribution) -> GilmerRatio:
    """``H(A ∪ B) / H(A)`` for iid ``A, B ~ D`` together with ``max_i Pr[i ∈ A]``."""
    h_a = shannon_entropy(D).bits
    if len(D) == 1:
        raise DomainError("ratio undefined for a point mass (H(A) = 0)")
    h_aub = shannon_entropy(union_distribution(D, D)).bits
    return GilmerRatio(h_aub / h_a, D.max_marginal(), h_a, h_aub)


def power_corollary_check(F: SetFamily, exponent: float) -> bool:
    """Whether ``|F ∪ F| >= |F| ** exponent``."""
    if len(F) < 2:
        raise DomainError("needs |F| >= 2")
    if not exponent > 1:
        raise DomainError("exponent must exceed 1")
    return len(union_closure_step(F)) >= len(F) ** exponent


# -- the perturbed mixture ----------------------------------------------------


def _as_fraction(delta) -> Fraction:
    try:
        d = Fraction(delta)
    except (TypeError, ValueError):
        raise DomainError(f"delta must be a real number, got {delta!r}") from None
    if not 0 <= d <= 1:
        raise DomainError(f"delta must lie in [0, 1], got {delta}")
    return d


def mixture(D0: SubsetDistribution, D1: SubsetDistribution, delta) -> SubsetDistribution:
    """Atomwise ``(1 - delta)·D0 + delta·D1`` with exact weights."""
    d = _as_fraction(delta)
    if D0.n != D1.n:
        raise DomainError("ground sets differ")
    a, b = d.numerator, d.denominator
    counts: defaultdict[int, int] = defaultdict(int)
    for bits, w in D0.atoms:
        if b - a:
            counts[bits] += (b - a) * w * D1.denominator
    for bits, w in D1.atoms:
        if a:
            counts[bits] += a * w * D0.denominator
    return SubsetDistribution._from_counts(D0.n, counts, b * D0.denominator * D1.denominator)


def perturbed_distribution(F: SetFamily, delta) -> SubsetDistribution:
    """Law of the variable that is ``A`` w.p. ``1 - delta`` and ``A ∪ B`` w.p. ``delta``.

    ``delta`` is taken at its exact value (floats are exact dyadic rationals).
    """
    d = _as_fraction(delta)
    if len(F) < 2:
        raise DomainError("needs |F| >= 2")
    uniform = uniform_distribution(F)
    return mixture(uniform, union_distribution(uniform, uniform), d)


DEFAULT_DELTAS = tuple(2.0**-k for k in range(1, 21))


@dataclass(frozen=True)
class GainScan:
    rows: tuple[tuple[float, float, float], ...]  # (delta, gain, error bound)
    best_delta: float
    best_gain: float

    @property
    def positive(self) -> tuple[float, ...]:
        """Deltas whose gain exceeds its rounding bound."""
        return tuple(d for d, g, e in self.rows if g > e)


def entropy_gain_scan(F: SetFamily, deltas: Iterable[float] | None = None) -> GainScan:
    """Tabulate ``H(A^delta) - H(A)`` over a grid of mixing weights."""
    if is_union_closed(F):
        raise DomainError("F is union-closed: the mixture stays on F and cannot gain entropy")
    deltas = tuple(DEFAULT_DELTAS if deltas is None else deltas)
    if not deltas:
        raise DomainError("no deltas given")
    base = uniform_distribution(F)
    unions = union_distribution(base, base)
    h0 = shannon_entropy(base)
    rows = []
    for delta in deltas:
        d = _as_fraction(delta)
        if d == 0:
            raise DomainError("delta must be positive")
        h = shannon_entropy(mixture(base, unions, d))
        rows.append((float(delta), h.bits - h0.bits, h.error + h0.error))
    best = max(rows, key=lambda r: r[1])
    return GainScan(tuple(rows), best[0], best[1])
