"""Named families from the union-closed literature and the sharpness experiment."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

import numpy as np

from .analytic import psi_k
from .clauses import Clause, ClauseFamily
from .errors import DomainError
from .family import SetFamily, check_ground, check_size

MAX_FM = 20
BINOMIAL_MODES = ("at_most", "at_least", "exact")


def _full(n: int) -> int:
    return (1 << n) - 1


def make_Fm(m: int) -> SetFamily:
    """All subsets of [m] together with the prefixes [k], m < k <= m², on [m²]."""
    if not isinstance(m, int) or not 1 <= m <= MAX_FM:
        raise DomainError(f"m must lie in 1..{MAX_FM}, got {m}")
    n = m * m
    check_ground(n)
    members = list(range(1 << m))
    members += [_full(k) for k in range(m + 1, n + 1)]
    return SetFamily(n, tuple(members))


def binomial_size(n: int, mode: str, k: int) -> int:
    if mode == "at_most":
        return sum(comb(n, j) for j in range(0, k + 1))
    if mode == "at_least":
        return sum(comb(n, j) for j in range(k, n + 1))
    if mode == "exact":
        return comb(n, k)
    raise DomainError(f"mode must be one of {BINOMIAL_MODES}, got {mode!r}")


def make_binomial(n: int, mode: str, k: int, cap: int | None = None) -> SetFamily:
    """Subsets of [n] with size ``<= k``, ``>= k`` or ``== k``."""
    check_ground(n)
    if not 0 <= k <= n:
        raise DomainError(f"need 0 <= k <= n, got k={k}, n={n}")
    size = binomial_size(n, mode, k)
    check_size(size, cap)
    if mode == "at_most":
        sizes = range(0, k + 1)
    elif mode == "at_least":
        sizes = range(k, n + 1)
    else:
        sizes = (k,)
    members = [
        sum(1 << i for i in combo) for j in sizes for combo in combinations(range(n), j)
    ]
    return SetFamily(n, tuple(members))


def s12_4_original() -> list[frozenset[int]]:
    """The 12-point family on {0, ..., 11}, as plain sets in the original labels."""
    evens = frozenset(range(0, 12, 2))
    odds = frozenset(range(1, 12, 2))
    out = []
    for size in range(4, 13):
        for combo in combinations(range(12), size):
            s = frozenset(combo)
            if {0, 1} <= s or (0 in s and s <= evens) or (1 in s and s <= odds):
                out.append(s)
    return out


# Original label j becomes element j + 1, so the designated pair {0, 1} is {1, 2}.
S12_4_OFFSET = 1


def make_S12_4() -> SetFamily:
    """The 1045-member family on {1..12} with exactly two abundant elements, 1 and 2."""
    return SetFamily.from_sets(12, ([e + S12_4_OFFSET for e in s] for s in s12_4_original()))


def snk_clauses(n: int, k: int) -> ClauseFamily:
    """Clause form of the even/odd construction without parameter checks."""
    full = _full(n)
    odd = sum(1 << (i - 1) for i in range(1, n + 1, 2))
    even = full & ~odd
    return ClauseFamily(
        n,
        (
            Clause(0b11, full, k),  # {1, 2} ⊆ S
            Clause(0b10, even, k),  # 2 ∈ S ⊆ E_n
            Clause(0b01, odd, k),  # 1 ∈ S ⊆ O_n
        ),
    )


def make_Snk(n: int, k: int) -> ClauseFamily:
    """Sets of size >= k containing {1, 2}, or lying in the evens with 2, or the odds with 1.

    The result is implicit (see :class:`ClauseFamily`): for admissible
    parameters it has at least 2**28 members.  Use ``.materialize()`` for
    small cases under the size cap.
    """
    if not isinstance(k, int) or k < 3:
        raise DomainError(f"k must be an integer >= 3, got {k}")
    if not isinstance(n, int) or n % 2 or n < 10 * k:
        raise DomainError(f"n must be even and at least 10k = {10 * k}, got {n}")
    return snk_clauses(n, k)


@dataclass(frozen=True)
class AbundanceInequality:
    lhs: int
    rhs: int

    @property
    def holds(self) -> bool:
        return self.lhs < self.rhs

    def __str__(self) -> str:
        return f"{self.lhs} < {self.rhs}: {'true' if self.holds else 'false'}"


def abundance_inequality(n: int, k: int) -> AbundanceInequality:
    """Exact ``C(n-3, k-3)`` against ``2·Σ_{j >= k-1} C(n/2-2, j)``."""
    if n % 2 or k < 3 or n < k:
        raise DomainError(f"need n even, k >= 3 and n >= k; got n={n}, k={k}")
    half = n // 2 - 2
    rhs = 2 * sum(comb(half, j) for j in range(k - 1, half + 1)) if half >= 0 else 0
    return AbundanceInequality(comb(n - 3, k - 3), rhs)


# -- construction specs (used by the CLI) ---------------------------------------------


@dataclass(frozen=True)
class ConstructionSpec:
    kind: str
    params: dict = field(default_factory=dict)

    KINDS = ("Fm", "BinomialAtMost", "BinomialAtLeast", "BinomialExact", "S12_4", "Snk")

    def build(self) -> SetFamily | ClauseFamily:
        p = self.params
        if self.kind == "Fm":
            return make_Fm(p["m"])
        if self.kind.startswith("Binomial"):
            mode = {"BinomialAtMost": "at_most", "BinomialAtLeast": "at_least", "BinomialExact": "exact"}[self.kind]
            return make_binomial(p["n"], mode, p["k"])
        if self.kind == "S12_4":
            return make_S12_4()
        if self.kind == "Snk":
            return make_Snk(p["n"], p["k"])
        raise DomainError(f"unknown construction {self.kind!r}; expected one of {self.KINDS}")


# -- approximate union-closed sharpness experiment -------------------------------------------


@dataclass(frozen=True)
class ApproxUCResult:
    n: int
    k_draws: int
    trials: int
    seed: int
    slice_size: int
    threshold: int
    p_hat: float
    log_gap: float

    def csv_row(self) -> str:
        return f"{self.n},{self.k_draws},{self.trials},{self.seed},{self.p_hat!r},{self.log_gap:.12g}"


CSV_HEADER = "n,k_draws,trials,seed,p_hat,log_gap"


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """PCG64 stream for one trial, keyed by ``SeedSequence([seed, trial])``."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, trial])))


def slice_parameters(n: int, k_draws: int) -> tuple[int, int]:
    """``(⌈ψ_k·n + n^(2/3)⌉, ⌈(1 - ψ_k)·n⌉)``: the small slice size and the big-set threshold."""
    psi = psi_k(k_draws, 1e-15)
    return math.ceil(psi * n + n ** (2 / 3)), math.ceil((1 - psi) * n)


def log2_count_gap(n: int, slice_size: int, threshold: int) -> float:
    """``log2 C(n, slice) - log2 #{sets of size >= threshold}``, from exact integers."""
    small = comb(n, slice_size)
    big = sum(comb(n, j) for j in range(threshold, n + 1))
    return math.log2(small) - math.log2(big)


def approx_uc_experiment(n: int, k_draws: int, trials: int, seed: int) -> ApproxUCResult:
    """Monte Carlo estimate that a union of k random slice members is a big set.

    Members of the slice are drawn as uniform random subsets of the slice
    size; the slice itself is never listed.
    """
    if n < 100 or k_draws < 2 or trials < 100:
        raise DomainError("need n >= 100, k_draws >= 2 and trials >= 100")
    if not 0 <= seed < 2**64:
        raise DomainError("seed must be a 64-bit unsigned integer")
    size, threshold = slice_parameters(n, k_draws)
    if size > n or threshold > n:
        raise DomainError(f"slice size {size} or threshold {threshold} exceeds n = {n}")
    hits = 0
    for t in range(trials):
        rng = trial_rng(seed, t)
        covered = np.zeros(n, dtype=bool)
        for _ in range(k_draws):
            covered[rng.choice(n, size=size, replace=False)] = True
        hits += int(covered.sum()) >= threshold
    return ApproxUCResult(
        n, k_draws, trials, seed, size, threshold, hits / trials, log2_count_gap(n, size, threshold)
    )
