import math
from itertools import combinations

import pytest

import oracles
from uclab.clauses import ClauseFamily
from uclab.constructions import (
    CSV_HEADER,
    ConstructionSpec,
    abundance_inequality,
    approx_uc_experiment,
    binomial_size,
    log2_count_gap,
    make_binomial,
    make_Fm,
    make_S12_4,
    make_Snk,
    s12_4_original,
    slice_parameters,
    snk_clauses,
    trial_rng,
)
from uclab.errors import DomainError, ResourceError
from uclab.family import abundant_elements, blocks, frequency_profile, is_union_closed


def snk_oracle(n, k):
    odd = frozenset(range(1, n + 1, 2))
    even = frozenset(range(2, n + 1, 2))
    out = set()
    for size in range(k, n + 1):
        for c in combinations(range(1, n + 1), size):
            s = frozenset(c)
            if {1, 2} <= s or (2 in s and s <= even) or (1 in s and s <= odd):
                out.add(s)
    return out


class TestFm:
    @pytest.mark.parametrize("m", [1, 2, 3, 4])
    def test_union_closed_and_size(self, m):
        F = make_Fm(m)
        assert F.n == m * m
        assert len(F) == 2**m + m * m - m
        sets = oracles.sets_of(F)
        assert oracles.all_unions(sets) <= set(sets)
        assert is_union_closed(F)

    def test_counts(self):
        F = make_Fm(3)
        assert frequency_profile(F).counts == oracles.counts(oracles.sets_of(F), 9)
        assert 1 in abundant_elements(F)

    @pytest.mark.parametrize("m", [0, 21, 2.0])
    def test_range(self, m):
        with pytest.raises(DomainError):
            make_Fm(m)


class TestBinomial:
    @pytest.mark.parametrize("mode", ["at_most", "at_least", "exact"])
    def test_sizes(self, mode):
        for n in range(1, 8):
            for k in range(n + 1):
                F = make_binomial(n, mode, k)
                assert len(F) == binomial_size(n, mode, k)
                assert all(
                    {"at_most": len(s) <= k, "at_least": len(s) >= k, "exact": len(s) == k}[mode]
                    for s in oracles.sets_of(F)
                )

    def test_union_closedness(self):
        assert is_union_closed(make_binomial(6, "at_least", 3))
        assert not is_union_closed(make_binomial(6, "at_most", 3))
        assert not is_union_closed(make_binomial(6, "exact", 2))
        assert is_union_closed(make_binomial(6, "at_most", 6))

    def test_errors(self):
        with pytest.raises(DomainError):
            make_binomial(4, "some", 2)
        with pytest.raises(DomainError):
            make_binomial(4, "exact", 5)
        with pytest.raises(ResourceError):
            make_binomial(30, "at_most", 15)


class TestS12:
    def test_matches_definition(self):
        F = make_S12_4()
        ref = snk_oracle(12, 4)
        assert set(oracles.sets_of(F)) == ref
        assert len(s12_4_original()) == 1045

    def test_properties(self):
        F = make_S12_4()
        assert len(F) == 1045
        assert is_union_closed(F)
        counts = frequency_profile(F).counts
        assert counts[1] == counts[2] == 1029
        assert all(counts[i] == 522 for i in range(3, 13))
        assert abundant_elements(F) == {1, 2}

    def test_equals_clause_form(self):
        assert snk_clauses(12, 4).materialize() == make_S12_4()


class TestSnk:
    @pytest.mark.parametrize("n, k", [(30, 3), (40, 4), (50, 5)])
    def test_admissible(self, n, k):
        F = make_Snk(n, k)
        assert isinstance(F, ClauseFamily)
        assert is_union_closed(F)
        assert abundant_elements(F) == {1, 2}
        assert blocks(F).all_singletons
        assert abundance_inequality(n, k).holds

    @pytest.mark.parametrize("n, k", [(29, 3), (28, 3), (40, 2), (30, 3.0)])
    def test_rejected(self, n, k):
        with pytest.raises(DomainError):
            make_Snk(n, k)

    @pytest.mark.parametrize("n, k", [(10, 3), (10, 4), (12, 3), (12, 5)])
    def test_small_cases_against_oracle(self, n, k):
        F = snk_clauses(n, k)
        ref = snk_oracle(n, k)
        assert F.size == len(ref)
        assert set(oracles.sets_of(F.materialize())) == ref
        assert frequency_profile(F).counts == oracles.counts(ref, n)
        assert is_union_closed(F) == (oracles.all_unions(ref) <= ref)

    def test_inequality_values(self):
        assert str(abundance_inequality(30, 3)) == "1 < 16356: true"
        assert (abundance_inequality(40, 4).lhs, abundance_inequality(40, 4).rhs) == (37, 523944)
        assert (abundance_inequality(50, 5).lhs, abundance_inequality(50, 5).rhs) == (1081, 16773120)
        assert not abundance_inequality(6, 3).holds

    def test_inequality_decides_abundance(self):
        for n in range(6, 31, 2):
            for k in range(3, n // 2 + 2):
                F = snk_clauses(n, k)
                prof = frequency_profile(F)
                only_pair = all(2 * prof.counts[i] < prof.total for i in range(3, n + 1))
                assert only_pair == abundance_inequality(n, k).holds, (n, k)

    def test_inequality_by_brute_force(self):
        n, k = 30, 3
        half = n // 2 - 2
        rhs = 2 * sum(math.comb(half, j) for j in range(k - 1, half + 1))
        assert abundance_inequality(n, k).rhs == rhs
        with pytest.raises(DomainError):
            abundance_inequality(7, 3)


class TestSpecs:
    def test_build(self):
        assert len(ConstructionSpec("Fm", {"m": 2}).build()) == 6
        assert len(ConstructionSpec("BinomialExact", {"n": 5, "k": 2}).build()) == 10
        assert len(ConstructionSpec("S12_4").build()) == 1045
        assert ConstructionSpec("Snk", {"n": 30, "k": 3}).build().size == snk_clauses(30, 3).count()
        with pytest.raises(DomainError):
            ConstructionSpec("Nope").build()


class TestApproxUC:
    def test_slice_parameters(self):
        assert slice_parameters(1000, 2) == (482, 619)

    def test_gap(self):
        assert abs(log2_count_gap(1000, 482, 619) - 38.918) < 1e-3

    def test_rng_is_per_trial(self):
        a = trial_rng(1979, 3).integers(0, 2**32, 4)
        b = trial_rng(1979, 3).integers(0, 2**32, 4)
        c = trial_rng(1979, 4).integers(0, 2**32, 4)
        assert (a == b).all() and not (a == c).all()

    def test_reproducible(self):
        r1 = approx_uc_experiment(200, 2, 100, 7)
        r2 = approx_uc_experiment(200, 2, 100, 7)
        assert r1 == r2
        assert r1.csv_row().count(",") == CSV_HEADER.count(",")

    def test_errors(self):
        with pytest.raises(DomainError):
            approx_uc_experiment(50, 2, 100, 1)
        with pytest.raises(DomainError):
            approx_uc_experiment(1000, 2, 100, -1)
