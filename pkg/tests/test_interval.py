import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from uclab.errors import DomainError
from uclab.interval import Interval, log2, mp

finite = st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False)


@st.composite
def intervals(draw):
    a, b = draw(finite), draw(finite)
    return Interval(min(a, b), max(a, b))


def encloses(X, exact):
    """Exact containment check that tolerates infinite (overflowed) bounds."""
    lo_ok = X.lo == -math.inf or (X.lo != math.inf and Fraction(X.lo) <= exact)
    hi_ok = X.hi == math.inf or (X.hi != -math.inf and exact <= Fraction(X.hi))
    return lo_ok and hi_ok


def pick(rng, X):
    return X.lo + (X.hi - X.lo) * rng.random()


class TestBasics:
    def test_empty_and_nan(self):
        with pytest.raises(DomainError):
            Interval(1.0, 0.0)
        with pytest.raises(DomainError):
            Interval(math.nan, 1.0)

    def test_enclose_rational(self):
        third = Interval.enclose(Fraction(1, 3))
        assert Fraction(third.lo) < Fraction(1, 3) < Fraction(third.hi)
        assert third.hi == math.nextafter(third.lo, 1)
        assert Interval.enclose(Fraction(1, 2)) == Interval.point(0.5)

    def test_split_and_hull(self):
        left, right = Interval(0.0, 1.0).split()
        assert left == Interval(0.0, 0.5) and right == Interval(0.5, 1.0)
        assert left.hull(right) == Interval(0.0, 1.0)

    def test_division_by_zero_interval(self):
        with pytest.raises(DomainError):
            Interval(1.0, 2.0) / Interval(-1.0, 1.0)

    def test_overflow_widens_to_infinity(self):
        Q = Interval(0.0, 466.0) / Interval(-1.0, -2.5892369570749413e-306)
        assert Q.lo == -math.inf and 0.0 <= Q.hi <= 5e-324

    def test_sqr_straddling_zero(self):
        assert Interval(-2.0, 1.0).sqr().lo == 0.0

    def test_log2_domain(self):
        with pytest.raises(DomainError):
            log2(Interval(0.0, 1.0))
        assert 3 in log2(Interval.point(8.0))


class TestOutwardRounding:
    @given(intervals(), intervals(), st.floats(0, 1), st.floats(0, 1))
    def test_arithmetic_contains_exact_result(self, A, B, s, t):
        x = Fraction(A.lo) + (Fraction(A.hi) - Fraction(A.lo)) * Fraction(s)
        y = Fraction(B.lo) + (Fraction(B.hi) - Fraction(B.lo)) * Fraction(t)
        for op, exact in ((A + B, x + y), (A - B, x - y), (A * B, x * y)):
            assert encloses(op, exact)
        assert encloses(A.sqr(), x * x)
        if not B.lo <= 0 <= B.hi:
            assert encloses(A / B, x / y)

    def test_random_points(self):
        rng = random.Random(2024)
        for _ in range(20_000):
            A = Interval(*sorted((rng.uniform(-10, 10), rng.uniform(-10, 10))))
            B = Interval(*sorted((rng.uniform(0.1, 10), rng.uniform(0.1, 10))))
            x, y = Fraction(pick(rng, A)), Fraction(pick(rng, B))
            for op, exact in ((A + B, x + y), (A * B, x * y), (A / B, x / y)):
                assert Fraction(op.lo) <= exact <= Fraction(op.hi)

    def test_log2_contains_high_precision_value(self):
        rng = random.Random(5)
        for _ in range(2_000):
            a = rng.uniform(1e-9, 100)
            X = Interval(a, a * (1 + rng.random() * 1e-3))
            L = log2(X)
            for t in (X.lo, X.hi, pick(rng, X)):
                v = mp.log(mp.mpf(t), 2)
                assert mp.mpf(L.lo) <= v <= mp.mpf(L.hi)
