"""Closed real intervals with outward rounding.

CPython offers no portable control of the FPU rounding mode, so the four
basic operations use the correctly rounded IEEE result and step one ulp
outward with ``math.nextafter``.  Transcendental point values are computed
at 160-bit precision with mpmath and then rounded outward to doubles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .errors import DomainError

_INF = math.inf

mp = mpmath.MPContext()
mp.prec = 160
# Relative error budget of a 160-bit evaluation, with a wide safety factor.
_REL = mp.mpf(2) ** -140
_ABS_TINY = mp.mpf(2) ** -1100


def down(x: float) -> float:
    return math.nextafter(x, -_INF)


def up(x: float) -> float:
    return math.nextafter(x, _INF)


def round_down(v) -> float:
    """Largest double that is ``<= v`` for an mpf ``v``."""
    f = float(v)
    if mp.mpf(f) > v:
        f = down(f)
    return f


def round_up(v) -> float:
    f = float(v)
    if mp.mpf(f) < v:
        f = up(f)
    return f


def enclose_mp(v, scale=None) -> tuple[float, float]:
    """Double bounds around a 160-bit value with error at most ``scale * 2**-140``."""
    scale = abs(v) if scale is None else scale
    err = scale * _REL + _ABS_TINY
    return round_down(v - err), round_up(v + err)


@dataclass(frozen=True, slots=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        if math.isnan(self.lo) or math.isnan(self.hi):
            raise DomainError("interval endpoint is NaN")
        if self.lo > self.hi:
            raise DomainError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x: float) -> Interval:
        return cls(float(x), float(x))

    @classmethod
    def enclose(cls, value) -> Interval:
        """Tightest double interval around an exact rational or an mpf."""
        if isinstance(value, (int, Fraction)):
            q = Fraction(value)
            f = float(q)
            lo = f if Fraction(f) <= q else down(f)
            hi = f if Fraction(f) >= q else up(f)
            return cls(lo, hi)
        return cls(*enclose_mp(mp.mpf(value)))

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        return self.lo + (self.hi - self.lo) / 2

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def contains_interval(self, other: Interval) -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def hull(self, other: Interval) -> Interval:
        return Interval(min(self.lo, other.lo), max(self.hi, other.hi))

    def split(self) -> tuple[Interval, Interval]:
        m = self.mid
        return Interval(self.lo, m), Interval(m, self.hi)

    def __neg__(self) -> Interval:
        return Interval(-self.hi, -self.lo)

    def __add__(self, other) -> Interval:
        o = _coerce(other)
        return Interval(down(self.lo + o.lo), up(self.hi + o.hi))

    __radd__ = __add__

    def __sub__(self, other) -> Interval:
        o = _coerce(other)
        return Interval(down(self.lo - o.hi), up(self.hi - o.lo))

    def __rsub__(self, other) -> Interval:
        return _coerce(other) - self

    def __mul__(self, other) -> Interval:
        o = _coerce(other)
        ps = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(down(min(ps)), up(max(ps)))

    __rmul__ = __mul__

    def __truediv__(self, other) -> Interval:
        o = _coerce(other)
        if o.lo <= 0 <= o.hi:
            raise DomainError("interval division by an interval containing 0")
        qs = (self.lo / o.lo, self.lo / o.hi, self.hi / o.lo, self.hi / o.hi)
        return Interval(down(min(qs)), up(max(qs)))

    def __rtruediv__(self, other) -> Interval:
        return _coerce(other) / self

    def sqr(self) -> Interval:
        lo, hi = self.lo, self.hi
        if lo >= 0:
            return Interval(down(lo * lo), up(hi * hi))
        if hi <= 0:
            return Interval(down(hi * hi), up(lo * lo))
        return Interval(0.0, up(max(lo * lo, hi * hi)))

    def __repr__(self) -> str:
        return f"[{self.lo!r}, {self.hi!r}]"


def _coerce(x) -> Interval:
    if isinstance(x, Interval):
        return x
    if isinstance(x, (int, float)):
        f = float(x)
        if isinstance(x, int) and f != x:
            return Interval.enclose(x)
        return Interval(f, f)
    if isinstance(x, Fraction):
        return Interval.enclose(x)
    raise TypeError(f"cannot combine Interval with {type(x).__name__}")


def monotone_image(fn, X: Interval, increasing: bool, scale=None) -> Interval:
    """Enclosure of a monotone function evaluated at 160 bits on the endpoints."""
    a, b = mp.mpf(X.lo), mp.mpf(X.hi)
    fa, fb = fn(a), fn(b)
    la, ha = enclose_mp(fa, None if scale is None else scale(a))
    lb, hb = enclose_mp(fb, None if scale is None else scale(b))
    return Interval(la, hb) if increasing else Interval(lb, ha)


def log2(X: Interval) -> Interval:
    if X.lo <= 0:
        raise DomainError("log2 needs a positive interval")
    return monotone_image(lambda t: mp.log(t, 2), X, True, scale=lambda t: abs(mp.log(t, 2)) + 1)
