"""Rigorous checks of the one-variable entropy inequalities, plus ψ_k.

A proof certificate tiles the domain with pieces.  Away from the equality
points each piece carries an interval lower bound of the target function
that is >= 0.  A piece that touches an equality point uses a local argument
instead:

* ``origin``  (key lemma, pieces ``[0, b]``): ``f(x) >= x²·((2-φ)·log2(1/x) - φ·log2 e)``
  and the bracket is decreasing, so it is checked at ``b``.
* ``endpoint`` (key lemma, pieces ``[a, 1]``): with ``y = 1 - x``,
  ``f >= y·((2-φ-y)·log2(1/y) - 2 - φ·log2 e)``, checked at ``y = 1 - a``.
* ``convex`` (key lemma, near ``1/φ``): ``f(1/φ) = f'(1/φ) = 0`` hold exactly,
  so ``f'' > 0`` on the hull of the piece and ``1/φ`` gives ``f >= 0`` there.
* ``monotone`` (refinement, pieces ``[0, b]``): ``p <= 2p-p² <= 1/2`` and h
  is increasing on ``[0, 1/2]``; needs ``2b - b² <= 1/2``.
* ``mirror`` (refinement, pieces ``[a, ψ]``): ``h(2p-p²) = h((1-p)²)`` and
  ``p <= ψ <= (1-p)² <= 1/2``; needs ``(1-a)² <= 1/2``.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import mpmath
import numpy as np
from scipy import optimize

from .errors import DomainError
from .interval import Interval, enclose_mp, log2, monotone_image, mp

_PHI_MP = (1 + mp.sqrt(5)) / 2
PHI = float(_PHI_MP)
PSI = float((3 - mp.sqrt(5)) / 2)
INV_PHI = float(1 / _PHI_MP)

PHI_I = Interval(*enclose_mp(_PHI_MP))
INV_PHI_I = Interval(*enclose_mp(1 / _PHI_MP))
PSI_I = Interval(*enclose_mp((3 - mp.sqrt(5)) / 2))
LOG2E_I = Interval(*enclose_mp(1 / mp.log(2)))
MAX_DEPTH = 60


# -- binary entropy and its derivatives, at 160 bits -------------------------


def _h_mp(t):
    if t == 0 or t == 1:
        return mp.zero
    if t > 0.5:
        t = 1 - t
    return -(t * mp.log(t) + (1 - t) * mp.log1p(-t)) / mp.ln2


def _dh_mp(t):
    return (mp.log1p(-t) - mp.log(t)) / mp.ln2


def _dh_scale(t):
    return (abs(mp.log(t)) + abs(mp.log1p(-t))) / mp.ln2 + 1


def _hpp_mp(t):
    return -1 / (mp.ln2 * t * (1 - t))


def binary_entropy(p):
    """h(p) in double precision; accepts scalars or arrays, with h(0) = h(1) = 0."""
    p = np.asarray(p, dtype=float)
    out = np.zeros_like(p)
    inner = (p > 0) & (p < 1)
    q = p[inner]
    out[inner] = -(q * np.log2(q) + (1 - q) * np.log1p(-q) / np.log(2))
    return out if out.ndim else float(out)


def h_exact(t, prec: int = 160):
    """High-precision h(t) (an mpf), used as an independent scalar oracle."""
    ctx = mpmath.MPContext()
    ctx.prec = prec
    t = ctx.mpf(t)
    if t == 0 or t == 1:
        return ctx.zero
    return -(t * ctx.log(t, 2) + (1 - t) * ctx.log(1 - t, 2))


def _clip01(X: Interval) -> Interval:
    return Interval(max(X.lo, 0.0), min(X.hi, 1.0))


def _in01(X: Interval) -> None:
    if X.lo < 0 or X.hi > 1:
        raise DomainError(f"{X} is not contained in [0, 1]")


def h_interval(X: Interval) -> Interval:
    """Enclosure of ``h`` over ``X ⊆ [0, 1]`` via monotonicity on each half."""
    _in01(X)
    if X.lo == X.hi and X.lo in (0.0, 1.0):
        return Interval(0.0, 0.0)  # exact by convention
    if X.hi <= 0.5:
        out = monotone_image(_h_mp, X, increasing=True)
    elif X.lo >= 0.5:
        out = monotone_image(_h_mp, X, increasing=False)
    else:
        lo = min(enclose_mp(_h_mp(mp.mpf(X.lo)))[0], enclose_mp(_h_mp(mp.mpf(X.hi)))[0])
        out = Interval(lo, 1.0)
    return Interval(max(out.lo, 0.0), min(out.hi, 1.0))


def dh_interval(X: Interval) -> Interval:
    """Enclosure of ``h'(t) = log2((1-t)/t)``, decreasing on (0, 1)."""
    if X.lo <= 0 or X.hi >= 1:
        raise DomainError("h' needs an interval inside (0, 1)")
    return monotone_image(_dh_mp, X, increasing=False, scale=_dh_scale)


def hpp_interval(X: Interval) -> Interval:
    """Enclosure of ``h''(t) = -1/(ln2·t(1-t))``; closest to zero at t = 1/2."""
    if X.lo <= 0 or X.hi >= 1:
        raise DomainError("h'' needs an interval inside (0, 1)")
    ends = [enclose_mp(_hpp_mp(mp.mpf(t))) for t in (X.lo, X.hi)]
    lo = min(e[0] for e in ends)
    centre = min(max(0.5, X.lo), X.hi)
    hi = enclose_mp(_hpp_mp(mp.mpf(centre)))[1]
    return Interval(lo, hi)


# -- target functions ----------------------------------------------------------


def key_lemma_interval(X: Interval) -> Interval:
    """Enclosure of ``h(x²) - φ·x·h(x)`` over ``X ⊆ [0, 1]``."""
    return h_interval(_clip01(X.sqr())) - PHI_I * X * h_interval(X)


def key_lemma_dd_interval(X: Interval) -> Interval:
    """Enclosure of the second derivative of ``h(x²) - φ·x·h(x)`` on ``X ⊂ (0, 1)``."""
    X2 = _clip01(X.sqr())
    return (
        2 * dh_interval(X2)
        + 4 * X2 * hpp_interval(X2)
        - 2 * PHI_I * dh_interval(X)
        - PHI_I * X * hpp_interval(X)
    )


def _q_mp(t):
    return t * (2 - t)


def refinement_interval(X: Interval) -> Interval:
    """Enclosure of ``h(2p - p²) - h(p)`` over ``X ⊆ [0, 1]``."""
    Q = _clip01(monotone_image(_q_mp, X, increasing=True))
    return h_interval(Q) - h_interval(X)


def key_lemma_value(x) -> float:
    """``h(x²) - φ·x·h(x)`` at 160 bits, rounded to a double."""
    x = mp.mpf(x)
    return float(_h_mp(x * x) - _PHI_MP * x * _h_mp(x))


def refinement_value(p) -> float:
    p = mp.mpf(p)
    return float(_h_mp(_q_mp(p)) - _h_mp(p))


# -- local arguments -------------------------------------------------------------
# Each returns a verified margin (>= 0 means the piece is settled) or None when
# the argument does not apply to the piece.


def _origin_margin(P: Interval, domain: Interval) -> float | None:
    if P.lo != 0.0 or not 0 < P.hi <= 0.5:
        return None
    L = -log2(Interval.point(P.hi))
    return ((2 - PHI_I) * L - PHI_I * LOG2E_I).lo


def _endpoint_margin(P: Interval, domain: Interval) -> float | None:
    if P.hi != 1.0 or P.lo < 0.5:
        return None
    y = 1.0 - P.lo  # exact for P.lo >= 1/2
    if y == 0:
        return 0.0
    Y = Interval.point(y)
    coeff = 2 - PHI_I - Y
    if coeff.lo <= 0:
        return None
    return (coeff * -log2(Y) - 2 - PHI_I * LOG2E_I).lo


def _convex_margin(P: Interval, domain: Interval) -> float | None:
    H = P.hull(INV_PHI_I)
    if H.lo <= 0 or H.hi >= 1 or H.width > 0.5:
        return None
    dd = key_lemma_dd_interval(H).lo
    return dd if dd > 0 else -1.0


def _monotone_margin(P: Interval, domain: Interval) -> float | None:
    if P.lo != 0.0:
        return None
    b = Fraction(P.hi)
    slack = Fraction(1, 2) - (2 * b - b * b)
    return float(slack) if slack >= 0 else -1.0


def _mirror_margin(P: Interval, domain: Interval) -> float | None:
    if P.hi != domain.hi or P.lo < 0:
        return None
    a = Fraction(P.lo)
    slack = Fraction(1, 2) - (1 - a) ** 2
    return float(slack) if slack >= 0 else -1.0


@dataclass(frozen=True)
class Target:
    name: str
    expression: str
    domain: Interval
    evaluate: Callable[[Interval], Interval]
    local: dict[str, Callable[[Interval, Interval], float | None]]
    # The upper endpoint is a symbolic constant only approximated by domain.hi,
    # so the piece ending there must be settled by a local argument.
    symbolic_hi: bool = False


TARGETS = {
    "key-lemma": Target(
        "key-lemma",
        "h(x^2) - phi*x*h(x)",
        Interval(0.0, 1.0),
        key_lemma_interval,
        {"origin": _origin_margin, "endpoint": _endpoint_margin, "convex": _convex_margin},
    ),
    "gilmer-refinement": Target(
        "gilmer-refinement",
        "h(2p - p^2) - h(p)",
        Interval(0.0, PSI),
        refinement_interval,
        {"monotone": _monotone_margin, "mirror": _mirror_margin},
        symbolic_hi=True,
    ),
}


# -- certificates -----------------------------------------------------------------


class Status(str, enum.Enum):
    PROVED = "Proved"
    FAILED = "Failed"


@dataclass(frozen=True)
class Piece:
    lo: float
    hi: float
    lower_bound: float
    method: str = "interval"
    margin: float = 0.0

    @property
    def interval(self) -> Interval:
        return Interval(self.lo, self.hi)

    def to_line(self) -> str:
        return (
            f"[{self.lo!r}, {self.hi!r}] lower_bound={self.lower_bound!r} "
            f"method={self.method} margin={self.margin!r}"
        )


@dataclass(frozen=True)
class ProofCertificate:
    target: str
    domain: Interval
    pieces: tuple[Piece, ...]
    tolerance: float
    status: Status
    witness: Interval | None = None

    @property
    def proved(self) -> bool:
        return self.status is Status.PROVED

    def method_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for p in self.pieces:
            counts[p.method] = counts.get(p.method, 0) + 1
        return counts

    def serialize(self) -> str:
        lines = [
            f"target={self.target}",
            f"domain=[{self.domain.lo!r}, {self.domain.hi!r}]",
            f"tolerance={self.tolerance!r}",
        ]
        lines += [p.to_line() for p in self.pieces]
        status = f"status={self.status.value}"
        if self.witness is not None:
            status += f" witness=[{self.witness.lo!r}, {self.witness.hi!r}]"
        lines.append(status)
        return "\n".join(lines) + "\n"


def _settle(target: Target, P: Interval) -> Piece | None:
    at_symbolic_end = target.symbolic_hi and P.hi == target.domain.hi
    if not at_symbolic_end:
        bound = target.evaluate(P).lo
        if bound >= 0:
            return Piece(P.lo, P.hi, bound, "interval", bound)
    for name, check in target.local.items():
        margin = check(P, target.domain)
        if margin is not None and margin >= 0:
            return Piece(P.lo, P.hi, 0.0, name, margin)
    return None


def certify(target_name: str, tolerance: float = 1e-9, max_depth: int = MAX_DEPTH) -> ProofCertificate:
    """Adaptive midpoint bisection of the target's domain.

    A piece that cannot be settled is split until its width drops below
    ``tolerance`` or the depth reaches ``max_depth``; that piece is then
    returned as the failure witness.
    """
    if not tolerance > 0:
        raise DomainError("tolerance must be positive")
    target = TARGETS[target_name]
    pieces: list[Piece] = []
    stack = [(target.domain, 0)]
    while stack:
        P, depth = stack.pop()
        piece = _settle(target, P)
        if piece is not None:
            pieces.append(piece)
            continue
        if depth >= max_depth or P.width < tolerance:
            return ProofCertificate(target_name, target.domain, tuple(pieces), tolerance, Status.FAILED, P)
        left, right = P.split()
        stack.append((right, depth + 1))
        stack.append((left, depth + 1))
    return ProofCertificate(target_name, target.domain, tuple(pieces), tolerance, Status.PROVED)


def verify_key_lemma(tolerance: float = 1e-9) -> ProofCertificate:
    """Certificate that ``h(x²) >= φ·x·h(x)`` on ``[0, 1]``."""
    return certify("key-lemma", tolerance)


def verify_gilmer_refinement(tolerance: float = 1e-9) -> ProofCertificate:
    """Certificate that ``h(p) <= h(2p - p²)`` on ``[0, ψ]``."""
    return certify("gilmer-refinement", tolerance)


# -- replay -------------------------------------------------------------------

_NUM = r"([-+0-9.eEinfa]+)"
_PIECE = re.compile(
    rf"^\[{_NUM}, {_NUM}\] lower_bound={_NUM} method=(\w+) margin={_NUM}$"
)
_DOMAIN = re.compile(rf"^domain=\[{_NUM}, {_NUM}\]$")


@dataclass
class ReplayResult:
    ok: bool
    pieces_checked: int = 0
    problems: list[str] = field(default_factory=list)


def replay_certificate(text: str) -> ReplayResult:
    """Re-derive every piece of a serialized certificate from scratch.

    Checks the status line, that the pieces tile the domain without gaps,
    and that each piece's method re-verifies with a nonnegative margin.
    Stored bounds are parsed but never trusted.
    """
    result = ReplayResult(ok=True)

    def fail(msg):
        result.ok = False
        result.problems.append(msg)

    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if len(lines) < 4 or not lines[0].startswith("target="):
        fail("truncated or malformed certificate")
        return result
    name = lines[0].split("=", 1)[1]
    if name not in TARGETS:
        fail(f"unknown target {name!r}")
        return result
    target = TARGETS[name]
    m = _DOMAIN.match(lines[1])
    if not m or Interval(float(m.group(1)), float(m.group(2))) != target.domain:
        fail("domain line does not match the target's domain")
    if lines[-1].split()[0] != "status=Proved":
        fail(f"certificate does not claim a proof: {lines[-1]}")

    cursor = target.domain.lo
    for ln in lines[3:-1]:
        m = _PIECE.match(ln)
        if not m:
            fail(f"unparseable piece line {ln!r}")
            continue
        lo, hi, method = float(m.group(1)), float(m.group(2)), m.group(4)
        if lo != cursor:
            fail(f"gap or overlap at {cursor!r} (next piece starts at {lo!r})")
        cursor = hi
        P = Interval(lo, hi)
        if method == "interval":
            if target.symbolic_hi and hi == target.domain.hi:
                fail(f"{P}: the symbolic endpoint needs a local argument")
                continue
            margin = target.evaluate(P).lo
        elif method in target.local:
            margin = target.local[method](P, target.domain)
        else:
            fail(f"{P}: unknown method {method!r}")
            continue
        if margin is None or margin < 0:
            fail(f"{P}: method {method} does not re-verify (margin {margin})")
        result.pieces_checked += 1
    if cursor != target.domain.hi:
        fail(f"pieces stop at {cursor!r}, short of {target.domain.hi!r}")
    return result


# -- two-variable exploration -----------------------------------------------------


def two_variate(x, y):
    """``h(xy) / (h(x)·y + h(y)·x)`` on ``(0, 1)²``."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return binary_entropy(x * y) / (binary_entropy(x) * y + binary_entropy(y) * x)


@dataclass(frozen=True)
class TwoVariateScan:
    min_value: float
    argmin: tuple[float, float]
    grid_min: float
    grid_argmin: tuple[float, float]
    resolution: int
    reference: float = PHI / 2
    rigorous: bool = False  # floating-point grid plus local polish, not a proof


def two_variate_scan(grid_resolution: int = 1000) -> TwoVariateScan:
    """Grid search plus Nelder-Mead polish of the two-variable ratio.

    Exploratory only: the report is labelled non-rigorous.
    """
    if grid_resolution < 100:
        raise DomainError("grid_resolution must be at least 100")
    ticks = (np.arange(grid_resolution) + 0.5) / grid_resolution
    X, Y = np.meshgrid(ticks, ticks, indexing="ij")
    values = two_variate(X, Y)
    i, j = np.unravel_index(np.argmin(values), values.shape)
    start = (float(ticks[i]), float(ticks[j]))

    eps = 1e-12

    def objective(v):
        x, y = np.clip(v, eps, 1 - eps)
        return float(two_variate(x, y))

    res = optimize.minimize(objective, start, method="Nelder-Mead", options={"xatol": 1e-12, "fatol": 1e-15, "maxiter": 4000})
    best = (float(res.fun), tuple(float(c) for c in np.clip(res.x, eps, 1 - eps)))
    if best[0] > values[i, j]:
        best = (float(values[i, j]), start)
    return TwoVariateScan(best[0], best[1], float(values[i, j]), start, grid_resolution)


# -- ψ_k --------------------------------------------------------------------------


def psi_k(k: int, tolerance: float = 1e-12) -> float:
    """Root in [0, 1] of ``(1 - x)**k = x`` by bisection (the map is decreasing)."""
    if not isinstance(k, int) or k < 1:
        raise DomainError("k must be a positive integer")
    if not tolerance > 0:
        raise DomainError("tolerance must be positive")
    lo, hi = 0.0, 1.0
    while hi - lo > tolerance:
        mid = (lo + hi) / 2
        g = (1 - mid) ** k - mid
        if g == 0:
            return mid
        if g > 0:
            lo = mid
        else:
            hi = mid
        if mid in (lo, hi) and hi - lo <= 2 * math.ulp(mid):
            break
    return (lo + hi) / 2


@dataclass(frozen=True)
class Constants:
    phi: float
    psi: float
    psi_k: dict[int, float]


def constants(kmax: int = 10, tolerance: float = 1e-12) -> Constants:
    return Constants(PHI, PSI, {k: psi_k(k, tolerance) for k in range(1, kmax + 1)})
