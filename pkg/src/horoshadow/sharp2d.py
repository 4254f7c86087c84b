"""Sharp interval solver on the boundary line of the hyperbolic plane.

For horoballs tangent to the real line the complement of a scaled shadow
inside the full shadow consists of two closed intervals.  As long as the
scale factor stays at or below 4*sqrt(2) - 5 (the positive root of
s^2 + 10 s - 7), whenever a scaled shadow meets the current interval one
of its two annulus components fits entirely inside it, so a nested
interval chain pins down an endpoint whose vertical geodesic avoids
every scaled horoball.  The threshold is sharp: the extremal binary-tree
packing tiles each component with the shadows of two maximal children.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

from .halfspace import TangentHoroball
from .numeric import DEFAULT_TOL, CertificateError
from .packings import HoroballFamily

#: largest scale factor admitted by the interval dichotomy
SHARP_SCALE = 4 * math.sqrt(2) - 5


class Side(Enum):
    LEFT = "L"
    RIGHT = "R"


@dataclass(frozen=True)
class IntervalComponent:
    """One of the two components of a shadow annulus on the line."""

    interval: tuple
    horoball_index: int
    side: Side

    @property
    def lo(self):
        return self.interval[0]

    @property
    def hi(self):
        return self.interval[1]

    @property
    def midpoint(self):
        return (self.interval[0] + self.interval[1]) / 2


def sharp_shrink_time(a: float = 1.0) -> float:
    """Sharp uniform shrink time for surfaces with curvature pinched in
    [-a^2, -1]; at a = 1 it equals -log(4 sqrt(2) - 5).

    e^(-time) is 2^(2/a) (sqrt(1 + 2^(1-1/a)) - 1 - 2^(-1-1/a)), capped
    by 1 - 2^(-2/a) once a >= 2; increases to infinity with a.
    """
    if a < 1:
        raise ValueError("pinching parameter a must be >= 1")
    em = 2 ** (2 / a) * (math.sqrt(1 + 2 ** (1 - 1 / a)) - 1 - 2 ** (-1 - 1 / a))
    if a >= 2:
        em = min(em, 1 - 2 ** (-2 / a))
    return -math.log(em)


def component_of(h: TangentHoroball, s, side: Side,
                 index: int = -1) -> IntervalComponent:
    b, r = h.base[0], h.radius
    if side is Side.LEFT:
        return IntervalComponent((b - r, b - s * r), index, side)
    return IntervalComponent((b + s * r, b + r), index, side)


def step_2d(K: IntervalComponent, h2: TangentHoroball, s,
            index: int = -1, tol: float = DEFAULT_TOL
            ) -> Optional[IntervalComponent]:
    """Interval dichotomy step: None when the scaled shadow of h2 misses
    K; otherwise an annulus component of h2 contained in K (the one with
    the larger margin to the boundary of K, ties going right).

    A failure to contain either component signals a scale factor above
    the sharp threshold or an invalid family, and raises.
    """
    b, r = h2.base[0], h2.radius
    lo, hi = K.interval
    if b + s * r < lo - tol or b - s * r > hi + tol:
        return None
    candidates = []
    for side in (Side.LEFT, Side.RIGHT):
        c = component_of(h2, s, side, index)
        if c.lo >= lo - tol and c.hi <= hi + tol:
            margin = min(c.lo - lo, hi - c.hi)
            candidates.append((margin, side is Side.RIGHT, c))
    if not candidates:
        raise CertificateError(
            f"no annulus component of horoball {index} fits in {K.interval}; "
            "scale above the sharp threshold or family invalid")
    candidates.sort(key=lambda t: (t[0], t[1]))
    return candidates[-1][2]


@dataclass
class LineSolution:
    endpoint: float
    witness: list[IntervalComponent]
    start_index: int
    scale: float


def solve_2d(fam: HoroballFamily, s, start: Optional[int] = None,
             side: Side = Side.RIGHT, tol: float = DEFAULT_TOL) -> LineSolution:
    """Boundary point whose vertical geodesic avoids every open scaled
    horoball of a planar family, by nested annulus components.

    The scan runs over tangent members by non-increasing radius (ties by
    input index), seeded at the chosen side component of the start
    horoball (largest by default); members at infinity are skipped, as
    no geodesic from infinity can avoid them.  The returned endpoint is
    the midpoint of the final interval; the avoidance certificate
    |endpoint - b_n| >= s r_n - tol is checked against every tangent
    member before returning.
    """
    if fam.dim != 2:
        raise ValueError("the interval solver needs a planar family")
    if not 0 < s <= SHARP_SCALE * (1 + 1e-12):
        raise ValueError(f"scale factor must lie in (0, {SHARP_SCALE}]")
    items = fam.tangent_items()
    if not items:
        raise ValueError("no tangent horoballs to solve against")
    if start is None:
        a0 = max(items, key=lambda ih: (ih[1].radius, -ih[0]))[0]
    else:
        a0 = start
        if not isinstance(fam.horoballs[a0], TangentHoroball):
            raise ValueError("start index is not a tangent horoball")
    h0 = fam.horoballs[a0]
    b0, r0 = h0.base[0], h0.radius
    K = component_of(h0, s, side, a0)
    sup = max(h.radius for _, h in items)
    order = [(i, h) for i, h in items
             if i != a0 and h.radius <= r0 + tol
             and abs(h.base[0] - b0) <= 3 * sup]
    order.sort(key=lambda ih: (-ih[1].radius, ih[0]))
    witness = [K]
    for i, h in order:
        K2 = step_2d(K, h, s, index=i, tol=tol)
        if K2 is not None:
            witness.append(K2)
            K = K2
    endpoint = K.midpoint
    worst = None
    for i, h in items:
        margin = abs(endpoint - h.base[0]) - s * h.radius
        if worst is None or margin < worst[1]:
            worst = (i, margin)
    if worst[1] < -tol:
        raise CertificateError(
            f"endpoint meets scaled shadow of horoball {worst[0]} "
            f"(margin {float(worst[1]):.3e})")
    if not (b0 - r0 - tol <= endpoint <= b0 + r0 + tol):
        raise CertificateError("endpoint escaped the start shadow")
    return LineSolution(endpoint, witness, a0, s)


def scaled_shadow_residual(fam: HoroballFamily, s,
                           window: tuple) -> list[tuple]:
    """Closure of window minus the union of the open scaled shadows, as a
    list of disjoint closed intervals (left to right).

    This is the exact uncovered set a line solver at scale s has to work
    with; the sharpness of SHARP_SCALE shows up as this residual
    collapsing inside a seed component once s exceeds it.
    """
    lo, hi = window
    spans = []
    for _, h in fam.tangent_items():
        b, r = h.base[0], h.radius
        a, b2 = b - s * r, b + s * r
        if b2 <= lo or a >= hi:
            continue
        spans.append((max(a, lo), min(b2, hi)))
    spans.sort()
    out = []
    cur = lo
    for a, b2 in spans:
        if a > cur:
            out.append((cur, a))
        cur = max(cur, b2)
    if cur < hi:
        out.append((cur, hi))
    return out


def dioph_solutions(xi: float, t: float, q_max: int) -> list[Fraction]:
    """All reduced fractions p/q with q <= q_max approximating xi within
    e^(-t) / (2 q^2); equivalently the vertical geodesic at xi meets the
    open horoball tangent at p/q shrunk by time t."""
    if q_max < 1:
        raise ValueError("q_max must be at least 1")
    if t < 0:
        raise ValueError("shrink time must be nonnegative")
    bound = math.exp(-t)
    out = []
    for q in range(1, q_max + 1):
        p = round(xi * q)
        # |xi - p/q| < bound / (2 q^2), with p the nearest integer the
        # only candidate since bound <= 1
        if 2 * q * abs(xi * q - p) < bound and math.gcd(p, q) == 1:
            out.append(Fraction(p, q))
    return out
