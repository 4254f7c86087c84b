"""Generators and validators for named horoball families.

All generators emit finite truncations of the corresponding infinite
families, in the normalization where the distinguished boundary point is
infinity and the reference horosphere sits at Euclidean height 1.  The
arithmetic families (Farey, geometric) carry exact Fraction coordinates
so disjointness and tangency can be certified with integer arithmetic.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .halfspace import (
    AtInfinityHoroball,
    Horoball,
    TangentHoroball,
    vnorm2,
    vsub,
)
from .numeric import DEFAULT_TOL


@dataclass
class HoroballFamily:
    """Finite ordered family of horoballs in upper half-space."""

    dim: int
    horoballs: list[Horoball]
    labels: Optional[list[str]] = None

    def __post_init__(self):
        if self.dim < 2:
            raise ValueError("ambient dimension must be at least 2")
        for h in self.horoballs:
            if isinstance(h, TangentHoroball) and len(h.base) != self.dim - 1:
                raise ValueError("horoball base dimension does not match family")

    def tangent_items(self) -> list[tuple[int, TangentHoroball]]:
        return [(i, h) for i, h in enumerate(self.horoballs)
                if isinstance(h, TangentHoroball)]


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: list = field(default_factory=list)


def validate_disjoint(fam: HoroballFamily, tol: float = DEFAULT_TOL,
                      exact: bool = False) -> ValidationReport:
    """Check pairwise disjointness of the open horoballs.

    For two tangent horoballs the test is the quadratic certificate
    |x - x'|^2 >= 4 r r' (exact under Fraction coordinates when
    exact=True); a tangent horoball against a horoball at infinity of
    height h requires 2r <= h.  Violating index pairs are reported.
    The float path runs blockwise through numpy; the exact path stays in
    rational arithmetic with zero slack.
    """
    bad = []
    hs = fam.horoballs
    slack = 0 if exact else tol
    tangs = [(i, h) for i, h in enumerate(hs) if isinstance(h, TangentHoroball)]
    infs = [(i, h) for i, h in enumerate(hs) if isinstance(h, AtInfinityHoroball)]
    for k in range(len(infs)):
        for m in range(k + 1, len(infs)):
            bad.append((infs[k][0], infs[m][0]))
    for i, t in tangs:
        for j, inf in infs:
            if 2 * t.radius > inf.height * (1 + slack):
                bad.append(tuple(sorted((i, j))))
    if exact:
        for a in range(len(tangs)):
            ia, ha = tangs[a]
            for b in range(a + 1, len(tangs)):
                ib, hb = tangs[b]
                lhs = vnorm2(vsub(ha.base, hb.base))
                if lhs < 4 * ha.radius * hb.radius:
                    bad.append((ia, ib))
    elif tangs:
        import numpy as np
        idx = np.array([i for i, _ in tangs])
        xs = np.array([[float(c) for c in h.base] for _, h in tangs])
        rs = np.array([float(h.radius) for _, h in tangs])
        n = len(tangs)
        block = max(1, min(n, 8_000_000 // max(n, 1)))
        for lo in range(0, n, block):
            hi = min(lo + block, n)
            diff = xs[lo:hi, None, :] - xs[None, :, :]
            lhs = np.einsum("ijk,ijk->ij", diff, diff)
            rhs = 4 * rs[lo:hi, None] * rs[None, :] * (1 - slack)
            rows, cols = np.nonzero(lhs < rhs)
            for r, c in zip(rows, cols):
                if lo + r < c:
                    bad.append((int(idx[lo + r]), int(idx[c])))
    bad.sort()
    return ValidationReport(not bad, bad)


def farey(q_max: int, p_range: tuple = (0, 1),
          include_infinity: bool = False) -> HoroballFamily:
    """Horoballs tangent at the reduced fractions p/q with q <= q_max and
    p/q inside the closed interval p_range, each of Euclidean radius
    1/(2 q^2); optionally with the reference horoball at infinity.

    Two members are tangent exactly when |p q' - p' q| = 1.
    """
    if q_max < 1:
        raise ValueError("q_max must be at least 1")
    lo, hi = Fraction(p_range[0]), Fraction(p_range[1])
    if lo > hi:
        raise ValueError("empty fraction range")
    balls: list[Horoball] = []
    labels: list[str] = []
    for q in range(1, q_max + 1):
        p_lo = math.ceil(lo * q)
        p_hi = math.floor(hi * q)
        for p in range(p_lo, p_hi + 1):
            if math.gcd(p, q) != 1:
                continue
            balls.append(TangentHoroball((Fraction(p, q),), Fraction(1, 2 * q * q)))
            labels.append(f"{p}/{q}")
    if include_infinity:
        balls.append(AtInfinityHoroball(1))
        labels.append("inf")
    if not balls:
        raise ValueError("no fractions in range")
    return HoroballFamily(2, balls, labels)


def geometric(n_min: int, n_max: int) -> HoroballFamily:
    """Self-similar chain of mutually tangent horoballs with radii 16^n,
    tangent at (8/15)(1 - 16^n); the quadratic packing identity holds
    exactly but the radii are unbounded (negative control for the
    bounded-radius hypothesis of the uncovering result)."""
    if n_min > n_max:
        raise ValueError("empty index range")
    c = Fraction(8, 15)
    balls = [TangentHoroball((c * (1 - Fraction(16) ** n),), Fraction(16) ** n)
             for n in range(n_min, n_max + 1)]
    labels = [str(n) for n in range(n_min, n_max + 1)]
    return HoroballFamily(2, balls, labels)


#: scale factor at which each extremal child is tangent to its parent
#: (positive root of s^2 + 10 s - 7)
EXTREMAL_SCALE = 4 * math.sqrt(2) - 5


def extremal(generations: int, s: float = EXTREMAL_SCALE) -> HoroballFamily:
    """Binary tree of horoballs rooted at the unit ball tangent at 0.

    Children of a ball tangent at x with radius r sit at x +- r(1+s)/2
    with radius r(1-s)/2, i.e. their shadows are exactly the two
    components of the parent shadow minus the scaled parent shadow.  At
    s = EXTREMAL_SCALE every child is tangent to its parent and the whole
    family is pairwise disjoint; below it parents and children overlap.
    Generated breadth first, 2^(generations+1) - 1 horoballs.
    """
    if generations < 1:
        raise ValueError("need at least one generation")
    if not 0 < s < 1:
        raise ValueError("scale factor must lie in (0, 1)")
    zero = 0 * s  # keeps Fraction input exact all the way down
    balls = [TangentHoroball((zero,), zero + 1)]
    labels = [""]
    level = [(balls[0].base[0], balls[0].radius, "")]
    for _ in range(generations):
        nxt = []
        for x, r, tag in level:
            off = r * (1 + s) / 2
            rc = r * (1 - s) / 2
            for sgn, letter in ((-1, "L"), (1, "R")):
                child = (x + sgn * off, rc, tag + letter)
                nxt.append(child)
                balls.append(TangentHoroball((child[0],), rc))
                labels.append(child[2])
        level = nxt
    return HoroballFamily(2, balls, labels)


def random_disjoint(count: int, dim: int = 2, seed: int = 0) -> HoroballFamily:
    """Seed-deterministic family of disjoint tangent horoballs obtained by
    greedy rejection sampling in a bounded base box, radii <= 1/2."""
    if count < 1:
        raise ValueError("count must be positive")
    rng = random.Random(seed)
    side = max(4.0, 2.0 * math.sqrt(count))
    placed: list[TangentHoroball] = []
    attempts = 0
    max_attempts = 400 * count
    while len(placed) < count:
        attempts += 1
        if attempts > max_attempts:
            raise RuntimeError(
                f"could not place {count} disjoint horoballs "
                f"(placed {len(placed)} after {attempts} attempts)")
        base = tuple(rng.uniform(0.0, side) for _ in range(dim - 1))
        radius = rng.uniform(0.05, 0.5)
        ok = True
        for other in placed:
            if vnorm2(vsub(base, other.base)) < 4 * radius * other.radius:
                ok = False
                break
        if ok:
            placed.append(TangentHoroball(base, radius))
    return HoroballFamily(dim, list(placed))
