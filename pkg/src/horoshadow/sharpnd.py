"""Sharp solver in any dimension via maximal annulus balls and rotation.

The planar constant survives in higher dimensions: a maximal Euclidean
ball K inscribed in a shadow annulus either misses a scaled shadow or,
after rotating the offending center about K's center into the line
through the annulus center and K's center, the planar interval step
applies on that line and the resulting ball rotates back into K.  All of
this is plain Euclidean geometry in the boundary R^(n-1).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .halfspace import TangentHoroball
from .numeric import DEFAULT_TOL, CertificateError
from .packings import HoroballFamily
from .sharp2d import SHARP_SCALE

#: below this sine of the rotation angle the configuration counts as
#: collinear and the rotation (ill-conditioned there) is skipped
COLLINEAR_SIN = 1e-12


@dataclass(frozen=True)
class AnnulusBall:
    """Maximal Euclidean ball of a shadow annulus: radius r(1-s)/2 with
    center at distance r(1+s)/2 from the shadow center."""

    center: tuple
    radius: float
    horoball_index: int = -1

    @property
    def c(self) -> np.ndarray:
        return np.asarray(self.center, dtype=float)


def maximal_annulus_ball(h: TangentHoroball, s: float, direction,
                         index: int = -1) -> AnnulusBall:
    """Maximal ball of the annulus of h at scale s touching the outer
    sphere in the given unit direction."""
    if not 0 < s < 1:
        raise ValueError("scale factor must lie in (0, 1)")
    u = np.asarray(direction, dtype=float)
    n = np.linalg.norm(u)
    if abs(n - 1) > 1e-9:
        raise ValueError("direction must be a unit vector")
    b = np.asarray(h.base, dtype=float)
    r = float(h.radius)
    center = b + u * (r * (1 + s) / 2)
    return AnnulusBall(tuple(map(float, center)), r * (1 - s) / 2, index)


def _line_step(y1: float, R: float, b2: float, r2: float, s: float,
               tol: float) -> Optional[float]:
    """Planar step on an oriented line: current interval [y1-R, y1+R],
    other shadow centered b2 with radius r2.  Returns the center of the
    chosen annulus component (margin rule, ties toward +), or None."""
    lo, hi = y1 - R, y1 + R
    if b2 + s * r2 < lo - tol or b2 - s * r2 > hi + tol:
        return None
    best = None
    for sgn in (-1.0, 1.0):
        c_lo, c_hi = ((b2 - r2, b2 - s * r2) if sgn < 0
                      else (b2 + s * r2, b2 + r2))
        if c_lo >= lo - tol and c_hi <= hi + tol:
            margin = min(c_lo - lo, hi - c_hi)
            if best is None or (margin, sgn) > (best[0], best[1]):
                best = (margin, sgn, (c_lo + c_hi) / 2)
    if best is None:
        raise CertificateError(
            "no annulus component fits on the reduction line; "
            "scale above the sharp threshold or family invalid")
    return best[2]


def step_hnr(parent: TangentHoroball, K: AnnulusBall, other: TangentHoroball,
             s: float, index: int = -1,
             tol: float = DEFAULT_TOL) -> Optional[AnnulusBall]:
    """Dimension-reduction step: None when K misses the scaled shadow of
    `other`; otherwise a maximal annulus ball of `other` inside K.

    With x the parent shadow center, y = K.center and x2 the other
    center, x2 is rotated in the plane spanned by (y - x) and (x2 - y)
    about y onto the line through x and y, on the far side of y; the
    planar step runs on that line and the resulting ball center rotates
    back.  Collinear configurations (and x2 = y) skip the rotation.
    Containment in K is asserted.
    """
    x = np.asarray(parent.base, dtype=float)
    y = K.c
    x2 = np.asarray(other.base, dtype=float)
    r2 = float(other.radius)
    d_scaled = np.linalg.norm(x2 - y)
    if d_scaled > K.radius + s * r2 + tol:
        return None
    u = y - x
    nu = np.linalg.norm(u)
    if nu == 0:
        raise ValueError("annulus ball centered at the shadow center")
    u = u / nu
    w = x2 - y
    nw = np.linalg.norm(w)
    if nw <= tol:
        # other center at y: any line through y works, use the axis line
        coord = _line_step(nu, K.radius, float(np.dot(x2 - x, u)), r2, s, tol)
        if coord is None:
            return None
        center = x + coord * u
    else:
        wpar = float(np.dot(w, u))
        wperp = w - wpar * u
        nperp = np.linalg.norm(wperp)
        if nperp <= COLLINEAR_SIN * nw:
            # already on the line through x and y
            coord = _line_step(nu, K.radius, float(np.dot(x2 - x, u)), r2, s, tol)
            if coord is None:
                return None
            center = x + coord * u
        else:
            # rotate x2 about y onto the line, beyond y as seen from x
            b2_line = nu + nw  # rotated center coordinate on the line
            coord = _line_step(nu, K.radius, b2_line, r2, s, tol)
            if coord is None:
                return None
            # rotate the 1-D answer back: u maps to the unit vector
            # from y toward x2, and the answer lies on the rotated line
            center = y + (coord - nu) * (w / nw)
    K2 = AnnulusBall(tuple(map(float, center)), r2 * (1 - s) / 2, index)
    gap = float(np.linalg.norm(K2.c - y)) + K2.radius - K.radius
    if gap > tol:
        raise CertificateError(
            f"rotated annulus ball not contained (excess {gap:.3e})")
    return K2


@dataclass
class SpaceSolution:
    endpoint: tuple
    witness: list[AnnulusBall]
    start_index: int
    scale: float


def solve_hnr(fam: HoroballFamily, s: float, start: Optional[int] = None,
              direction=None, tol: float = DEFAULT_TOL) -> SpaceSolution:
    """Boundary point in R^(n-1) whose vertical geodesic avoids every open
    scaled horoball; same loop as the planar solver with annulus balls.

    Antipodal seed directions produce endpoints at distance at least
    s times the start radius.  The avoidance certificate
    |endpoint - b_n| >= s r_n - tol is checked for every tangent member.
    """
    if not 0 < s <= SHARP_SCALE * (1 + 1e-12):
        raise ValueError(f"scale factor must lie in (0, {SHARP_SCALE}]")
    items = fam.tangent_items()
    if not items:
        raise ValueError("no tangent horoballs to solve against")
    dim = fam.dim - 1
    if direction is None:
        direction = (1.0,) + (0.0,) * (dim - 1)
    if start is None:
        a0 = max(items, key=lambda ih: (ih[1].radius, -ih[0]))[0]
    else:
        a0 = start
        if not isinstance(fam.horoballs[a0], TangentHoroball):
            raise ValueError("start index is not a tangent horoball")
    h0 = fam.horoballs[a0]
    r0 = float(h0.radius)
    b0 = np.asarray(h0.base, dtype=float)
    K = maximal_annulus_ball(h0, s, direction, a0)
    sup = max(float(h.radius) for _, h in items)
    order = [(i, h) for i, h in items
             if i != a0 and float(h.radius) <= r0 + tol
             and np.linalg.norm(np.asarray(h.base, float) - b0) <= 3 * sup]
    order.sort(key=lambda ih: (-float(ih[1].radius), ih[0]))
    witness = [K]
    parent = h0
    for i, h in order:
        K2 = step_hnr(parent, K, h, s, index=i, tol=tol)
        if K2 is not None:
            witness.append(K2)
            K = K2
            parent = h
    endpoint = K.c
    worst = None
    for i, h in items:
        margin = float(np.linalg.norm(endpoint - np.asarray(h.base, float))
                       - s * float(h.radius))
        if worst is None or margin < worst[1]:
            worst = (i, margin)
    if worst[1] < -tol:
        raise CertificateError(
            f"endpoint meets scaled shadow of horoball {worst[0]} "
            f"(margin {worst[1]:.3e})")
    if np.linalg.norm(endpoint - b0) > r0 + tol:
        raise CertificateError("endpoint escaped the start shadow")
    return SpaceSolution(tuple(map(float, endpoint)), witness, a0, s)
