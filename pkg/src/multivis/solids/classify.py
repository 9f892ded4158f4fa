"""Point classification against solids.

The workhorse is `gap`: the largest signed distance to any bounding surface,
negative inside. Each term is an exact perpendicular distance to its plane,
cylinder, cone or sphere, so classification bands around faces are honest;
near concave edges the combined value is merely conservative, which is all
the Monte-Carlo sampler and the ray marcher need. The arithmetic accumulates
in place: this function dominates Monte-Carlo volume integration and the
march oracles, so temporaries are kept to a minimum.
"""

from __future__ import annotations

import math

import numpy as np

from ..errors import SolidError
from .shapes import (
    SURFACE_TOL,
    Box,
    Cone,
    Solid,
    Sphere,
    Subtraction,
    Trd,
    Tube,
)

INSIDE = 1
SURFACE = 0
OUTSIDE = -1


def _phi_gap(x, y, phi_start: float, delta_phi: float):
    """Signed distance to a phi wedge boundary; negative inside the wedge."""
    p0 = phi_start
    p1 = phi_start + delta_phi
    # d0 > 0 on the inside flank of the start plane, d1 < 0 before the end plane
    d0 = x * (-math.sin(p0))
    d0 += y * math.cos(p0)
    d1 = x * (-math.sin(p1))
    d1 += y * math.cos(p1)
    if delta_phi <= math.pi:
        np.negative(d0, out=d0)
        np.maximum(d0, d1, out=d0)
    else:
        np.negative(d0, out=d0)
        np.minimum(d0, d1, out=d0)
    return d0


def gap(solid: Solid, points: np.ndarray) -> np.ndarray:
    """Signed boundary gap for an (N, 3) array of local-frame points."""
    p = np.asarray(points, dtype=float)
    if p.ndim == 1:
        p = p[None, :]
    x, y, z = p[:, 0], p[:, 1], p[:, 2]

    if isinstance(solid, Box):
        g = np.abs(x)
        g -= solid.half_x
        t = np.abs(y)
        t -= solid.half_y
        np.maximum(g, t, out=g)
        np.abs(z, out=t)
        t -= solid.half_z
        np.maximum(g, t, out=g)
        return g

    if isinstance(solid, Tube):
        rho = x * x
        rho += y * y
        np.sqrt(rho, out=rho)
        g = rho - solid.r_max
        t = np.abs(z)
        t -= solid.half_z
        np.maximum(g, t, out=g)
        if solid.r_min > 0.0:
            np.subtract(solid.r_min, rho, out=t)
            np.maximum(g, t, out=g)
        if not solid.full_phi:
            np.maximum(g, _phi_gap(x, y, solid.phi_start, solid.delta_phi), out=g)
        return g

    if isinstance(solid, Cone):
        rho = x * x
        rho += y * y
        np.sqrt(rho, out=rho)
        a_out = (solid.r_max1 + solid.r_max2) / 2.0
        b_out = (solid.r_max2 - solid.r_max1) / (2.0 * solid.half_z)
        g = z * (-b_out)
        g += rho
        g -= a_out
        g /= math.hypot(1.0, b_out)
        t = np.abs(z)
        t -= solid.half_z
        np.maximum(g, t, out=g)
        if solid.r_min1 > 0.0 or solid.r_min2 > 0.0:
            a_in = (solid.r_min1 + solid.r_min2) / 2.0
            b_in = (solid.r_min2 - solid.r_min1) / (2.0 * solid.half_z)
            np.multiply(z, b_in, out=t)
            t += a_in
            t -= rho
            t /= math.hypot(1.0, b_in)
            np.maximum(g, t, out=g)
        if not solid.full_phi:
            np.maximum(g, _phi_gap(x, y, solid.phi_start, solid.delta_phi), out=g)
        return g

    if isinstance(solid, Trd):
        a_x = (solid.half_x1 + solid.half_x2) / 2.0
        b_x = (solid.half_x2 - solid.half_x1) / (2.0 * solid.half_z)
        a_y = (solid.half_y1 + solid.half_y2) / 2.0
        b_y = (solid.half_y2 - solid.half_y1) / (2.0 * solid.half_z)
        g = np.abs(x)
        g -= z * b_x
        g -= a_x
        g /= math.hypot(1.0, b_x)
        t = np.abs(y)
        t -= z * b_y
        t -= a_y
        t /= math.hypot(1.0, b_y)
        np.maximum(g, t, out=g)
        np.abs(z, out=t)
        t -= solid.half_z
        np.maximum(g, t, out=g)
        return g

    if isinstance(solid, Sphere):
        r = x * x
        r += y * y
        zz = z * z
        r += zz
        np.sqrt(r, out=r)
        g = r - solid.r_max
        if solid.r_min > 0.0:
            t = np.subtract(solid.r_min, r)
            np.maximum(g, t, out=g)
        if not solid.full_theta:
            rho = x * x
            rho += y * y
            np.sqrt(rho, out=rho)
            theta_p = np.arctan2(rho, z)
            t1 = solid.theta_start
            t2 = solid.theta_start + solid.delta_theta
            half_pi = math.pi / 2.0
            if t1 > 1e-12:
                term = theta_p - t1
                np.clip(term, -half_pi, half_pi, out=term)
                np.sin(term, out=term)
                term *= r
                np.negative(term, out=term)
                np.maximum(g, term, out=g)
            if t2 < math.pi - 1e-12:
                term = theta_p - t2
                np.clip(term, -half_pi, half_pi, out=term)
                np.sin(term, out=term)
                term *= r
                np.maximum(g, term, out=g)
        if not solid.full_phi:
            np.maximum(g, _phi_gap(x, y, solid.phi_start, solid.delta_phi), out=g)
        return g

    if isinstance(solid, Subtraction):
        local = solid.relative_transform.inverse().apply(p)
        g = gap(solid.left, p)
        carve = gap(solid.right, local)
        np.negative(carve, out=carve)
        np.maximum(g, carve, out=g)
        return g

    raise SolidError(f"unknown solid kind {type(solid)!r}")


def classify_many(solid: Solid, points, tol: float = SURFACE_TOL) -> np.ndarray:
    """INSIDE/SURFACE/OUTSIDE codes for a batch of points."""
    g = gap(solid, points)
    out = np.zeros(g.shape, dtype=np.int8)
    out[g > tol] = OUTSIDE
    out[g < -tol] = INSIDE
    return out


def contains(solid: Solid, point, tol: float = SURFACE_TOL) -> str:
    """Classify one point as 'inside', 'surface' or 'outside'."""
    code = int(classify_many(solid, np.asarray(point, dtype=float)[None, :], tol)[0])
    return {INSIDE: "inside", SURFACE: "surface", OUTSIDE: "outside"}[code]
