"""Ray intersection for all solids, batch-first.

Strategy: collect every parameter value where the ray crosses a bounding
plane or quadric (a superset of true boundary crossings is fine), sort them,
then classify the midpoint of each segment with `gap`. The first segment
boundary where occupancy flips is the hit. This one algorithm serves the
primitives and, because `gap` composes, boolean subtractions as well; it is
exact to root-finding precision rather than to a march step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import SolidError
from .classify import gap
from .shapes import (
    RAY_TOL,
    Box,
    Cone,
    Solid,
    Sphere,
    Subtraction,
    Trd,
    Tube,
    bounding_box,
)

_TINY = 1e-300


@dataclass(frozen=True, eq=False)
class Ray:
    origin: np.ndarray
    direction: np.ndarray

    def __post_init__(self):
        o = np.asarray(self.origin, dtype=float).reshape(3)
        d = np.asarray(self.direction, dtype=float).reshape(3)
        n = float(np.linalg.norm(d))
        if abs(n - 1.0) > 1e-12:
            if n == 0.0:
                raise SolidError("ray direction must be a unit vector")
            d = d / n
        o.flags.writeable = False
        d.flags.writeable = False
        object.__setattr__(self, "origin", o)
        object.__setattr__(self, "direction", d)


@dataclass(frozen=True, eq=False)
class RayHit:
    distance: float
    normal: np.ndarray
    entering: bool


def _plane_t(o_c, d_c, target):
    with np.errstate(divide="ignore", invalid="ignore"):
        t = (target - o_c) / np.where(np.abs(d_c) < _TINY, np.nan, d_c)
    return t


def _quad_t(a, b, c):
    """Roots of a t^2 + b t + c = 0, stable form, nan where absent."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    c = np.asarray(c, dtype=float)
    with np.errstate(invalid="ignore", divide="ignore"):
        disc = b * b - 4.0 * a * c
        sq = np.sqrt(np.where(disc >= 0.0, disc, np.nan))
        q = -0.5 * (b + np.sign(np.where(b == 0.0, 1.0, b)) * sq)
        lin = np.abs(a) < 1e-30
        t0 = np.where(lin, np.nan, q / np.where(np.abs(a) < _TINY, np.nan, a))
        t1 = np.where(lin, np.nan, c / np.where(np.abs(q) < _TINY, np.nan, q))
        # degenerate quadratic falls back to the linear root
        t_lin = -c / np.where(np.abs(b) < _TINY, np.nan, b)
        t0 = np.where(lin, t_lin, t0)
    return t0, t1


def _phi_plane_ts(o, d, phi):
    n = np.array([-math.sin(phi), math.cos(phi), 0.0])
    denom = d @ n
    with np.errstate(divide="ignore", invalid="ignore"):
        return -(o @ n) / np.where(np.abs(denom) < _TINY, np.nan, denom)


def _cone_surface_ts(o, d, a_r, b_r):
    """Crossings of rho = a_r + b_r z."""
    ox, oy, oz = o[:, 0], o[:, 1], o[:, 2]
    dx, dy, dz = d[:, 0], d[:, 1], d[:, 2]
    base = a_r + b_r * oz
    qa = dx * dx + dy * dy - (b_r * dz) ** 2
    qb = 2.0 * (ox * dx + oy * dy - b_r * dz * base)
    qc = ox * ox + oy * oy - base * base
    return _quad_t(qa, qb, qc)


def candidates(solid: Solid, o: np.ndarray, d: np.ndarray) -> np.ndarray:
    """(N, K) crossing-parameter candidates, nan-padded."""
    ox, oy, oz = o[:, 0], o[:, 1], o[:, 2]
    dx, dy, dz = d[:, 0], d[:, 1], d[:, 2]
    cols: list[np.ndarray] = []

    if isinstance(solid, Box):
        for c, (oc, dc) in zip(
            (solid.half_x, solid.half_y, solid.half_z), ((ox, dx), (oy, dy), (oz, dz))
        ):
            cols.append(_plane_t(oc, dc, c))
            cols.append(_plane_t(oc, dc, -c))

    elif isinstance(solid, Tube):
        qa = dx * dx + dy * dy
        qb = 2.0 * (ox * dx + oy * dy)
        qc0 = ox * ox + oy * oy
        cols.extend(_quad_t(qa, qb, qc0 - solid.r_max**2))
        if solid.r_min > 0.0:
            cols.extend(_quad_t(qa, qb, qc0 - solid.r_min**2))
        cols.append(_plane_t(oz, dz, solid.half_z))
        cols.append(_plane_t(oz, dz, -solid.half_z))
        if not solid.full_phi:
            cols.append(_phi_plane_ts(o, d, solid.phi_start))
            cols.append(_phi_plane_ts(o, d, solid.phi_start + solid.delta_phi))

    elif isinstance(solid, Cone):
        a_out = (solid.r_max1 + solid.r_max2) / 2.0
        b_out = (solid.r_max2 - solid.r_max1) / (2.0 * solid.half_z)
        cols.extend(_cone_surface_ts(o, d, a_out, b_out))
        if solid.r_min1 > 0.0 or solid.r_min2 > 0.0:
            a_in = (solid.r_min1 + solid.r_min2) / 2.0
            b_in = (solid.r_min2 - solid.r_min1) / (2.0 * solid.half_z)
            cols.extend(_cone_surface_ts(o, d, a_in, b_in))
        cols.append(_plane_t(oz, dz, solid.half_z))
        cols.append(_plane_t(oz, dz, -solid.half_z))
        if not solid.full_phi:
            cols.append(_phi_plane_ts(o, d, solid.phi_start))
            cols.append(_phi_plane_ts(o, d, solid.phi_start + solid.delta_phi))

    elif isinstance(solid, Trd):
        a_x = (solid.half_x1 + solid.half_x2) / 2.0
        b_x = (solid.half_x2 - solid.half_x1) / (2.0 * solid.half_z)
        a_y = (solid.half_y1 + solid.half_y2) / 2.0
        b_y = (solid.half_y2 - solid.half_y1) / (2.0 * solid.half_z)
        for s in (1.0, -1.0):
            denom = s * dx - b_x * dz
            with np.errstate(divide="ignore", invalid="ignore"):
                cols.append(
                    (a_x + b_x * oz - s * ox)
                    / np.where(np.abs(denom) < _TINY, np.nan, denom)
                )
            denom = s * dy - b_y * dz
            with np.errstate(divide="ignore", invalid="ignore"):
                cols.append(
                    (a_y + b_y * oz - s * oy)
                    / np.where(np.abs(denom) < _TINY, np.nan, denom)
                )
        cols.append(_plane_t(oz, dz, solid.half_z))
        cols.append(_plane_t(oz, dz, -solid.half_z))

    elif isinstance(solid, Sphere):
        qb = 2.0 * (ox * dx + oy * dy + oz * dz)
        qc0 = ox * ox + oy * oy + oz * oz
        cols.extend(_quad_t(np.ones_like(qb), qb, qc0 - solid.r_max**2))
        if solid.r_min > 0.0:
            cols.extend(_quad_t(np.ones_like(qb), qb, qc0 - solid.r_min**2))
        if not solid.full_theta:
            for theta in (solid.theta_start, solid.theta_start + solid.delta_theta):
                if theta < 1e-12 or theta > math.pi - 1e-12:
                    continue
                if abs(theta - math.pi / 2.0) < 1e-12:
                    cols.append(_plane_t(oz, dz, 0.0))
                    continue
                k = math.tan(theta) ** 2
                qa = dx * dx + dy * dy - k * dz * dz
                qbt = 2.0 * (ox * dx + oy * dy - k * oz * dz)
                qct = ox * ox + oy * oy - k * oz * oz
                cols.extend(_quad_t(qa, qbt, qct))
        if not solid.full_phi:
            cols.append(_phi_plane_ts(o, d, solid.phi_start))
            cols.append(_phi_plane_ts(o, d, solid.phi_start + solid.delta_phi))

    elif isinstance(solid, Subtraction):
        inv = solid.relative_transform.inverse()
        return np.hstack(
            [
                candidates(solid.left, o, d),
                candidates(solid.right, inv.apply(o), inv.apply_direction(d)),
            ]
        )

    else:
        raise SolidError(f"unknown solid kind {type(solid)!r}")

    return np.column_stack(cols)


def surface_fields(solid: Solid, p: np.ndarray):
    """Per-surface absolute distances and outward unit normals.

    Returns (dists (N, S), normals (N, S, 3)); consumed by `surface_normals`
    through an argmin over surfaces.
    """
    n_pts = p.shape[0]
    x, y, z = p[:, 0], p[:, 1], p[:, 2]
    dists: list[np.ndarray] = []
    normals: list[np.ndarray] = []

    def add_const(dist, nvec):
        dists.append(np.abs(dist))
        normals.append(np.broadcast_to(np.asarray(nvec, dtype=float), (n_pts, 3)))

    def add_var(dist, nx, ny, nz):
        dists.append(np.abs(dist))
        normals.append(np.stack([nx, ny, nz], axis=1))

    def radial_unit():
        rho = np.hypot(x, y)
        safe = np.where(rho < _TINY, 1.0, rho)
        ux = np.where(rho < _TINY, 1.0, x / safe)
        uy = np.where(rho < _TINY, 0.0, y / safe)
        return rho, ux, uy

    def add_phi_planes(phi_start, delta_phi):
        for phi, sign in ((phi_start, -1.0), (phi_start + delta_phi, 1.0)):
            nvec = sign * np.array([-math.sin(phi), math.cos(phi), 0.0])
            dists.append(np.abs(x * (-math.sin(phi)) + y * math.cos(phi)))
            normals.append(np.broadcast_to(nvec, (n_pts, 3)))

    if isinstance(solid, Box):
        add_const(x - solid.half_x, (1, 0, 0))
        add_const(x + solid.half_x, (-1, 0, 0))
        add_const(y - solid.half_y, (0, 1, 0))
        add_const(y + solid.half_y, (0, -1, 0))
        add_const(z - solid.half_z, (0, 0, 1))
        add_const(z + solid.half_z, (0, 0, -1))

    elif isinstance(solid, Tube):
        rho, ux, uy = radial_unit()
        add_var(rho - solid.r_max, ux, uy, np.zeros(n_pts))
        if solid.r_min > 0.0:
            add_var(rho - solid.r_min, -ux, -uy, np.zeros(n_pts))
        add_const(z - solid.half_z, (0, 0, 1))
        add_const(z + solid.half_z, (0, 0, -1))
        if not solid.full_phi:
            add_phi_planes(solid.phi_start, solid.delta_phi)

    elif isinstance(solid, Cone):
        rho, ux, uy = radial_unit()
        a_out = (solid.r_max1 + solid.r_max2) / 2.0
        b_out = (solid.r_max2 - solid.r_max1) / (2.0 * solid.half_z)
        s_out = 1.0 / math.hypot(1.0, b_out)
        add_var(
            (rho - (a_out + b_out * z)) * s_out,
            ux * s_out,
            uy * s_out,
            np.full(n_pts, -b_out * s_out),
        )
        if solid.r_min1 > 0.0 or solid.r_min2 > 0.0:
            a_in = (solid.r_min1 + solid.r_min2) / 2.0
            b_in = (solid.r_min2 - solid.r_min1) / (2.0 * solid.half_z)
            s_in = 1.0 / math.hypot(1.0, b_in)
            add_var(
                (rho - (a_in + b_in * z)) * s_in,
                -ux * s_in,
                -uy * s_in,
                np.full(n_pts, b_in * s_in),
            )
        add_const(z - solid.half_z, (0, 0, 1))
        add_const(z + solid.half_z, (0, 0, -1))
        if not solid.full_phi:
            add_phi_planes(solid.phi_start, solid.delta_phi)

    elif isinstance(solid, Trd):
        a_x = (solid.half_x1 + solid.half_x2) / 2.0
        b_x = (solid.half_x2 - solid.half_x1) / (2.0 * solid.half_z)
        a_y = (solid.half_y1 + solid.half_y2) / 2.0
        b_y = (solid.half_y2 - solid.half_y1) / (2.0 * solid.half_z)
        sx = 1.0 / math.hypot(1.0, b_x)
        sy = 1.0 / math.hypot(1.0, b_y)
        add_const((x - (a_x + b_x * z)) * sx, (sx, 0.0, -b_x * sx))
        add_const((-x - (a_x + b_x * z)) * sx, (-sx, 0.0, -b_x * sx))
        add_const((y - (a_y + b_y * z)) * sy, (0.0, sy, -b_y * sy))
        add_const((-y - (a_y + b_y * z)) * sy, (0.0, -sy, -b_y * sy))
        add_const(z - solid.half_z, (0, 0, 1))
        add_const(z + solid.half_z, (0, 0, -1))

    elif isinstance(solid, Sphere):
        r = np.sqrt(x * x + y * y + z * z)
        safe = np.where(r < _TINY, 1.0, r)
        ux, uy, uz = x / safe, y / safe, z / safe
        add_var(r - solid.r_max, ux, uy, uz)
        if solid.r_min > 0.0:
            add_var(r - solid.r_min, -ux, -uy, -uz)
        if not solid.full_theta:
            rho = np.hypot(x, y)
            srho = np.where(rho < _TINY, 1.0, rho)
            cphi = np.where(rho < _TINY, 1.0, x / srho)
            sphi = np.where(rho < _TINY, 0.0, y / srho)
            theta_p = np.arctan2(rho, z)
            t1 = solid.theta_start
            t2 = solid.theta_start + solid.delta_theta
            if t1 > 1e-12:
                add_var(
                    r * np.sin(np.clip(theta_p - t1, -math.pi / 2, math.pi / 2)),
                    -math.cos(t1) * cphi,
                    -math.cos(t1) * sphi,
                    np.full(n_pts, math.sin(t1)),
                )
            if t2 < math.pi - 1e-12:
                add_var(
                    r * np.sin(np.clip(theta_p - t2, -math.pi / 2, math.pi / 2)),
                    math.cos(t2) * cphi,
                    math.cos(t2) * sphi,
                    np.full(n_pts, -math.sin(t2)),
                )
        if not solid.full_phi:
            add_phi_planes(solid.phi_start, solid.delta_phi)

    elif isinstance(solid, Subtraction):
        d_left, n_left = surface_fields(solid.left, p)
        inv = solid.relative_transform.inverse()
        local = inv.apply(p)
        d_right, n_right = surface_fields(solid.right, local)
        # carved surfaces face the other way
        rot = solid.relative_transform.rotation
        n_right = -(n_right @ rot.T)
        return (
            np.concatenate([d_left, d_right], axis=1),
            np.concatenate([n_left, n_right], axis=1),
        )

    else:
        raise SolidError(f"unknown solid kind {type(solid)!r}")

    return np.stack(dists, axis=1), np.stack(normals, axis=1)


def surface_normals(solid: Solid, points: np.ndarray) -> np.ndarray:
    """Outward unit normal of the nearest surface for each point."""
    p = np.asarray(points, dtype=float)
    if p.ndim == 1:
        p = p[None, :]
    dists, normals = surface_fields(solid, p)
    pick = np.argmin(dists, axis=1)
    return normals[np.arange(p.shape[0]), pick]


def first_hits(solid: Solid, origins, directions, t_min=RAY_TOL):
    """Nearest occupancy transition along each ray.

    Returns (t, normal, entering, hit) arrays; `t_min` may be scalar or per
    ray. A ray starting on a surface is treated as exiting it: crossings at
    or below t_min never count.
    """
    o = np.asarray(origins, dtype=float).reshape(-1, 3)
    d = np.asarray(directions, dtype=float).reshape(-1, 3)
    n = o.shape[0]
    t_lo = np.broadcast_to(np.asarray(t_min, dtype=float), (n,)).astype(float)

    cand = candidates(solid, o, d)
    cand = np.where(cand > t_lo[:, None], cand, np.nan)
    ts = np.sort(cand, axis=1)
    valid = np.isfinite(ts)

    lefts = np.concatenate([t_lo[:, None], ts[:, :-1]], axis=1)
    mids = np.where(valid, (lefts + ts) / 2.0, 0.0)
    pts = o[:, None, :] + mids[:, :, None] * d[:, None, :]
    occ = np.zeros(ts.shape, dtype=bool)
    if valid.any():
        flat = pts.reshape(-1, 3)[valid.ravel()]
        occ_flat = gap(solid, flat) <= 0.0
        occ.ravel()[np.flatnonzero(valid.ravel())] = occ_flat

    occ_right = np.concatenate([occ[:, 1:], np.zeros((n, 1), dtype=bool)], axis=1)
    # occupancy beyond the last crossing is outside for any bounded solid
    trans = valid & (occ != occ_right)
    hit = trans.any(axis=1)
    first = np.argmax(trans, axis=1)
    rows = np.arange(n)
    t_hit = np.where(hit, ts[rows, first], np.inf)
    entering = hit & occ_right[rows, first]

    normals = np.zeros((n, 3))
    if hit.any():
        hp = o[hit] + t_hit[hit, None] * d[hit]
        normals[hit] = surface_normals(solid, hp)
    return t_hit, normals, entering, hit


def ray_intersect(solid: Solid, ray: Ray) -> RayHit | None:
    """Nearest non-negative intersection, or None when the ray misses."""
    t, normal, entering, hit = first_hits(
        solid, ray.origin[None, :], ray.direction[None, :]
    )
    if not bool(hit[0]):
        return None
    return RayHit(float(t[0]), normal[0], bool(entering[0]))


def ray_box_window(box, origins, directions):
    """Slab-test entry/exit parameters against an Aabb, (t0, t1) arrays."""
    o = np.asarray(origins, dtype=float).reshape(-1, 3)
    d = np.asarray(directions, dtype=float).reshape(-1, 3)
    with np.errstate(divide="ignore", invalid="ignore"):
        inv = 1.0 / np.where(np.abs(d) < _TINY, np.nan, d)
        ta = (box.lo[None, :] - o) * inv
        tb = (box.hi[None, :] - o) * inv
        lo = np.fmin(ta, tb)
        hi = np.fmax(ta, tb)
        # nan slabs (parallel rays) only constrain when the origin is outside
        outside = (o < box.lo[None, :]) | (o > box.hi[None, :])
        lo = np.where(np.isnan(lo), np.where(outside, np.inf, -np.inf), lo)
        hi = np.where(np.isnan(hi), np.where(outside, -np.inf, np.inf), hi)
    return lo.max(axis=1), hi.min(axis=1)
