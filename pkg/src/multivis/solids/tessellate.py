"""Tessellation of solids into polyhedral meshes.

Curved surfaces get exactly `segments_per_circle` divisions per full circle
(partial arcs get a proportional share, rounded up). Faces that would be
non-planar, such as cone or sphere patches, are split into triangles; the
split diagonals and all same-patch edges are marked auxiliary, true solid
edges between different surface patches are marked real.
"""

from __future__ import annotations

import math

import numpy as np

from ..errors import SolidError
from .classify import gap
from .mesh import AUXILIARY, REAL, Edge, Mesh
from .shapes import Box, Cone, Solid, Sphere, Subtraction, Trd, Tube

MIN_SEGMENTS = 12
_PLANAR_TOL = 1e-9


class _Builder:
    def __init__(self):
        self.vertices: list[tuple[float, float, float]] = []
        self._index: dict[tuple[float, float, float], int] = {}
        self.faces: list[tuple[tuple[int, ...], str]] = []

    def vertex(self, p) -> int:
        key = (round(float(p[0]), 9), round(float(p[1]), 9), round(float(p[2]), 9))
        idx = self._index.get(key)
        if idx is None:
            idx = len(self.vertices)
            self._index[key] = idx
            self.vertices.append(key)
        return idx

    def face(self, points, patch: str) -> None:
        idx: list[int] = []
        for p in points:
            i = self.vertex(p)
            if not idx or idx[-1] != i:
                idx.append(i)
        while len(idx) > 1 and idx[0] == idx[-1]:
            idx.pop()
        if len(set(idx)) < 3:
            return
        self.faces.append((tuple(idx), patch))

    def quad_auto(self, p0, p1, p2, p3, patch: str) -> None:
        """Emit a planar quad, or two triangles when the points are skew."""
        a, b, c, d = (np.asarray(p, dtype=float) for p in (p0, p1, p2, p3))
        n = np.cross(b - a, c - a)
        nn = np.linalg.norm(n)
        if nn > 0.0 and abs(np.dot(d - a, n / nn)) <= _PLANAR_TOL:
            self.face((p0, p1, p2, p3), patch)
        else:
            self.face((p0, p1, p2), patch)
            self.face((p0, p2, p3), patch)


def _derive_edges(faces: list[tuple[tuple[int, ...], str]]) -> tuple[Edge, ...]:
    adjacency: dict[tuple[int, int], list[str]] = {}
    for face, patch in faces:
        k = len(face)
        for i in range(k):
            key = tuple(sorted((face[i], face[(i + 1) % k])))
            adjacency.setdefault(key, []).append(patch)
    edges = []
    for (a, b), patches in sorted(adjacency.items()):
        same_patch = len(patches) > 1 and len(set(patches)) == 1
        edges.append(Edge(a, b, AUXILIARY if same_patch else REAL))
    return tuple(edges)


def _arc_divisions(segments: int, delta: float) -> int:
    if delta >= 2.0 * math.pi - 1e-9:
        return segments
    return max(1, math.ceil(segments * delta / (2.0 * math.pi)))


def _ring(radius: float, z: float, phi0: float, dphi: float, n: int) -> list:
    return [
        (
            radius * math.cos(phi0 + dphi * i / n),
            radius * math.sin(phi0 + dphi * i / n),
            z,
        )
        for i in range(n + 1)
    ]


def _swept_solid(b: _Builder, solid: Tube | Cone, segments: int) -> None:
    """Shared builder for tube and cone: walls, caps and phi faces."""
    if isinstance(solid, Tube):
        r_out = (solid.r_max, solid.r_max)
        r_in = (solid.r_min, solid.r_min)
    else:
        r_out = (solid.r_max1, solid.r_max2)
        r_in = (solid.r_min1, solid.r_min2)
    hz = solid.half_z
    phi0, dphi = solid.phi_start, solid.delta_phi
    full = solid.full_phi
    n = _arc_divisions(segments, dphi)
    has_bore = r_in[0] > 0.0 or r_in[1] > 0.0

    bot_out = _ring(r_out[0], -hz, phi0, dphi, n)
    top_out = _ring(r_out[1], +hz, phi0, dphi, n)
    bot_in = _ring(r_in[0], -hz, phi0, dphi, n)
    top_in = _ring(r_in[1], +hz, phi0, dphi, n)

    for i in range(n):
        b.quad_auto(bot_out[i], bot_out[i + 1], top_out[i + 1], top_out[i], "side")
        if has_bore:
            b.quad_auto(bot_in[i], top_in[i], top_in[i + 1], bot_in[i + 1], "bore")

    # caps: full disks become one polygon, annuli become quad rings
    for z_sign, ring_out, ring_in, patch in (
        (+1, top_out, top_in, "zcap+"),
        (-1, bot_out, bot_in, "zcap-"),
    ):
        if max(r_out) == 0.0:
            continue
        if not has_bore:
            if full:
                poly = ring_out[:-1]
            else:
                poly = [(0.0, 0.0, z_sign * hz)] + ring_out
            b.face(poly if z_sign > 0 else poly[::-1], patch)
        else:
            for i in range(n):
                quad = (ring_out[i], ring_out[i + 1], ring_in[i + 1], ring_in[i])
                b.quad_auto(*(quad if z_sign > 0 else quad[::-1]), patch)

    if not full:
        for phi, patch, flip in ((phi0, "phi0", False), (phi0 + dphi, "phi1", True)):
            c, s = math.cos(phi), math.sin(phi)
            quad = (
                (r_in[0] * c, r_in[0] * s, -hz),
                (r_out[0] * c, r_out[0] * s, -hz),
                (r_out[1] * c, r_out[1] * s, +hz),
                (r_in[1] * c, r_in[1] * s, +hz),
            )
            b.quad_auto(*(quad[::-1] if flip else quad), patch)


def _sphere_point(r: float, theta: float, phi: float) -> tuple:
    return (
        r * math.sin(theta) * math.cos(phi),
        r * math.sin(theta) * math.sin(phi),
        r * math.cos(theta),
    )


def _sphere_solid(b: _Builder, s: Sphere, segments: int) -> None:
    n_phi = _arc_divisions(segments, s.delta_phi)
    n_theta = max(1, math.ceil(segments * s.delta_theta / (2.0 * math.pi)))
    thetas = [s.theta_start + s.delta_theta * j / n_theta for j in range(n_theta + 1)]
    phis = [s.phi_start + s.delta_phi * i / n_phi for i in range(n_phi + 1)]

    def grid(r):
        return [[_sphere_point(r, t, p) for p in phis] for t in thetas]

    outer = grid(s.r_max)
    for j in range(n_theta):
        for i in range(n_phi):
            b.quad_auto(
                outer[j][i], outer[j + 1][i], outer[j + 1][i + 1], outer[j][i + 1],
                "shell",
            )
    if s.r_min > 0.0:
        inner = grid(s.r_min)
        for j in range(n_theta):
            for i in range(n_phi):
                b.quad_auto(
                    inner[j][i], inner[j][i + 1], inner[j + 1][i + 1], inner[j + 1][i],
                    "core",
                )

    t_lo = s.theta_start
    t_hi = s.theta_start + s.delta_theta
    for theta, patch, flip in ((t_lo, "tcap0", False), (t_hi, "tcap1", True)):
        if theta < 1e-12 or theta > math.pi - 1e-12:
            continue  # pole: the shell already closes there
        ring_out = [_sphere_point(s.r_max, theta, p) for p in phis]
        ring_in = [_sphere_point(s.r_min, theta, p) for p in phis]
        for i in range(n_phi):
            quad = (ring_in[i], ring_out[i], ring_out[i + 1], ring_in[i + 1])
            b.quad_auto(*(quad[::-1] if flip else quad), patch)

    if not s.full_phi:
        for phi, patch, flip in (
            (s.phi_start, "phi0", False),
            (s.phi_start + s.delta_phi, "phi1", True),
        ):
            col_out = [_sphere_point(s.r_max, t, phi) for t in thetas]
            col_in = [_sphere_point(s.r_min, t, phi) for t in thetas]
            for j in range(n_theta):
                quad = (col_in[j], col_in[j + 1], col_out[j + 1], col_out[j])
                b.quad_auto(*(quad[::-1] if flip else quad), patch)


def _collect(solid: Solid, segments: int) -> tuple[list, list]:
    b = _Builder()
    if isinstance(solid, Box):
        hx, hy, hz = solid.half_x, solid.half_y, solid.half_z
        v = {
            (sx, sy, sz): (sx * hx, sy * hy, sz * hz)
            for sx in (-1, 1)
            for sy in (-1, 1)
            for sz in (-1, 1)
        }
        quads = [
            (((1, -1, -1), (1, 1, -1), (1, 1, 1), (1, -1, 1)), "x+"),
            (((-1, -1, -1), (-1, -1, 1), (-1, 1, 1), (-1, 1, -1)), "x-"),
            (((-1, 1, -1), (-1, 1, 1), (1, 1, 1), (1, 1, -1)), "y+"),
            (((-1, -1, -1), (1, -1, -1), (1, -1, 1), (-1, -1, 1)), "y-"),
            (((-1, -1, 1), (1, -1, 1), (1, 1, 1), (-1, 1, 1)), "z+"),
            (((-1, -1, -1), (-1, 1, -1), (1, 1, -1), (1, -1, -1)), "z-"),
        ]
        for corners, patch in quads:
            b.face([v[c] for c in corners], patch)
    elif isinstance(solid, (Tube, Cone)):
        _swept_solid(b, solid, segments)
    elif isinstance(solid, Trd):
        hz = solid.half_z
        x1, x2, y1, y2 = solid.half_x1, solid.half_x2, solid.half_y1, solid.half_y2
        bot = [(-x1, -y1, -hz), (x1, -y1, -hz), (x1, y1, -hz), (-x1, y1, -hz)]
        top = [(-x2, -y2, hz), (x2, -y2, hz), (x2, y2, hz), (-x2, y2, hz)]
        b.face(bot[::-1], "z-")
        b.face(top, "z+")
        for i, patch in zip(range(4), ("y-", "x+", "y+", "x-")):
            j = (i + 1) % 4
            b.quad_auto(bot[i], bot[j], top[j], top[i], patch)
    elif isinstance(solid, Sphere):
        _sphere_solid(b, solid, segments)
    elif isinstance(solid, Subtraction):
        verts, faces = _collect(solid.left, segments)
        arr = np.asarray(verts, dtype=float)
        inv = solid.relative_transform.inverse()
        kept = []
        for face, patch in faces:
            centroid = arr[list(face)].mean(axis=0)
            if gap(solid.right, inv.apply(centroid)[None, :])[0] > -1e-9:
                kept.append((face, patch))
        return verts, kept
    else:
        raise SolidError(f"unknown solid kind {type(solid)!r}")
    return b.vertices, b.faces


def tessellate(solid: Solid, segments_per_circle: int) -> Mesh:
    """Mesh approximation of a solid; see module docstring for conventions."""
    if segments_per_circle < MIN_SEGMENTS:
        raise SolidError(
            f"segments_per_circle must be >= {MIN_SEGMENTS}, got {segments_per_circle}"
        )
    verts, faces = _collect(solid, segments_per_circle)
    used = sorted({i for face, _ in faces for i in face})
    remap = {old: new for new, old in enumerate(used)}
    vertices = np.asarray([verts[i] for i in used], dtype=float)
    faces = [(tuple(remap[i] for i in face), patch) for face, patch in faces]
    return Mesh(
        vertices=vertices,
        faces=tuple(face for face, _ in faces),
        edges=_derive_edges(faces),
    )
