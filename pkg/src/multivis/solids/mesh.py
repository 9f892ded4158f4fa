"""Polyhedral mesh: vertices, polygon faces, and real/auxiliary edges."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from ..errors import SolidError

REAL = "real"
AUXILIARY = "auxiliary"


class Edge(NamedTuple):
    a: int
    b: int
    kind: str


@dataclass(frozen=True, eq=False)
class Mesh:
    vertices: np.ndarray  # (V, 3) mm
    faces: tuple[tuple[int, ...], ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=float).reshape(-1, 3)
        v.flags.writeable = False
        object.__setattr__(self, "vertices", v)
        nv = v.shape[0]
        for face in self.faces:
            if len(face) < 3:
                raise SolidError("mesh face needs at least 3 vertices")
            for idx in face:
                if not (0 <= idx < nv):
                    raise SolidError(f"face index {idx} out of range (V={nv})")
        for e in self.edges:
            if not (0 <= e.a < nv and 0 <= e.b < nv):
                raise SolidError("edge index out of range")

    def face_points(self, face) -> np.ndarray:
        return self.vertices[list(face)]

    def real_edges(self) -> list[Edge]:
        return [e for e in self.edges if e.kind == REAL]

    def auxiliary_edges(self) -> list[Edge]:
        return [e for e in self.edges if e.kind == AUXILIARY]


def face_normal(points: np.ndarray) -> np.ndarray:
    """Newell normal, robust for any planar polygon; not normalised."""
    n = np.zeros(3)
    k = len(points)
    for i in range(k):
        p, q = points[i], points[(i + 1) % k]
        n[0] += (p[1] - q[1]) * (p[2] + q[2])
        n[1] += (p[2] - q[2]) * (p[0] + q[0])
        n[2] += (p[0] - q[0]) * (p[1] + q[1])
    return n


def signed_volume(mesh: Mesh) -> float:
    """Divergence-theorem volume; positive for outward-wound closed meshes."""
    total = 0.0
    v = mesh.vertices
    for face in mesh.faces:
        p0 = v[face[0]]
        for i in range(1, len(face) - 1):
            p1, p2 = v[face[i]], v[face[i + 1]]
            total += float(np.dot(p0, np.cross(p1, p2)))
    return total / 6.0


def max_planarity_error(mesh: Mesh) -> float:
    """Largest distance of any face vertex from its best-fit plane (mm)."""
    worst = 0.0
    for face in mesh.faces:
        pts = mesh.face_points(face)
        if len(pts) == 3:
            continue
        centre = pts.mean(axis=0)
        rel = pts - centre
        # smallest singular vector is the best-fit plane normal
        _, _, vt = np.linalg.svd(rel, full_matrices=False)
        dev = float(np.max(np.abs(rel @ vt[-1])))
        worst = max(worst, dev)
    return worst


def edge_use_counts(mesh: Mesh) -> dict[tuple[int, int], int]:
    counts: dict[tuple[int, int], int] = {}
    for face in mesh.faces:
        k = len(face)
        for i in range(k):
            key = tuple(sorted((face[i], face[(i + 1) % k])))
            counts[key] = counts.get(key, 0) + 1
    return counts
