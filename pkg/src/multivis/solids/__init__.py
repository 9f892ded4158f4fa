"""Geometry kernel: shapes, classification, ray casting, meshing, MC volumes."""

from .classify import INSIDE, OUTSIDE, SURFACE, classify_many, contains, gap
from .mesh import (
    AUXILIARY,
    REAL,
    Edge,
    Mesh,
    edge_use_counts,
    face_normal,
    max_planarity_error,
    signed_volume,
)
from .montecarlo import McVolume, mc_volume
from .rays import (
    Ray,
    RayHit,
    first_hits,
    ray_box_window,
    ray_intersect,
    surface_normals,
)
from .shapes import (
    MAX_BOOLEAN_DEPTH,
    RAY_TOL,
    SURFACE_TOL,
    TWO_PI,
    Aabb,
    Box,
    Cone,
    Solid,
    Sphere,
    Subtraction,
    Trd,
    Tube,
    analytic_volume,
    boolean_depth,
    bounding_box,
    describe,
    solid_kind,
)
from .tessellate import MIN_SEGMENTS, tessellate

__all__ = [
    "Aabb",
    "AUXILIARY",
    "Box",
    "Cone",
    "Edge",
    "INSIDE",
    "MAX_BOOLEAN_DEPTH",
    "MIN_SEGMENTS",
    "McVolume",
    "Mesh",
    "OUTSIDE",
    "RAY_TOL",
    "REAL",
    "Ray",
    "RayHit",
    "SURFACE",
    "SURFACE_TOL",
    "Solid",
    "Sphere",
    "Subtraction",
    "TWO_PI",
    "Trd",
    "Tube",
    "analytic_volume",
    "boolean_depth",
    "bounding_box",
    "classify_many",
    "contains",
    "describe",
    "edge_use_counts",
    "face_normal",
    "first_hits",
    "gap",
    "max_planarity_error",
    "mc_volume",
    "ray_box_window",
    "ray_intersect",
    "signed_volume",
    "solid_kind",
    "surface_normals",
    "tessellate",
]
