"""Shape parameter records, validation, analytic volumes and bounding boxes.

All lengths are mm, all angles rad. Shapes are immutable after construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from ..errors import SolidError
from ..transform import Transform

TWO_PI = 2.0 * math.pi
_PHI_FULL_EPS = 1e-9

SURFACE_TOL = 1e-9  # mm, half-width of the surface classification band
RAY_TOL = 1e-7  # mm, minimum accepted hit distance along a ray

MAX_BOOLEAN_DEPTH = 16


@dataclass(frozen=True, eq=False)
class Aabb:
    """Axis-aligned box given by lo/hi corners in mm."""

    lo: np.ndarray
    hi: np.ndarray

    def __post_init__(self):
        lo = np.asarray(self.lo, dtype=float).reshape(3)
        hi = np.asarray(self.hi, dtype=float).reshape(3)
        lo.flags.writeable = False
        hi.flags.writeable = False
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def corners(self) -> np.ndarray:
        lo, hi = self.lo, self.hi
        return np.array(
            [
                [x, y, z]
                for x in (lo[0], hi[0])
                for y in (lo[1], hi[1])
                for z in (lo[2], hi[2])
            ]
        )

    def centre(self) -> np.ndarray:
        return (self.lo + self.hi) / 2.0

    def half_sizes(self) -> np.ndarray:
        return (self.hi - self.lo) / 2.0

    def half_diagonal(self) -> float:
        return float(np.linalg.norm(self.half_sizes()))

    def volume(self) -> float:
        return float(np.prod(np.maximum(self.hi - self.lo, 0.0)))

    def union(self, other: "Aabb") -> "Aabb":
        return Aabb(np.minimum(self.lo, other.lo), np.maximum(self.hi, other.hi))

    def expanded(self, margin: float) -> "Aabb":
        return Aabb(self.lo - margin, self.hi + margin)

    def contains_box(self, other: "Aabb", slack: float = 0.0) -> bool:
        return bool(
            np.all(other.lo >= self.lo - slack) and np.all(other.hi <= self.hi + slack)
        )

    def transformed(self, tr: Transform) -> "Aabb":
        pts = tr.apply(self.corners())
        return Aabb(pts.min(axis=0), pts.max(axis=0))


def _positive(name: str, *values: float) -> None:
    for v in values:
        if not (v > 0.0):
            raise SolidError(f"{name}: half-lengths and radii must be > 0 (got {v})")


def _check_phi(name: str, phi_start: float, delta_phi: float) -> None:
    if not (0.0 < delta_phi <= TWO_PI + _PHI_FULL_EPS):
        raise SolidError(f"{name}: delta_phi must be in (0, 2pi], got {delta_phi}")
    if not math.isfinite(phi_start):
        raise SolidError(f"{name}: phi_start must be finite")


def _check_radii(name: str, r_min: float, r_max: float) -> None:
    if not (r_max > r_min >= 0.0):
        raise SolidError(f"{name}: need r_max > r_min >= 0, got {r_min}..{r_max}")


@dataclass(frozen=True)
class Box:
    name: str
    half_x: float
    half_y: float
    half_z: float

    def __post_init__(self):
        _positive(self.name, self.half_x, self.half_y, self.half_z)


@dataclass(frozen=True)
class Tube:
    name: str
    r_min: float
    r_max: float
    half_z: float
    phi_start: float = 0.0
    delta_phi: float = TWO_PI

    def __post_init__(self):
        _positive(self.name, self.r_max, self.half_z)
        _check_radii(self.name, self.r_min, self.r_max)
        _check_phi(self.name, self.phi_start, self.delta_phi)

    @property
    def full_phi(self) -> bool:
        return self.delta_phi >= TWO_PI - _PHI_FULL_EPS


@dataclass(frozen=True)
class Cone:
    """Truncated cone: radii r_*1 at z = -half_z, r_*2 at z = +half_z."""

    name: str
    r_min1: float
    r_max1: float
    r_min2: float
    r_max2: float
    half_z: float
    phi_start: float = 0.0
    delta_phi: float = TWO_PI

    def __post_init__(self):
        _positive(self.name, self.half_z)
        for rmin, rmax in ((self.r_min1, self.r_max1), (self.r_min2, self.r_max2)):
            # a fully collapsed end (rmin == rmax == 0) is the apex case
            if rmax == 0.0 and rmin == 0.0:
                continue
            _check_radii(self.name, rmin, rmax)
        if self.r_max1 == 0.0 and self.r_max2 == 0.0:
            raise SolidError(f"{self.name}: cone cannot be degenerate at both ends")
        _check_phi(self.name, self.phi_start, self.delta_phi)

    @property
    def full_phi(self) -> bool:
        return self.delta_phi >= TWO_PI - _PHI_FULL_EPS

    def r_outer(self, z: float) -> float:
        f = (z + self.half_z) / (2.0 * self.half_z)
        return self.r_max1 + (self.r_max2 - self.r_max1) * f

    def r_inner(self, z: float) -> float:
        f = (z + self.half_z) / (2.0 * self.half_z)
        return self.r_min1 + (self.r_min2 - self.r_min1) * f


@dataclass(frozen=True)
class Trd:
    """Trapezoid with x half-lengths half_x1/half_x2 at -z/+z, same for y."""

    name: str
    half_x1: float
    half_x2: float
    half_y1: float
    half_y2: float
    half_z: float

    def __post_init__(self):
        _positive(
            self.name,
            self.half_x1,
            self.half_x2,
            self.half_y1,
            self.half_y2,
            self.half_z,
        )


@dataclass(frozen=True)
class Sphere:
    name: str
    r_min: float
    r_max: float
    phi_start: float = 0.0
    delta_phi: float = TWO_PI
    theta_start: float = 0.0
    delta_theta: float = math.pi

    def __post_init__(self):
        _positive(self.name, self.r_max)
        _check_radii(self.name, self.r_min, self.r_max)
        _check_phi(self.name, self.phi_start, self.delta_phi)
        if not (0.0 <= self.theta_start < math.pi):
            raise SolidError(f"{self.name}: theta_start must be in [0, pi)")
        if not (0.0 < self.delta_theta <= math.pi - self.theta_start + 1e-12):
            raise SolidError(f"{self.name}: theta range exceeds [0, pi]")

    @property
    def full_phi(self) -> bool:
        return self.delta_phi >= TWO_PI - _PHI_FULL_EPS

    @property
    def full_theta(self) -> bool:
        return self.theta_start <= 1e-12 and self.delta_theta >= math.pi - 1e-12


@dataclass(frozen=True, eq=False)
class Subtraction:
    """left minus right; relative_transform places right in left's frame."""

    name: str
    left: "Solid"
    right: "Solid"
    relative_transform: Transform = field(default_factory=Transform.identity)

    def __post_init__(self):
        if boolean_depth(self) > MAX_BOOLEAN_DEPTH:
            raise SolidError(
                f"{self.name}: boolean nesting deeper than {MAX_BOOLEAN_DEPTH}"
            )


Solid = Union[Box, Tube, Cone, Trd, Sphere, Subtraction]


def boolean_depth(solid: Solid) -> int:
    if isinstance(solid, Subtraction):
        return 1 + max(boolean_depth(solid.left), boolean_depth(solid.right))
    return 0


def structural_key(solid: Solid) -> tuple:
    """Value identity for caching: equal-shaped solids share cache entries."""
    if isinstance(solid, Subtraction):
        return (
            "Subtraction",
            solid.name,
            structural_key(solid.left),
            structural_key(solid.right),
            solid.relative_transform.key(),
        )
    return (type(solid).__name__,) + tuple(
        getattr(solid, f.name) for f in solid.__dataclass_fields__.values()
    )


def solid_kind(solid: Solid) -> str:
    return type(solid).__name__


def describe(solid: Solid) -> str:
    """One-line parameter dump, mm and deg."""
    d = math.degrees
    if isinstance(solid, Box):
        return f"Box(hx={solid.half_x:g} hy={solid.half_y:g} hz={solid.half_z:g} mm)"
    if isinstance(solid, Tube):
        return (
            f"Tube(r={solid.r_min:g}..{solid.r_max:g} hz={solid.half_z:g} mm"
            f" phi={d(solid.phi_start):g}+{d(solid.delta_phi):g} deg)"
        )
    if isinstance(solid, Cone):
        return (
            f"Cone(r1={solid.r_min1:g}..{solid.r_max1:g}"
            f" r2={solid.r_min2:g}..{solid.r_max2:g} hz={solid.half_z:g} mm"
            f" phi={d(solid.phi_start):g}+{d(solid.delta_phi):g} deg)"
        )
    if isinstance(solid, Trd):
        return (
            f"Trd(hx={solid.half_x1:g}/{solid.half_x2:g}"
            f" hy={solid.half_y1:g}/{solid.half_y2:g} hz={solid.half_z:g} mm)"
        )
    if isinstance(solid, Sphere):
        return (
            f"Sphere(r={solid.r_min:g}..{solid.r_max:g} mm"
            f" phi={d(solid.phi_start):g}+{d(solid.delta_phi):g}"
            f" theta={d(solid.theta_start):g}+{d(solid.delta_theta):g} deg)"
        )
    if isinstance(solid, Subtraction):
        return f"Subtraction({describe(solid.left)} - {describe(solid.right)})"
    raise SolidError(f"unknown solid kind {type(solid)!r}")


def analytic_volume(solid: Solid) -> float:
    """Cubic volume in mm3; exact for primitives, Monte-Carlo for booleans.

    The boolean estimate uses a fixed seed and sample count so repeated calls
    are bit-identical.
    """
    if isinstance(solid, Box):
        return 8.0 * solid.half_x * solid.half_y * solid.half_z
    if isinstance(solid, Tube):
        return solid.delta_phi * solid.half_z * (solid.r_max**2 - solid.r_min**2)
    if isinstance(solid, Cone):
        outer = solid.r_max1**2 + solid.r_max1 * solid.r_max2 + solid.r_max2**2
        inner = solid.r_min1**2 + solid.r_min1 * solid.r_min2 + solid.r_min2**2
        return solid.delta_phi * solid.half_z / 3.0 * (outer - inner)
    if isinstance(solid, Trd):
        hx1, hx2, hy1, hy2 = solid.half_x1, solid.half_x2, solid.half_y1, solid.half_y2
        return (
            4.0
            * solid.half_z
            / 3.0
            * (2.0 * hx1 * hy1 + hx1 * hy2 + hx2 * hy1 + 2.0 * hx2 * hy2)
        )
    if isinstance(solid, Sphere):
        t1 = solid.theta_start
        t2 = solid.theta_start + solid.delta_theta
        return (
            solid.delta_phi
            / 3.0
            * (solid.r_max**3 - solid.r_min**3)
            * (math.cos(t1) - math.cos(t2))
        )
    if isinstance(solid, Subtraction):
        from .montecarlo import mc_volume

        return mc_volume(solid, 1_000_000, seed=20736).volume
    raise SolidError(f"unknown solid kind {type(solid)!r}")


def _arc_angles(phi_start: float, delta_phi: float) -> list[float]:
    """Boundary angles plus every cardinal direction inside the arc."""
    angles = [phi_start, phi_start + delta_phi]
    k0 = math.ceil(phi_start / (math.pi / 2.0))
    k = k0
    while k * math.pi / 2.0 <= phi_start + delta_phi + 1e-12:
        angles.append(k * math.pi / 2.0)
        k += 1
    return angles


def _wedge_xy_points(r_values, phi_start, delta_phi, include_origin) -> list[tuple]:
    pts = []
    for phi in _arc_angles(phi_start, delta_phi):
        for r in r_values:
            pts.append((r * math.cos(phi), r * math.sin(phi)))
    if include_origin:
        pts.append((0.0, 0.0))
    return pts


def bounding_box(solid: Solid) -> Aabb:
    """Conservative AABB in the solid's local frame, tight for primitives."""
    if isinstance(solid, Box):
        h = np.array([solid.half_x, solid.half_y, solid.half_z])
        return Aabb(-h, h)
    if isinstance(solid, Tube):
        if solid.full_phi:
            lo = np.array([-solid.r_max, -solid.r_max, -solid.half_z])
            return Aabb(lo, -lo)
        pts = _wedge_xy_points(
            (solid.r_min, solid.r_max),
            solid.phi_start,
            solid.delta_phi,
            solid.r_min == 0.0,
        )
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        return Aabb(
            np.array([min(xs), min(ys), -solid.half_z]),
            np.array([max(xs), max(ys), solid.half_z]),
        )
    if isinstance(solid, Cone):
        rmax = max(solid.r_max1, solid.r_max2)
        if solid.full_phi:
            lo = np.array([-rmax, -rmax, -solid.half_z])
            return Aabb(lo, -lo)
        rs = (solid.r_min1, solid.r_max1, solid.r_min2, solid.r_max2)
        pts = _wedge_xy_points(
            rs, solid.phi_start, solid.delta_phi, min(solid.r_min1, solid.r_min2) == 0.0
        )
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        return Aabb(
            np.array([min(xs), min(ys), -solid.half_z]),
            np.array([max(xs), max(ys), solid.half_z]),
        )
    if isinstance(solid, Trd):
        hx = max(solid.half_x1, solid.half_x2)
        hy = max(solid.half_y1, solid.half_y2)
        h = np.array([hx, hy, solid.half_z])
        return Aabb(-h, h)
    if isinstance(solid, Sphere):
        if solid.full_phi and solid.full_theta:
            lo = np.full(3, -solid.r_max)
            return Aabb(lo, -lo)
        t1 = solid.theta_start
        t2 = solid.theta_start + solid.delta_theta
        thetas = [t1, t2]
        if t1 <= math.pi / 2.0 <= t2:
            thetas.append(math.pi / 2.0)
        pts = []
        for theta in thetas:
            for phi in _arc_angles(solid.phi_start, solid.delta_phi):
                for r in (solid.r_min, solid.r_max):
                    pts.append(
                        (
                            r * math.sin(theta) * math.cos(phi),
                            r * math.sin(theta) * math.sin(phi),
                            r * math.cos(theta),
                        )
                    )
        if solid.r_min == 0.0:
            pts.append((0.0, 0.0, 0.0))
        arr = np.array(pts)
        return Aabb(arr.min(axis=0), arr.max(axis=0))
    if isinstance(solid, Subtraction):
        # subtracting only removes material
        return bounding_box(solid.left)
    raise SolidError(f"unknown solid kind {type(solid)!r}")
