"""View parameters shared by every viewer, plus the projection camera."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import KernelError
from .transform import unit


@dataclass
class ViewParameters:
    """Viewpoint, lights, style and window state.

    `viewpoint` points from the scene towards the viewer; `light_direction`
    is the direction the light travels (so a face whose outward normal is
    opposed to it is lit).
    """

    viewpoint: np.ndarray = field(default_factory=lambda: np.array([0.0, 0.0, 1.0]))
    up: np.ndarray = field(default_factory=lambda: np.array([0.0, 1.0, 0.0]))
    light_direction: np.ndarray = field(
        default_factory=lambda: np.array([0.0, 0.0, -1.0])
    )
    zoom: float = 1.0
    style: str = "wireframe"  # wireframe | surface
    auxiliary_edges: bool = False
    hidden_marker: bool = False
    segments_per_circle: int = 24
    window_width: int = 600
    window_height: int = 600
    window_x: int | None = None
    window_y: int | None = None
    projection: str = "orthographic"  # orthographic | perspective
    fov_deg: float = 30.0

    def set_viewpoint(self, v) -> None:
        self.viewpoint = unit(v)

    def set_viewpoint_theta_phi(self, theta_rad: float, phi_rad: float) -> None:
        self.viewpoint = np.array(
            [
                math.sin(theta_rad) * math.cos(phi_rad),
                math.sin(theta_rad) * math.sin(phi_rad),
                math.cos(theta_rad),
            ]
        )

    def set_lights(self, v) -> None:
        self.light_direction = unit(v)

    def set_zoom(self, zoom: float) -> None:
        if not zoom > 0.0:
            raise KernelError("zoom must be > 0")
        self.zoom = float(zoom)

    def light_towards_source(self) -> np.ndarray:
        return -unit(self.light_direction)

    def camera_basis(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Right, up and towards-viewer unit vectors (right-handed)."""
        w = unit(self.viewpoint)
        up = self.up
        for candidate in (up, (0.0, 1.0, 0.0), (0.0, 0.0, 1.0), (1.0, 0.0, 0.0)):
            c = unit(candidate)
            if abs(float(np.dot(c, w))) < 1.0 - 1e-9:
                up = c
                break
        x_cam = unit(np.cross(up, w))
        y_cam = np.cross(w, x_cam)
        return x_cam, y_cam, w

    def copy(self) -> "ViewParameters":
        out = replace(self)
        out.viewpoint = np.array(self.viewpoint)
        out.up = np.array(self.up)
        out.light_direction = np.array(self.light_direction)
        return out

    def key(self) -> tuple:
        """Stable summary for digests and recorded call sequences."""
        return (
            tuple(round(float(v), 9) for v in self.viewpoint),
            tuple(round(float(v), 9) for v in self.up),
            tuple(round(float(v), 9) for v in self.light_direction),
            round(self.zoom, 9),
            self.style,
            self.auxiliary_edges,
            self.hidden_marker,
            self.segments_per_circle,
            (self.window_width, self.window_height, self.window_x, self.window_y),
            self.projection,
            round(self.fov_deg, 9),
        )


@dataclass(frozen=True, eq=False)
class Camera:
    """Projection from world mm to pixel coordinates (y up)."""

    x_cam: np.ndarray
    y_cam: np.ndarray
    w_cam: np.ndarray
    centre: np.ndarray
    half_width: float
    half_height: float
    width: int
    height: int
    perspective: bool
    eye_distance: float  # from centre along w_cam, perspective only

    @staticmethod
    def from_view(
        view: ViewParameters, centre, radius: float, width: int, height: int
    ) -> "Camera":
        if width <= 0 or height <= 0:
            raise KernelError("zero-size image")
        x_cam, y_cam, w_cam = view.camera_basis()
        radius = max(float(radius), 1e-9)
        half_h = radius / view.zoom
        half_w = half_h * width / height
        perspective = view.projection == "perspective"
        fov = math.radians(max(view.fov_deg, 1.0))
        eye_distance = radius / view.zoom / math.tan(fov / 2.0)
        return Camera(
            x_cam=x_cam,
            y_cam=y_cam,
            w_cam=w_cam,
            centre=np.asarray(centre, dtype=float),
            half_width=half_w,
            half_height=half_h,
            width=int(width),
            height=int(height),
            perspective=perspective,
            eye_distance=eye_distance,
        )

    @property
    def eye(self) -> np.ndarray:
        return self.centre + self.w_cam * self.eye_distance

    def project(self, points) -> np.ndarray:
        """(N, 3) world points -> (N, 3) [x_px, y_px (up), depth]."""
        p = np.asarray(points, dtype=float).reshape(-1, 3)
        rel = p - self.centre
        u = rel @ self.x_cam
        v = rel @ self.y_cam
        w = rel @ self.w_cam
        if self.perspective:
            dist = self.eye_distance - w  # along view axis, in front of eye
            dist = np.where(dist < 1e-9, 1e-9, dist)
            scale = self.eye_distance / dist
            u = u * scale
            v = v * scale
        x_px = (0.5 + u / (2.0 * self.half_width)) * self.width
        y_px = (0.5 + v / (2.0 * self.half_height)) * self.height
        return np.stack([x_px, y_px, w], axis=1)

    def viewport_to_pixels(self, x: float, y: float) -> tuple[float, float]:
        """Map [-1, 1] overlay coordinates to pixels (y up)."""
        return ((x + 1.0) / 2.0 * self.width, (y + 1.0) / 2.0 * self.height)
