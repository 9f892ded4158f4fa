"""Rigid 3D transforms (rotation + translation), the frame algebra for placements."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


def unit(v) -> np.ndarray:
    """Normalise to unit length; zero vectors are rejected."""
    a = np.asarray(v, dtype=float)
    n = float(np.linalg.norm(a))
    if n == 0.0:
        raise ValueError("cannot normalise a zero vector")
    return a / n


def _axis_matrix(axis: str, angle: float) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    if axis == "x":
        return np.array([[1, 0, 0], [0, c, -s], [0, s, c]], dtype=float)
    if axis == "y":
        return np.array([[c, 0, s], [0, 1, 0], [-s, 0, c]], dtype=float)
    if axis == "z":
        return np.array([[c, -s, 0], [s, c, 0], [0, 0, 1]], dtype=float)
    raise ValueError(f"unknown rotation axis '{axis}'")


@dataclass(frozen=True, eq=False)
class Transform:
    """Applied as p -> R p + t. Instances are immutable."""

    rotation: np.ndarray = field(default_factory=lambda: np.eye(3))
    translation: np.ndarray = field(default_factory=lambda: np.zeros(3))

    def __post_init__(self):
        r = np.asarray(self.rotation, dtype=float).reshape(3, 3)
        t = np.asarray(self.translation, dtype=float).reshape(3)
        r.flags.writeable = False
        t.flags.writeable = False
        object.__setattr__(self, "rotation", r)
        object.__setattr__(self, "translation", t)

    @staticmethod
    def identity() -> "Transform":
        return Transform()

    @staticmethod
    def translate(x: float, y: float, z: float) -> "Transform":
        return Transform(np.eye(3), np.array([x, y, z], dtype=float))

    @staticmethod
    def rotate_axis(axis: str, angle_rad: float) -> "Transform":
        return Transform(_axis_matrix(axis, angle_rad), np.zeros(3))

    def compose(self, other: "Transform") -> "Transform":
        """(self.compose(other))(p) == self(other(p))."""
        return Transform(
            self.rotation @ other.rotation,
            self.rotation @ other.translation + self.translation,
        )

    def inverse(self) -> "Transform":
        rt = self.rotation.T
        return Transform(rt, -(rt @ self.translation))

    def apply(self, points) -> np.ndarray:
        p = np.asarray(points, dtype=float)
        if p.ndim == 1:
            return self.rotation @ p + self.translation
        return p @ self.rotation.T + self.translation

    def apply_direction(self, dirs) -> np.ndarray:
        d = np.asarray(dirs, dtype=float)
        if d.ndim == 1:
            return self.rotation @ d
        return d @ self.rotation.T

    def is_identity(self, tol: float = 0.0) -> bool:
        return bool(
            np.all(np.abs(self.rotation - np.eye(3)) <= tol)
            and np.all(np.abs(self.translation) <= tol)
        )

    def close_to(self, other: "Transform", tol: float = 1e-9) -> bool:
        return bool(
            np.all(np.abs(self.rotation - other.rotation) <= tol)
            and np.all(np.abs(self.translation - other.translation) <= tol)
        )

    def key(self, digits: int = 9) -> tuple:
        """Stable hashable summary, used by recording sinks and state digests."""
        return (
            tuple(round(float(v), digits) for v in self.rotation.ravel()),
            tuple(round(float(v), digits) for v in self.translation),
        )
