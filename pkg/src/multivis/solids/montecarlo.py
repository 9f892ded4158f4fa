"""Hit-or-miss Monte-Carlo volume estimation over the bounding box."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import SolidError
from .classify import gap
from .shapes import Solid, bounding_box

_CHUNK = 1 << 20  # fixed so a given (seed, n_samples) stream is reproducible

MIN_SAMPLES = 10_000


@dataclass(frozen=True)
class McVolume:
    volume: float  # mm3
    std_error: float  # mm3
    n_samples: int
    n_inside: int


def mc_volume(solid: Solid, n_samples: int, seed: int) -> McVolume:
    """Estimate the volume by uniform sampling of the bounding box.

    Bit-reproducible for a fixed seed. Points in the surface band count as
    inside; the band has measure zero so the estimate is unaffected.
    """
    if n_samples < MIN_SAMPLES:
        raise SolidError(f"mc_volume needs at least {MIN_SAMPLES} samples")
    box = bounding_box(solid)
    box_volume = box.volume()
    if box_volume <= 0.0:
        raise SolidError(f"{getattr(solid, 'name', solid)}: empty bounding box")

    rng = np.random.default_rng(seed)
    span = box.hi - box.lo
    inside = 0
    remaining = n_samples
    while remaining > 0:
        m = min(remaining, _CHUNK)
        pts = rng.random((m, 3))
        pts *= span
        pts += box.lo
        inside += int(np.count_nonzero(gap(solid, pts) <= 0.0))
        remaining -= m

    p = inside / n_samples
    volume = p * box_volume
    std_error = box_volume * float(np.sqrt(p * (1.0 - p) / n_samples))
    return McVolume(volume, std_error, n_samples, inside)
