"""Geometry-only ray tracer.

One orthographic primary ray per pixel over a frame sized to the scene
extent divided by the zoom. The nearest visible touchable wins; shading is
the touchable colour times max(0.2, n.l) with l pointing at the light
source. Alpha below 1 blends front to back with whatever lies behind.
Rows are rendered in independent chunks, so the output bytes are identical
for any worker count.
"""

from __future__ import annotations

import struct
import zlib
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from ..errors import KernelError
from ..geometry import Touchable
from ..solids import RAY_TOL, bounding_box, first_hits
from ..view import Camera, ViewParameters

_MAX_BLEND_LAYERS = 8
_ROW_CHUNK = 40


def scene_extent(touchables: list[Touchable]):
    box = None
    for t in touchables:
        own = bounding_box(t.solid).transformed(t.world_transform)
        box = own if box is None else box.union(own)
    if box is None:
        raise KernelError("ray tracer: no visible geometry")
    return box.centre(), max(box.half_diagonal(), 1e-9)


def _render_rows(touchables, camera: Camera, view: ViewParameters,
                 start: float, row_lo: int, row_hi: int) -> np.ndarray:
    width = camera.width
    n_rows = row_hi - row_lo
    n = n_rows * width

    xs = (np.arange(width) + 0.5) / width * 2.0 - 1.0  # -1..1 across the frame
    ys = (np.arange(row_lo, row_hi) + 0.5) / camera.height * 2.0 - 1.0
    u = np.tile(xs, n_rows) * camera.half_width
    v = np.repeat(ys, width) * camera.half_height

    origins = (
        camera.centre[None, :]
        + u[:, None] * camera.x_cam[None, :]
        + v[:, None] * camera.y_cam[None, :]
        + start * camera.w_cam[None, :]
    )
    direction = -camera.w_cam
    directions = np.broadcast_to(direction, (n, 3))

    towards_light = view.light_towards_source()
    rgb = np.zeros((n, 3))
    throughput = np.ones(n)
    t_floor = np.full(n, RAY_TOL)
    active = np.ones(n, dtype=bool)

    prepared = []
    for t in touchables:
        inv = t.world_transform.inverse()
        prepared.append((t, inv, t.world_transform.rotation))

    for _ in range(_MAX_BLEND_LAYERS):
        if not active.any():
            break
        idx = np.flatnonzero(active)
        o_act = origins[idx]
        d_act = directions[idx]
        floor_act = t_floor[idx]

        best_t = np.full(len(idx), np.inf)
        best_rgb = np.zeros((len(idx), 3))
        best_alpha = np.zeros(len(idx))
        for touchable, inv, rot in prepared:
            o_loc = inv.apply(o_act)
            d_loc = inv.apply_direction(d_act)
            t_hit, normals, entering, hit = first_hits(
                touchable.solid, o_loc, d_loc, t_min=floor_act
            )
            take = hit & entering & (t_hit < best_t)
            if not take.any():
                continue
            n_world = normals[take] @ rot.T
            colour = touchable.vis.colour
            shade = np.maximum(0.2, n_world @ towards_light)
            best_t[take] = t_hit[take]
            best_rgb[take] = (
                np.array([colour.r, colour.g, colour.b])[None, :] * shade[:, None]
            )
            best_alpha[take] = colour.a

        found = np.isfinite(best_t)
        if not found.any():
            break
        hit_idx = idx[found]
        contrib = throughput[hit_idx] * best_alpha[found]
        rgb[hit_idx] += contrib[:, None] * best_rgb[found]
        throughput[hit_idx] *= 1.0 - best_alpha[found]
        t_floor[hit_idx] = best_t[found] + 2.0 * RAY_TOL
        active[idx] = found
        active[hit_idx] &= throughput[hit_idx] > 1e-3

    rgb += throughput[:, None]  # white background through remaining transparency
    img = np.clip(np.rint(rgb * 255.0), 0, 255).astype(np.uint8)
    # flip vertically: row 0 of the file is the top of the frame
    return img.reshape(n_rows, width, 3)


def raytrace(
    touchables: list[Touchable],
    view: ViewParameters,
    width: int,
    height: int,
    out_path=None,
    threads: int = 1,
    extent=None,
) -> bytes:
    """Render visible touchables to PPM (or PNG if the path says so)."""
    if width <= 0 or height <= 0:
        raise KernelError("zero-size image")
    visible = [t for t in touchables if t.vis.visible]
    if extent is None:
        centre, radius = scene_extent(visible)
    else:
        centre, radius = extent
    camera = Camera.from_view(view, centre, radius, width, height)
    start = 2.0 * radius  # origin plane safely outside the extent sphere

    image = np.zeros((height, width, 3), dtype=np.uint8)
    chunks = [
        (lo, min(lo + _ROW_CHUNK, height)) for lo in range(0, height, _ROW_CHUNK)
    ]

    def work(bounds):
        lo, hi = bounds
        return lo, hi, _render_rows(visible, camera, view, start, lo, hi)

    if threads <= 1:
        results = [work(c) for c in chunks]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(work, chunks))
    for lo, hi, block in results:
        # camera y axis points up; image rows go top to bottom
        image[height - hi : height - lo] = block[::-1]

    if out_path is not None and str(out_path).lower().endswith(".png"):
        data = write_png(image)
    else:
        data = write_ppm(image)
    if out_path is not None:
        with open(out_path, "wb") as f:
            f.write(data)
    return data


def write_ppm(image: np.ndarray) -> bytes:
    h, w, _ = image.shape
    return f"P6\n{w} {h}\n255\n".encode("ascii") + image.tobytes()


def _png_chunk(tag: bytes, payload: bytes) -> bytes:
    return (
        struct.pack(">I", len(payload))
        + tag
        + payload
        + struct.pack(">I", zlib.crc32(tag + payload) & 0xFFFFFFFF)
    )


def write_png(image: np.ndarray) -> bytes:
    """Minimal 8-bit RGB PNG encoder (filter 0, fixed zlib level)."""
    h, w, _ = image.shape
    header = struct.pack(">IIBBBBB", w, h, 8, 2, 0, 0, 0)
    raw = b"".join(b"\x00" + image[row].tobytes() for row in range(h))
    return (
        b"\x89PNG\r\n\x1a\n"
        + _png_chunk(b"IHDR", header)
        + _png_chunk(b"IDAT", zlib.compress(raw, 6))
        + _png_chunk(b"IEND", b"")
    )
