"""SVG and EPS vector output.

One painter core projects the collected scene (orthographic or perspective),
shades surface-style faces with a flat Lambertian term and depth-sorts them
far-to-first (centroid depth, stable ties); two serialisers write the same
item list as SVG or encapsulated PostScript. Wireframe style draws mesh
edges, auxiliary ones only when the view asks for them. 2D primitives land
last, in viewport coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..attributes import Colour
from ..errors import VisError
from ..scene import (
    Circle,
    MeshPrimitive,
    Polyline,
    Polymarker,
    ScaleBar,
    Square,
    Text,
)
from ..solids import face_normal, tessellate
from ..solids.shapes import structural_key
from ..view import Camera, ViewParameters

_MESH_CACHE: dict[tuple, object] = {}
_MESH_CACHE_LIMIT = 512


def solid_mesh(solid, segments: int):
    key = (structural_key(solid), segments)
    mesh = _MESH_CACHE.get(key)
    if mesh is None:
        if len(_MESH_CACHE) >= _MESH_CACHE_LIMIT:
            _MESH_CACHE.clear()
        mesh = tessellate(solid, segments)
        _MESH_CACHE[key] = mesh
    return mesh


@dataclass
class _Item:
    kind: str  # face | line | polyline | marker | text
    depth: float
    colour: Colour
    points: np.ndarray | None = None  # (N, 2) px, y up
    width: float = 1.0
    dash: str = "solid"
    marker: str = "dot"
    size: float = 2.0
    text: str = ""
    text_size: float = 12.0
    layout: str = "left"
    offsets: tuple[float, float] = (0.0, 0.0)
    css: str = ""


@dataclass
class Painted:
    camera: Camera
    depth_items: list[_Item] = field(default_factory=list)
    top_items: list[_Item] = field(default_factory=list)
    overlay_items: list[_Item] = field(default_factory=list)

    def ordered(self) -> list[_Item]:
        sorted_depth = sorted(self.depth_items, key=lambda it: it.depth)
        return sorted_depth + self.top_items + self.overlay_items


def _resolve_style(vis, view: ViewParameters) -> str:
    return vis.forced_style if vis.forced_style != "none" else view.style


def _shade(colour: Colour, normal: np.ndarray, towards_light: np.ndarray) -> Colour:
    factor = max(0.2, float(np.dot(normal, towards_light)))
    return Colour(colour.r * factor, colour.g * factor, colour.b * factor, colour.a)


def paint(collector, centre, radius, view: ViewParameters,
          width: int | None = None, height: int | None = None) -> Painted:
    """Project a CollectingSink's content into a sorted 2D item list."""
    width = width or view.window_width
    height = height or view.window_height
    camera = Camera.from_view(view, centre, radius, width, height)
    painted = Painted(camera)
    towards_light = view.light_towards_source()

    for solid, transform, vis, _touchable in collector.solids:
        if not vis.visible:
            continue
        mesh = solid_mesh(solid, view.segments_per_circle)
        world = transform.apply(mesh.vertices)
        proj = camera.project(world)
        if _resolve_style(vis, view) == "surface":
            for face in mesh.faces:
                pts = proj[list(face)]
                normal = face_normal(world[list(face)])
                nn = np.linalg.norm(normal)
                if nn == 0.0:
                    continue
                painted.depth_items.append(
                    _Item(
                        kind="face",
                        depth=float(pts[:, 2].mean()),
                        colour=_shade(vis.colour, normal / nn, towards_light),
                        points=pts[:, :2],
                        css="face",
                    )
                )
        else:
            for edge in mesh.edges:
                if edge.kind == "auxiliary" and not view.auxiliary_edges:
                    continue
                pts = proj[[edge.a, edge.b]]
                painted.depth_items.append(
                    _Item(
                        kind="line",
                        depth=float(pts[:, 2].mean()),
                        colour=vis.colour,
                        points=pts[:, :2],
                        width=vis.line_width,
                        dash=vis.line_style,
                        css="edge",
                    )
                )

    for primitive, transform, two_d in collector.placed_primitives:
        if two_d:
            _paint_overlay(painted, primitive, camera)
        else:
            _paint_world_primitive(painted, primitive, transform, camera, view)

    return painted


def _marker_item(kind: str, pos2, depth: float, size: float, colour: Colour,
                 on_top: bool, painted: Painted) -> None:
    item = _Item(
        kind="marker",
        depth=depth,
        colour=colour,
        points=np.asarray(pos2, dtype=float).reshape(1, 2),
        marker=kind,
        size=size,
        css="marker",
    )
    (painted.depth_items if not on_top else painted.top_items).append(item)


def _paint_world_primitive(painted, primitive, transform, camera, view) -> None:
    tr = transform
    markers_on_top = not view.hidden_marker

    if isinstance(primitive, Polyline):
        proj = camera.project(tr.apply(primitive.points))
        painted.depth_items.append(
            _Item(
                kind="polyline",
                depth=float(proj[:, 2].mean()),
                colour=primitive.vis.colour,
                points=proj[:, :2],
                width=primitive.vis.line_width,
                dash=primitive.vis.line_style,
                css="polyline",
            )
        )
    elif isinstance(primitive, Polymarker):
        proj = camera.project(tr.apply(primitive.points))
        for row in proj:
            _marker_item(
                primitive.kind, row[:2], float(row[2]), primitive.size,
                primitive.vis.colour, markers_on_top, painted
            )
    elif isinstance(primitive, Circle):
        row = camera.project(tr.apply(primitive.position[None, :]))[0]
        _marker_item("circle", row[:2], float(row[2]), primitive.size,
                     primitive.vis.colour, markers_on_top, painted)
    elif isinstance(primitive, Square):
        row = camera.project(tr.apply(primitive.position[None, :]))[0]
        _marker_item("square", row[:2], float(row[2]), primitive.size,
                     primitive.vis.colour, markers_on_top, painted)
    elif isinstance(primitive, Text):
        row = camera.project(tr.apply(primitive.position[None, :]))[0]
        painted.top_items.append(
            _Item(
                kind="text",
                depth=float(row[2]),
                colour=primitive.vis.colour,
                points=row[None, :2],
                text=primitive.content,
                text_size=primitive.size,
                layout=primitive.layout,
                offsets=primitive.offsets,
                css="text",
            )
        )
    elif isinstance(primitive, ScaleBar):
        half = primitive.length / 2.0
        ends = np.array(
            [
                primitive.position - primitive.direction * half,
                primitive.position + primitive.direction * half,
            ]
        )
        proj = camera.project(tr.apply(ends))
        p0, p1 = proj[0, :2], proj[1, :2]
        depth = float(proj[:, 2].mean())
        seg = p1 - p0
        norm = np.linalg.norm(seg)
        perp = (
            np.array([-seg[1], seg[0]]) / norm * 4.0 if norm > 0 else np.array([0, 4.0])
        )
        for a, b in ((p0, p1), (p0 - perp, p0 + perp), (p1 - perp, p1 + perp)):
            painted.depth_items.append(
                _Item(
                    kind="line",
                    depth=depth,
                    colour=primitive.vis.colour,
                    points=np.array([a, b]),
                    width=primitive.vis.line_width,
                    css="scale",
                )
            )
        mid = (p0 + p1) / 2.0
        painted.top_items.append(
            _Item(
                kind="text",
                depth=depth,
                colour=primitive.vis.colour,
                points=mid[None, :],
                text=primitive.annotation,
                text_size=12.0,
                layout="centre",
                offsets=(0.0, 8.0),
                css="scale",
            )
        )
    elif isinstance(primitive, MeshPrimitive):
        world = tr.apply(primitive.mesh.vertices)
        proj = camera.project(world)
        for face in primitive.mesh.faces:
            pts = proj[list(face)]
            painted.depth_items.append(
                _Item(
                    kind="face",
                    depth=float(pts[:, 2].mean()),
                    colour=primitive.vis.colour,
                    points=pts[:, :2],
                    css="face",
                )
            )
    else:
        raise VisError(f"vector writer cannot draw {type(primitive).__name__}")


def _paint_overlay(painted, primitive, camera) -> None:
    def vp(p):
        return camera.viewport_to_pixels(float(p[0]), float(p[1]))

    if isinstance(primitive, Polyline):
        pts = np.array([vp(p) for p in primitive.points])
        painted.overlay_items.append(
            _Item(
                kind="polyline",
                depth=0.0,
                colour=primitive.vis.colour,
                points=pts,
                width=primitive.vis.line_width,
                dash=primitive.vis.line_style,
                css="overlay",
            )
        )
    elif isinstance(primitive, Text):
        x, y = vp(primitive.position)
        painted.overlay_items.append(
            _Item(
                kind="text",
                depth=0.0,
                colour=primitive.vis.colour,
                points=np.array([[x, y]]),
                text=primitive.content,
                text_size=primitive.size,
                layout=primitive.layout,
                offsets=primitive.offsets,
                css="overlay",
            )
        )
    elif isinstance(primitive, (Polymarker, Circle, Square)):
        positions = (
            primitive.points if isinstance(primitive, Polymarker)
            else primitive.position[None, :]
        )
        kind = primitive.kind if isinstance(primitive, Polymarker) else (
            "circle" if isinstance(primitive, Circle) else "square"
        )
        for p in positions:
            x, y = vp(p)
            painted.overlay_items.append(
                _Item(
                    kind="marker",
                    depth=0.0,
                    colour=primitive.vis.colour,
                    points=np.array([[x, y]]),
                    marker=kind,
                    size=primitive.size,
                    css="overlay",
                )
            )
    else:
        raise VisError(f"2D overlay cannot draw {type(primitive).__name__}")


# --- serialisers ------------------------------------------------------------

def _rgb(colour: Colour) -> str:
    r, g, b = colour.rgb255()
    return f"rgb({r},{g},{b})"


_DASHES_SVG = {"dashed": "6,4", "dotted": "1.5,3"}


def _svg_text_anchor(layout: str) -> str:
    return {"left": "start", "centre": "middle", "right": "end"}[layout]


def _xml_escape(s: str) -> str:
    return (
        s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
        .replace('"', "&quot;")
    )


def to_svg(painted: Painted) -> str:
    cam = painted.camera
    w, h = cam.width, cam.height

    def fy(y):  # SVG y axis points down
        return h - y

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}"'
        f' viewBox="0 0 {w} {h}">',
        f'<rect width="{w}" height="{h}" fill="white"/>',
    ]
    for item in painted.ordered():
        colour = item.colour
        if item.kind == "face":
            pts = " ".join(
                f"{p[0]:.3f},{fy(p[1]):.3f}" for p in item.points
            )
            opacity = f' fill-opacity="{colour.a:.3f}"' if colour.a < 1.0 else ""
            out.append(
                f'<polygon class="{item.css}" points="{pts}" fill="{_rgb(colour)}"'
                f'{opacity} stroke="{_rgb(colour)}" stroke-width="0.5"/>'
            )
        elif item.kind == "line":
            p0, p1 = item.points
            dash = _DASHES_SVG.get(item.dash)
            dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
            out.append(
                f'<line class="{item.css}" x1="{p0[0]:.3f}" y1="{fy(p0[1]):.3f}"'
                f' x2="{p1[0]:.3f}" y2="{fy(p1[1]):.3f}" stroke="{_rgb(colour)}"'
                f' stroke-width="{item.width:.2f}"{dash_attr}/>'
            )
        elif item.kind == "polyline":
            pts = " ".join(f"{p[0]:.3f},{fy(p[1]):.3f}" for p in item.points)
            dash = _DASHES_SVG.get(item.dash)
            dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
            out.append(
                f'<polyline class="{item.css}" points="{pts}" fill="none"'
                f' stroke="{_rgb(colour)}" stroke-width="{item.width:.2f}"'
                f"{dash_attr}/>"
            )
        elif item.kind == "marker":
            x, y = item.points[0]
            y = fy(y)
            r = item.size / 2.0
            if item.marker == "square":
                out.append(
                    f'<rect class="{item.css}" x="{x - r:.3f}" y="{y - r:.3f}"'
                    f' width="{item.size:.2f}" height="{item.size:.2f}"'
                    f' fill="{_rgb(colour)}"/>'
                )
            elif item.marker == "circle":
                out.append(
                    f'<circle class="{item.css}" cx="{x:.3f}" cy="{y:.3f}"'
                    f' r="{r:.2f}" fill="none" stroke="{_rgb(colour)}"/>'
                )
            else:
                out.append(
                    f'<circle class="{item.css}" cx="{x:.3f}" cy="{y:.3f}"'
                    f' r="{r:.2f}" fill="{_rgb(colour)}"/>'
                )
        elif item.kind == "text":
            x, y = item.points[0]
            x += item.offsets[0]
            y = fy(y + item.offsets[1])
            out.append(
                f'<text class="{item.css}" x="{x:.3f}" y="{y:.3f}"'
                f' font-size="{item.text_size:.1f}" fill="{_rgb(colour)}"'
                f' text-anchor="{_svg_text_anchor(item.layout)}"'
                f' font-family="Helvetica,sans-serif">{_xml_escape(item.text)}</text>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _ps_escape(s: str) -> str:
    return s.replace("\\", r"\\").replace("(", r"\(").replace(")", r"\)")


def to_eps(painted: Painted, title: str = "multivis view") -> str:
    cam = painted.camera
    w, h = cam.width, cam.height
    out = [
        "%!PS-Adobe-3.0 EPSF-3.0",
        f"%%BoundingBox: 0 0 {w} {h}",
        f"%%Title: {title}",
        "%%Pages: 1",
        "%%EndComments",
        "1 setlinecap 1 setlinejoin",
        "1 1 1 setrgbcolor",
        f"newpath 0 0 moveto {w} 0 lineto {w} {h} lineto 0 {h} lineto closepath fill",
    ]

    def set_colour(c: Colour):
        out.append(f"{c.r:.4f} {c.g:.4f} {c.b:.4f} setrgbcolor")

    def set_dash(style: str):
        if style == "dashed":
            out.append("[6 4] 0 setdash")
        elif style == "dotted":
            out.append("[1.5 3] 0 setdash")
        else:
            out.append("[] 0 setdash")

    for item in painted.ordered():
        set_colour(item.colour)
        if item.kind == "face":
            pts = item.points
            path = f"newpath {pts[0][0]:.3f} {pts[0][1]:.3f} moveto " + " ".join(
                f"{p[0]:.3f} {p[1]:.3f} lineto" for p in pts[1:]
            )
            out.append(path + " closepath gsave fill grestore 0.5 setlinewidth stroke")
        elif item.kind in ("line", "polyline"):
            set_dash(item.dash)
            out.append(f"{item.width:.2f} setlinewidth")
            pts = item.points
            path = f"newpath {pts[0][0]:.3f} {pts[0][1]:.3f} moveto " + " ".join(
                f"{p[0]:.3f} {p[1]:.3f} lineto" for p in pts[1:]
            )
            out.append(path + " stroke")
            set_dash("solid")
        elif item.kind == "marker":
            x, y = item.points[0]
            r = item.size / 2.0
            if item.marker == "square":
                out.append(
                    f"newpath {x - r:.3f} {y - r:.3f} moveto {item.size:.2f} 0"
                    f" rlineto 0 {item.size:.2f} rlineto {-item.size:.2f} 0 rlineto"
                    " closepath fill"
                )
            elif item.marker == "circle":
                out.append(f"newpath {x:.3f} {y:.3f} {r:.2f} 0 360 arc stroke")
            else:
                out.append(f"newpath {x:.3f} {y:.3f} {r:.2f} 0 360 arc fill")
        elif item.kind == "text":
            x, y = item.points[0]
            x += item.offsets[0]
            y += item.offsets[1]
            out.append(f"/Helvetica findfont {item.text_size:.1f} scalefont setfont")
            out.append(f"{x:.3f} {y:.3f} moveto")
            text = _ps_escape(item.text)
            if item.layout == "right":
                out.append(f"({text}) dup stringwidth pop neg 0 rmoveto show")
            elif item.layout == "centre":
                out.append(f"({text}) dup stringwidth pop -2 div 0 rmoveto show")
            else:
                out.append(f"({text}) show")
    out.append("%%EOF")
    return "\n".join(out) + "\n"
