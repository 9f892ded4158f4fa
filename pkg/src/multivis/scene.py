"""Scenes: the primitive vocabulary, the model library and sink traversal.

A scene is a named container of permanent models (geometry, decorations)
and transient models (trajectories, hits). `traverse` rolls a scene out
into the low-level sink protocol; it is a pure function of the scene
snapshot and the traversal context, so repeated runs deliver identical
call sequences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

from . import units
from .attributes import BLUE, GREEN, RED, WHITE, Colour, VisAttributes
from .errors import SceneError
from .events import (
    Event,
    DrawStyle,
    TrajectoryFilter,
    TrajectoryModel,
    filter_accept,
    hit_attributes,
    style_trajectory,
    trajectory_attributes,
)
from .geometry import GeometryModel, PhysicalVolume, Touchable
from .solids import Aabb, Mesh, bounding_box
from .transform import Transform
from .view import ViewParameters


# --- primitives ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Polyline:
    points: np.ndarray  # (N, 3)
    vis: VisAttributes = VisAttributes()

    def __post_init__(self):
        p = np.asarray(self.points, dtype=float).reshape(-1, 3)
        if p.shape[0] < 2:
            raise SceneError("polyline needs at least 2 points")
        p.flags.writeable = False
        object.__setattr__(self, "points", p)


@dataclass(frozen=True, eq=False)
class Polymarker:
    points: np.ndarray
    kind: str = "dot"  # dot | circle | square
    size: float = 2.0  # px
    vis: VisAttributes = VisAttributes()

    def __post_init__(self):
        if self.size <= 0:
            raise SceneError("marker size must be > 0")
        p = np.asarray(self.points, dtype=float).reshape(-1, 3)
        p.flags.writeable = False
        object.__setattr__(self, "points", p)


@dataclass(frozen=True, eq=False)
class Circle:
    position: np.ndarray
    size: float = 2.0  # px
    vis: VisAttributes = VisAttributes()

    def __post_init__(self):
        if self.size <= 0:
            raise SceneError("marker size must be > 0")
        p = np.asarray(self.position, dtype=float).reshape(3)
        p.flags.writeable = False
        object.__setattr__(self, "position", p)


@dataclass(frozen=True, eq=False)
class Square:
    position: np.ndarray
    size: float = 2.0  # px
    vis: VisAttributes = VisAttributes()

    def __post_init__(self):
        if self.size <= 0:
            raise SceneError("marker size must be > 0")
        p = np.asarray(self.position, dtype=float).reshape(3)
        p.flags.writeable = False
        object.__setattr__(self, "position", p)


@dataclass(frozen=True, eq=False)
class Text:
    position: np.ndarray
    content: str
    size: float = 12.0  # points; raster drivers treat 1 pt as 1 px
    layout: str = "left"  # left | centre | right
    offsets: tuple[float, float] = (0.0, 0.0)  # px
    vis: VisAttributes = VisAttributes()

    def __post_init__(self):
        p = np.asarray(self.position, dtype=float).reshape(3)
        p.flags.writeable = False
        object.__setattr__(self, "position", p)


@dataclass(frozen=True, eq=False)
class MeshPrimitive:
    mesh: Mesh
    vis: VisAttributes = VisAttributes()


@dataclass(frozen=True, eq=False)
class ScaleBar:
    length: float  # mm
    direction: np.ndarray
    annotation: str
    position: np.ndarray  # centre of the bar
    vis: VisAttributes = VisAttributes()

    def __post_init__(self):
        d = np.asarray(self.direction, dtype=float).reshape(3)
        p = np.asarray(self.position, dtype=float).reshape(3)
        d.flags.writeable = False
        p.flags.writeable = False
        object.__setattr__(self, "direction", d)
        object.__setattr__(self, "position", p)


Primitive = Polyline | Polymarker | Circle | Square | Text | MeshPrimitive | ScaleBar


# --- models ---------------------------------------------------------------

@dataclass
class PhysicalVolumeModel:
    geometry: GeometryModel
    root: PhysicalVolume | None = None  # None = world
    depth_limit: int | None = None
    base_transform: Transform | None = None

    def touchables(self) -> list[Touchable]:
        return self.geometry.descend(
            depth_limit=self.depth_limit,
            root=self.root,
            base_transform=self.base_transform,
        )

    def extent_box(self) -> Aabb:
        root = self.root or self.geometry.world
        box = bounding_box(root.logical.solid)
        tr = (self.base_transform or Transform.identity()).compose(root.transform)
        return box.transformed(tr)

    def describe(self) -> str:
        root = self.root or self.geometry.world
        depth = "unlimited" if self.depth_limit is None else str(self.depth_limit)
        return f"volume {root.name} (depth {depth})"


@dataclass
class TrajectoriesModel:
    draw_mode: str = "line"  # line | step_points | both
    point_size: float = 2.0
    flavour: str = "smooth"

    def describe(self) -> str:
        return f"trajectories ({self.flavour})"


@dataclass
class HitsModel:
    size: float = 5.0  # px

    def describe(self) -> str:
        return "hits"


@dataclass
class AxesModel:
    origin: tuple[float, float, float] = (0.0, 0.0, 0.0)
    length: float | None = None  # None: extent radius / 10

    def describe(self) -> str:
        return "axes"


@dataclass
class ScaleModel:
    length: float | None = None  # None: 1-2-5 rounding of the extent radius
    direction: str = "x"

    def describe(self) -> str:
        return "scale"


@dataclass
class Text2DModel:
    x: float
    y: float
    content: str
    size: float = 12.0
    offsets: tuple[float, float] = (0.0, 0.0)
    colour: Colour = BLUE
    layout: str = "left"

    def __post_init__(self):
        if not (-1.0 <= self.x <= 1.0 and -1.0 <= self.y <= 1.0):
            raise SceneError("2D coordinates must be within [-1, 1]")

    def describe(self) -> str:
        return f"text2D {self.content!r}"


@dataclass
class Text3DModel:
    position: tuple[float, float, float]
    content: str
    size: float = 12.0
    offsets: tuple[float, float] = (0.0, 0.0)
    colour: Colour = BLUE
    layout: str = "left"

    def describe(self) -> str:
        return f"text {self.content!r}"


@dataclass
class FrameModel:
    colour: Colour = WHITE
    line_width: float = 1.0

    def describe(self) -> str:
        return "frame"


@dataclass
class DateStampModel:
    colour: Colour = BLUE

    def describe(self) -> str:
        return "date"


@dataclass
class EventIDModel:
    colour: Colour = BLUE

    def describe(self) -> str:
        return "eventID"


@dataclass
class Logo2DModel:
    colour: Colour = GREEN
    content: str = "multivis"

    def describe(self) -> str:
        return "logo2D"


@dataclass
class UserVisActionModel:
    name: str
    callback: Callable[["DrawHandle"], None]
    extent: Aabb | None = None

    def describe(self) -> str:
        return f"user action {self.name}"


Model = (
    PhysicalVolumeModel
    | TrajectoriesModel
    | HitsModel
    | AxesModel
    | ScaleModel
    | Text2DModel
    | Text3DModel
    | FrameModel
    | DateStampModel
    | EventIDModel
    | Logo2DModel
    | UserVisActionModel
)

_TRANSIENT_MODELS = (TrajectoriesModel, HitsModel)


# --- the scene ---------------------------------------------------------------

@dataclass
class Scene:
    name: str
    permanent: list[Model] = field(default_factory=list)
    transient: list[Model] = field(default_factory=list)
    end_of_event_action: str = "refresh"  # refresh | accumulate

    def add_model(self, model: Model) -> None:
        if isinstance(model, _TRANSIENT_MODELS):
            self.transient.append(model)
        else:
            self.permanent.append(model)

    def extent_box(self) -> Aabb | None:
        box: Aabb | None = None
        for model in self.permanent:
            own: Aabb | None = None
            if isinstance(model, PhysicalVolumeModel):
                own = model.extent_box()
            elif isinstance(model, UserVisActionModel):
                own = model.extent
            elif isinstance(model, Text3DModel):
                p = np.asarray(model.position, dtype=float)
                own = Aabb(p, p)
            if own is not None:
                box = own if box is None else box.union(own)
        return box

    def extent_sphere(self) -> tuple[np.ndarray, float]:
        """Bounding sphere enclosing every permanent model's extent."""
        box = self.extent_box()
        if box is None:
            return np.zeros(3), 1.0
        return box.centre(), max(box.half_diagonal(), 1e-9)

    def describe(self) -> str:
        parts = [m.describe() for m in self.permanent + self.transient]
        return f"scene '{self.name}': " + (", ".join(parts) if parts else "empty")


def round_125(value: float) -> float:
    """Largest 1/2/5 x 10^n not exceeding value."""
    if value <= 0.0:
        return 1.0
    exp = math.floor(math.log10(value))
    for mantissa in (5.0, 2.0, 1.0):
        candidate = mantissa * 10.0**exp
        if candidate <= value * (1.0 + 1e-12):
            return candidate
    return 10.0**exp


# --- traversal ---------------------------------------------------------------

@dataclass
class TraversalContext:
    view: ViewParameters = field(default_factory=ViewParameters)
    events: tuple[Event, ...] = ()
    filters: tuple[TrajectoryFilter, ...] = ()
    trajectory_model: TrajectoryModel | None = None
    extra_transients: tuple[tuple[Primitive, Transform | None, bool], ...] = ()
    date_text: str = ""


class DrawHandle:
    """Passed to user vis actions; forwards primitives to the active sink."""

    def __init__(self, sink):
        self._sink = sink

    def draw(self, primitive: Primitive, transform: Transform | None = None,
             two_d: bool = False) -> None:
        deliver_primitive(self._sink, primitive, transform, two_d)


def deliver_primitive(sink, primitive: Primitive,
                      transform: Transform | None = None,
                      two_d: bool = False) -> None:
    """One primitive inside its own bracket pair."""
    if two_d:
        sink.begin_primitives_2d()
        sink.add_primitive(primitive)
        sink.end_primitives_2d()
    else:
        sink.begin_primitives(transform or Transform.identity())
        sink.add_primitive(primitive)
        sink.end_primitives()


def _permanent_primitives(model: Model, scene: Scene,
                          ctx: TraversalContext) -> list[tuple[Primitive, bool]]:
    """Primitives for one decoration model; bool marks 2D delivery."""
    centre, radius = scene.extent_sphere()

    if isinstance(model, AxesModel):
        length = model.length if model.length is not None else radius / 10.0
        origin = np.asarray(model.origin, dtype=float)
        out = []
        for axis, colour in ((0, RED), (1, GREEN), (2, BLUE)):
            tip = origin.copy()
            tip[axis] += length
            out.append(
                (Polyline(np.array([origin, tip]),
                          VisAttributes(colour=colour)), False)
            )
        return out

    if isinstance(model, ScaleModel):
        length = model.length if model.length is not None else round_125(radius)
        axis = {"x": 0, "y": 1, "z": 2}[model.direction]
        direction = np.zeros(3)
        direction[axis] = 1.0
        position = centre.copy()
        position[1] -= radius  # below the scene
        return [
            (
                ScaleBar(
                    length=length,
                    direction=direction,
                    annotation=units.fmt(length, "length"),
                    position=position,
                ),
                False,
            )
        ]

    if isinstance(model, Text2DModel):
        return [
            (
                Text(
                    np.array([model.x, model.y, 0.0]),
                    model.content,
                    size=model.size,
                    layout=model.layout,
                    offsets=model.offsets,
                    vis=VisAttributes(colour=model.colour),
                ),
                True,
            )
        ]

    if isinstance(model, Text3DModel):
        return [
            (
                Text(
                    np.asarray(model.position, dtype=float),
                    model.content,
                    size=model.size,
                    layout=model.layout,
                    offsets=model.offsets,
                    vis=VisAttributes(colour=model.colour),
                ),
                False,
            )
        ]

    if isinstance(model, FrameModel):
        c = 0.95
        pts = np.array(
            [[-c, -c, 0], [c, -c, 0], [c, c, 0], [-c, c, 0], [-c, -c, 0]],
            dtype=float,
        )
        vis = VisAttributes(colour=model.colour, line_width=model.line_width)
        return [(Polyline(pts, vis), True)]

    if isinstance(model, DateStampModel):
        if not ctx.date_text:
            return []
        return [
            (
                Text(
                    np.array([0.95, 0.95, 0.0]),
                    ctx.date_text,
                    size=12.0,
                    layout="right",
                    vis=VisAttributes(colour=model.colour),
                ),
                True,
            )
        ]

    if isinstance(model, EventIDModel):
        if not ctx.events:
            return []
        return [
            (
                Text(
                    np.array([-0.95, -0.95, 0.0]),
                    f"Event {ctx.events[-1].event_id}",
                    size=12.0,
                    layout="left",
                    vis=VisAttributes(colour=model.colour),
                ),
                True,
            )
        ]

    if isinstance(model, Logo2DModel):
        return [
            (
                Text(
                    np.array([0.95, -0.95, 0.0]),
                    model.content,
                    size=12.0,
                    layout="right",
                    vis=VisAttributes(colour=model.colour),
                ),
                True,
            )
        ]

    raise SceneError(f"no primitive mapping for model {model!r}")


def _merge_style(style: DrawStyle, model: TrajectoriesModel) -> DrawStyle:
    if model.draw_mode == "step_points":
        return replace(style, draw_line=False, draw_points=True,
                       point_size=model.point_size)
    if model.draw_mode == "both":
        return replace(style, draw_points=True)
    return style


def _hit_colour(hit, lo: float, hi: float) -> Colour:
    # linear white -> red over the event's deposit range
    if hi <= lo:
        frac = 1.0
    else:
        frac = (hit.energy_deposit - lo) / (hi - lo)
    return Colour(1.0, 1.0 - frac, 1.0 - frac)


def traverse(scene: Scene, sink, ctx: TraversalContext) -> None:
    """Deliver the whole scene to a sink; see module docstring for ordering."""
    sink.begin_session(ctx.view)
    for model in scene.permanent:
        if isinstance(model, PhysicalVolumeModel):
            for touchable in model.touchables():
                sink.pre_add_solid(
                    touchable.world_transform, touchable.vis, touchable
                )
                sink.add_solid(touchable.solid)
                sink.post_add_solid()
        elif isinstance(model, UserVisActionModel):
            model.callback(DrawHandle(sink))
        else:
            for primitive, two_d in _permanent_primitives(model, scene, ctx):
                deliver_primitive(sink, primitive, None, two_d)

    for model in scene.transient:
        if isinstance(model, TrajectoriesModel):
            for event in ctx.events:
                for trajectory in event.trajectories:
                    if not filter_accept(ctx.filters, trajectory):
                        continue
                    style = _merge_style(
                        style_trajectory(ctx.trajectory_model, trajectory), model
                    )
                    attvalues = trajectory_attributes(trajectory) + [
                        _event_id_attvalue(event)
                    ]
                    sink.add_trajectory(trajectory, style, attvalues)
        elif isinstance(model, HitsModel):
            for event in ctx.events:
                if not event.hits:
                    continue
                deposits = [h.energy_deposit for h in event.hits]
                lo, hi = min(deposits), max(deposits)
                for hit in event.hits:
                    style = DrawStyle(
                        _hit_colour(hit, lo, hi),
                        draw_line=False,
                        draw_points=True,
                        point_size=model.size,
                    )
                    attvalues = hit_attributes(hit) + [_event_id_attvalue(event)]
                    sink.add_hit(hit, style, attvalues)

    for primitive, transform, two_d in ctx.extra_transients:
        deliver_primitive(sink, primitive, transform, two_d)
    sink.end_session()


def _event_id_attvalue(event: Event):
    from .attributes import AttValue

    return AttValue("EventID", str(event.event_id))
