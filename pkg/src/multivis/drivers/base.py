"""The low-level sink protocol and reusable sink implementations."""

from __future__ import annotations

import numpy as np

from ..attributes import AttValue, VisAttributes
from ..errors import SceneError
from ..events import DrawStyle, Hit, Trajectory
from ..scene import Polyline, Polymarker, Primitive, Square
from ..solids import Solid
from ..transform import Transform
from ..view import ViewParameters


class SceneSink:
    """Receiver for scene traversal.

    Call protocol: begin_session once; geometry as
    pre_add_solid / add_solid / post_add_solid triples; primitives inside
    begin_primitives(transform) .. end_primitives or the 2D variants;
    trajectories and hits arrive whole via add_trajectory / add_hit, whose
    default implementations decompose them into primitives on self; finally
    end_session.
    """

    def begin_session(self, view: ViewParameters) -> None:
        pass

    def end_session(self) -> None:
        pass

    def pre_add_solid(self, transform: Transform, vis: VisAttributes,
                      touchable=None) -> None:
        pass

    def add_solid(self, solid: Solid) -> None:
        pass

    def post_add_solid(self) -> None:
        pass

    def begin_primitives(self, transform: Transform | None = None) -> None:
        pass

    def end_primitives(self) -> None:
        pass

    def begin_primitives_2d(self) -> None:
        pass

    def end_primitives_2d(self) -> None:
        pass

    def add_primitive(self, primitive: Primitive) -> None:
        pass

    def add_trajectory(self, trajectory: Trajectory, style: DrawStyle,
                       attvalues: list[AttValue]) -> None:
        points = trajectory.positions()
        self.begin_primitives(Transform.identity())
        if style.draw_line and len(points) >= 2:
            self.add_primitive(
                Polyline(points, VisAttributes(colour=style.colour))
            )
        if style.draw_points:
            self.add_primitive(
                Polymarker(points, "dot", style.point_size,
                           VisAttributes(colour=style.colour))
            )
        self.end_primitives()

    def add_hit(self, hit: Hit, style: DrawStyle,
                attvalues: list[AttValue]) -> None:
        self.begin_primitives(Transform.identity())
        self.add_primitive(
            Square(hit.position, style.point_size,
                   VisAttributes(colour=style.colour))
        )
        self.end_primitives()


def _primitive_key(primitive: Primitive, digits: int = 6):
    name = type(primitive).__name__
    vis = getattr(primitive, "vis", None)
    vis_key = vis.key() if vis is not None else None
    if hasattr(primitive, "points"):
        pts = tuple(
            tuple(round(float(v), digits) for v in row) for row in primitive.points
        )
        return (name, pts, vis_key)
    if hasattr(primitive, "position"):
        pos = tuple(round(float(v), digits) for v in primitive.position)
        content = getattr(primitive, "content", None)
        return (name, pos, content, vis_key)
    return (name, vis_key)


class RecordingSink(SceneSink):
    """Records the full call sequence as comparable tuples."""

    def __init__(self):
        self.records: list[tuple] = []

    def begin_session(self, view):
        self.records.append(("begin_session", view.key()))

    def end_session(self):
        self.records.append(("end_session",))

    def pre_add_solid(self, transform, vis, touchable=None):
        path = touchable.path if touchable is not None else None
        self.records.append(("pre_add_solid", transform.key(), vis.key(), path))

    def add_solid(self, solid):
        self.records.append(("add_solid", solid.name, type(solid).__name__))

    def post_add_solid(self):
        self.records.append(("post_add_solid",))

    def begin_primitives(self, transform=None):
        key = transform.key() if transform is not None else None
        self.records.append(("begin_primitives", key))

    def end_primitives(self):
        self.records.append(("end_primitives",))

    def begin_primitives_2d(self):
        self.records.append(("begin_primitives_2d",))

    def end_primitives_2d(self):
        self.records.append(("end_primitives_2d",))

    def add_primitive(self, primitive):
        self.records.append(("add_primitive", _primitive_key(primitive)))

    def add_trajectory(self, trajectory, style, attvalues):
        pts = tuple(
            tuple(round(float(v), 6) for v in p.position) for p in trajectory.points
        )
        self.records.append(
            (
                "add_trajectory",
                trajectory.track_id,
                trajectory.particle_name,
                pts,
                style.colour.key(),
                style.draw_line,
                style.draw_points,
                round(style.point_size, 6),
                tuple((a.key, a.value) for a in attvalues),
            )
        )

    def add_hit(self, hit, style, attvalues):
        self.records.append(
            (
                "add_hit",
                tuple(round(float(v), 6) for v in hit.position),
                round(hit.energy_deposit, 9),
                style.colour.key(),
                tuple((a.key, a.value) for a in attvalues),
            )
        )

    def trajectory_records(self) -> list[tuple]:
        return [r for r in self.records if r[0] == "add_trajectory"]


class CountingSink(SceneSink):
    """Counts protocol calls; the cheap way to assert scene content."""

    def __init__(self):
        self.counts: dict[str, int] = {}
        self.primitive_kinds: dict[str, int] = {}

    def _bump(self, name):
        self.counts[name] = self.counts.get(name, 0) + 1

    def begin_session(self, view):
        self._bump("begin_session")

    def end_session(self):
        self._bump("end_session")

    def pre_add_solid(self, transform, vis, touchable=None):
        self._bump("pre_add_solid")

    def add_solid(self, solid):
        self._bump("add_solid")

    def post_add_solid(self):
        self._bump("post_add_solid")

    def begin_primitives(self, transform=None):
        self._bump("begin_primitives")

    def end_primitives(self):
        self._bump("end_primitives")

    def begin_primitives_2d(self):
        self._bump("begin_primitives_2d")

    def end_primitives_2d(self):
        self._bump("end_primitives_2d")

    def add_primitive(self, primitive):
        self._bump("add_primitive")
        kind = type(primitive).__name__
        self.primitive_kinds[kind] = self.primitive_kinds.get(kind, 0) + 1

    def add_trajectory(self, trajectory, style, attvalues):
        self._bump("add_trajectory")

    def add_hit(self, hit, style, attvalues):
        self._bump("add_hit")

    def n(self, name: str) -> int:
        return self.counts.get(name, 0)


class ProtocolCheckerSink(SceneSink):
    """Asserts bracket matching and ordering; optionally forwards to another sink."""

    def __init__(self, inner: SceneSink | None = None):
        self.inner = inner or SceneSink()
        self._session = False
        self._solid_open = False
        self._prim_open = False
        self._prim_2d_open = False

    def _require(self, condition: bool, message: str) -> None:
        if not condition:
            raise SceneError(f"sink protocol violation: {message}")

    def _clear(self) -> bool:
        return not (self._solid_open or self._prim_open or self._prim_2d_open)

    def begin_session(self, view):
        self._require(not self._session, "begin_session twice")
        self._session = True
        self.inner.begin_session(view)

    def end_session(self):
        self._require(self._session, "end_session without begin")
        self._require(self._clear(), "end_session inside an open bracket")
        self._session = False
        self.inner.end_session()

    def pre_add_solid(self, transform, vis, touchable=None):
        self._require(self._session and self._clear(), "pre_add_solid misplaced")
        self._solid_open = True
        self.inner.pre_add_solid(transform, vis, touchable)

    def add_solid(self, solid):
        self._require(self._solid_open, "add_solid outside pre/post brackets")
        self.inner.add_solid(solid)

    def post_add_solid(self):
        self._require(self._solid_open, "post_add_solid without pre_add_solid")
        self._solid_open = False
        self.inner.post_add_solid()

    def begin_primitives(self, transform=None):
        self._require(self._session and self._clear(), "begin_primitives misplaced")
        self._prim_open = True
        self.inner.begin_primitives(transform)

    def end_primitives(self):
        self._require(self._prim_open, "end_primitives without begin")
        self._prim_open = False
        self.inner.end_primitives()

    def begin_primitives_2d(self):
        self._require(self._session and self._clear(), "begin_primitives_2d misplaced")
        self._prim_2d_open = True
        self.inner.begin_primitives_2d()

    def end_primitives_2d(self):
        self._require(self._prim_2d_open, "end_primitives_2d without begin")
        self._prim_2d_open = False
        self.inner.end_primitives_2d()

    def add_primitive(self, primitive):
        self._require(
            self._prim_open or self._prim_2d_open, "add_primitive outside brackets"
        )
        self.inner.add_primitive(primitive)

    def add_trajectory(self, trajectory, style, attvalues):
        self._require(self._session and self._clear(), "add_trajectory misplaced")
        self.inner.add_trajectory(trajectory, style, attvalues)

    def add_hit(self, hit, style, attvalues):
        self._require(self._session and self._clear(), "add_hit misplaced")
        self.inner.add_hit(hit, style, attvalues)


class CollectingSink(SceneSink):
    """Gathers resolved scene content for renderers.

    `solids` holds (solid, transform, vis, touchable); `placed_primitives`
    holds (primitive, transform, two_d). Trajectories and hits decompose via
    the base-class implementations, so renderers see only primitives.
    """

    def __init__(self):
        self.view: ViewParameters | None = None
        self.solids: list[tuple] = []
        self.placed_primitives: list[tuple] = []
        self.trajectories: list[tuple] = []
        self.hits: list[tuple] = []
        self._transform: Transform | None = None
        self._two_d = False
        self._pending: tuple | None = None

    def begin_session(self, view):
        self.view = view

    def pre_add_solid(self, transform, vis, touchable=None):
        self._pending = (transform, vis, touchable)

    def add_solid(self, solid):
        transform, vis, touchable = self._pending
        self.solids.append((solid, transform, vis, touchable))

    def post_add_solid(self):
        self._pending = None

    def begin_primitives(self, transform=None):
        self._transform = transform or Transform.identity()
        self._two_d = False

    def end_primitives(self):
        self._transform = None

    def begin_primitives_2d(self):
        self._two_d = True

    def end_primitives_2d(self):
        self._two_d = False

    def add_primitive(self, primitive):
        transform = self._transform if not self._two_d else None
        self.placed_primitives.append((primitive, transform, self._two_d))

    def add_trajectory(self, trajectory, style, attvalues):
        self.trajectories.append((trajectory, style, list(attvalues)))
        super().add_trajectory(trajectory, style, attvalues)

    def add_hit(self, hit, style, attvalues):
        self.hits.append((hit, style, list(attvalues)))
        super().add_hit(hit, style, attvalues)


class TeeSink(SceneSink):
    """Fans every call out to several sinks."""

    def __init__(self, *sinks: SceneSink):
        self.sinks = sinks

    def begin_session(self, view):
        for s in self.sinks:
            s.begin_session(view)

    def end_session(self):
        for s in self.sinks:
            s.end_session()

    def pre_add_solid(self, transform, vis, touchable=None):
        for s in self.sinks:
            s.pre_add_solid(transform, vis, touchable)

    def add_solid(self, solid):
        for s in self.sinks:
            s.add_solid(solid)

    def post_add_solid(self):
        for s in self.sinks:
            s.post_add_solid()

    def begin_primitives(self, transform=None):
        for s in self.sinks:
            s.begin_primitives(transform)

    def end_primitives(self):
        for s in self.sinks:
            s.end_primitives()

    def begin_primitives_2d(self):
        for s in self.sinks:
            s.begin_primitives_2d()

    def end_primitives_2d(self):
        for s in self.sinks:
            s.end_primitives_2d()

    def add_primitive(self, primitive):
        for s in self.sinks:
            s.add_primitive(primitive)

    def add_trajectory(self, trajectory, style, attvalues):
        for s in self.sinks:
            s.add_trajectory(trajectory, style, attvalues)

    def add_hit(self, hit, style, attvalues):
        for s in self.sinks:
            s.add_hit(hit, style, attvalues)
