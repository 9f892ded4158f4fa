"""The visualisation manager: registries of scenes, scene handlers and
viewers, the current viewer, rebuild and transient recovery, end-of-event
behaviour, user vis actions, and the high-level draw facade."""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass, field
from datetime import datetime
from pathlib import Path
from typing import Callable, Optional

from .drivers.base import ProtocolCheckerSink, RecordingSink
from .drivers.systems import GraphicsSystem, RenderResult, builtin_systems
from .drivers.vector import paint, to_eps, to_svg
from .drivers.base import CollectingSink
from .errors import KernelError, SceneError
from .events import (
    Event,
    EventStore,
    TrajectoryFilter,
    TrajectoryModel,
    generate_toy_event,
)
from .geometry import GeometryModel
from .scene import (
    Model,
    PhysicalVolumeModel,
    Primitive,
    Scene,
    TraversalContext,
    UserVisActionModel,
    traverse,
)
from .transform import Transform
from .view import ViewParameters

_WINDOW_RE = re.compile(r"^(\d+)x(\d+)(?:([+-]\d+)([+-]\d+))?$")

VERBOSITY_LEVELS = ("quiet", "errors", "warnings", "confirmations", "all")


def parse_window_geometry(text: str) -> tuple[int, int, int | None, int | None]:
    """'600x600-0+0' -> (600, 600, -0, +0); empty means defaults."""
    if not text or text == "!":
        return 600, 600, None, None
    m = _WINDOW_RE.match(text)
    if not m:
        raise KernelError(
            f"bad window geometry '{text}' (expected WxH or WxH+X+Y)"
        )
    w, h = int(m.group(1)), int(m.group(2))
    x = int(m.group(3)) if m.group(3) is not None else None
    y = int(m.group(4)) if m.group(4) is not None else None
    if w <= 0 or h <= 0:
        raise KernelError("window size must be positive")
    return w, h, x, y


@dataclass
class SceneHandler:
    name: str
    system: GraphicsSystem
    scene: Scene
    viewers: list["Viewer"] = field(default_factory=list)


@dataclass
class Viewer:
    name: str
    handler: SceneHandler
    view: ViewParameters
    auto_refresh: bool = False
    sequence: int = 0
    transients: list[tuple[Primitive, Transform | None, bool]] = field(
        default_factory=list
    )

    @property
    def scene(self) -> Scene:
        return self.handler.scene

    @property
    def system(self) -> GraphicsSystem:
        return self.handler.system


@dataclass
class ViewOutput:
    viewer: str
    ext: str
    text: str | None = None
    data: bytes | None = None
    path: Optional[Path] = None


def _default_clock() -> str:
    return datetime.now().isoformat(timespec="seconds")


class VisManager:
    """Owns all visualisation state for one session."""

    def __init__(
        self,
        geometry: GeometryModel | None = None,
        out_dir=None,
        clock: Callable[[], str] | None = None,
        register_builtins: bool = True,
    ):
        self.geometry = geometry
        self.out_dir = Path(out_dir) if out_dir is not None else None
        self.clock = clock or _default_clock
        self.verbosity = "warnings"
        self.systems: dict[str, GraphicsSystem] = {}
        self.scenes: list[Scene] = []
        self.handlers: list[SceneHandler] = []
        self.viewers: list[Viewer] = []
        self.current_scene: Scene | None = None
        self.current_viewer: Viewer | None = None
        self.event_store = EventStore(100)
        self.trajectory_models: dict[str, TrajectoryModel] = {}
        self.active_trajectory_model: str | None = None
        self.trajectory_filters: dict[str, TrajectoryFilter] = {}
        self.user_actions: dict[str, UserVisActionModel] = {}
        self.atree_verbosity = 1
        self.beam_tracks = 6
        self.beam_field_tesla = 1.0
        self.messages: list[tuple[str, str]] = []
        self._scene_counter = 0
        self._handler_counter = 0
        self._viewer_counter = 0
        self._event_counter = 0
        if register_builtins:
            for system in builtin_systems():
                self.register_system(system)

    # --- messaging ----------------------------------------------------------

    def note(self, level: str, message: str) -> None:
        self.messages.append((level, message))
        threshold = VERBOSITY_LEVELS.index(self.verbosity)
        rank = {"error": 1, "warning": 2, "info": 3}.get(level, 3)
        if rank <= threshold:
            print(f"[{level}] {message}")

    def set_verbosity(self, level: str) -> None:
        if level not in VERBOSITY_LEVELS:
            raise KernelError(
                f"unknown verbosity '{level}' (levels: {', '.join(VERBOSITY_LEVELS)})"
            )
        self.verbosity = level

    # --- registries ----------------------------------------------------------

    def register_system(self, system: GraphicsSystem) -> None:
        if system.nickname in self.systems:
            raise KernelError(f"graphics system '{system.nickname}' already registered")
        self.systems[system.nickname] = system

    def system_names(self) -> list[str]:
        return list(self.systems)

    def create_scene(self, name: str = "") -> Scene:
        if not name or name == "!":
            while any(s.name == f"scene-{self._scene_counter}" for s in self.scenes):
                self._scene_counter += 1
            name = f"scene-{self._scene_counter}"
            self._scene_counter += 1
        if any(s.name == name for s in self.scenes):
            raise SceneError(f"scene '{name}' already exists")
        scene = Scene(name)
        self.scenes.append(scene)
        self.current_scene = scene
        return scene

    def find_scene(self, name: str) -> Scene | None:
        for scene in self.scenes:
            if scene.name == name:
                return scene
        return None

    def open_viewer(self, nickname: str, window_geometry: str = "") -> Viewer:
        system = self.systems.get(nickname)
        if system is None:
            raise KernelError(
                f"unknown graphics system '{nickname}'"
                f" (registered: {', '.join(self.systems) or 'none'})"
            )
        w, h, x, y = parse_window_geometry(window_geometry)
        scene = self.current_scene or self.create_scene()
        handler = SceneHandler(
            f"handler-{self._handler_counter} ({nickname})", system, scene
        )
        self._handler_counter += 1
        self.handlers.append(handler)
        view = ViewParameters()
        view.style = system.default_style
        view.window_width, view.window_height = w, h
        view.window_x, view.window_y = x, y
        viewer = Viewer(
            name=f"viewer-{self._viewer_counter} ({nickname})",
            handler=handler,
            view=view,
            auto_refresh=system.capabilities.retained_store,
        )
        self._viewer_counter += 1
        handler.viewers.append(viewer)
        self.viewers.append(viewer)
        self.current_viewer = viewer
        return viewer

    def find_viewer(self, name: str) -> Viewer | None:
        for viewer in self.viewers:
            if viewer.name == name or viewer.name.startswith(f"viewer-{name} "):
                return viewer
        return None

    def select_viewer(self, name: str) -> Viewer:
        viewer = self.find_viewer(name)
        if viewer is None:
            raise KernelError(f"no viewer named '{name}'")
        self.current_viewer = viewer
        return viewer

    def require_viewer(self) -> Viewer:
        if self.current_viewer is None:
            raise KernelError("no current viewer (open one with /vis/open)")
        return self.current_viewer

    # --- scene content ---------------------------------------------------------

    def add_model(self, model: Model, scene: Scene | None = None) -> Scene:
        scene = scene or self.current_scene
        if scene is None:
            raise SceneError("no current scene (create one with /vis/scene/create)")
        scene.add_model(model)
        self.scene_changed(scene)
        return scene

    def draw_volume(self, root_name: str | None = None,
                    depth_limit: int | None = None) -> Scene:
        if self.geometry is None:
            raise KernelError("no geometry loaded")
        if self.current_scene is None:
            self.create_scene()
        root = None
        base = None
        if root_name and root_name not in ("!", self.geometry.world.name):
            found = self.geometry.find_physical(root_name)
            if found is None:
                raise KernelError(f"no physical volume named '{root_name}'")
            pv, base_tr = found
            root, base = pv, base_tr
        model = PhysicalVolumeModel(self.geometry, root, depth_limit, base)
        return self.add_model(model)

    def scene_changed(self, scene: Scene) -> None:
        """All auto-refreshing views of a changed scene are rebuilt."""
        for viewer in self.viewers:
            if viewer.scene is scene and viewer.auto_refresh:
                self.flush(viewer)

    # --- event flow ----------------------------------------------------------

    def end_of_event(self, event: Event) -> None:
        self.event_store.store(event)
        viewer = self.current_viewer
        if viewer is not None and viewer.auto_refresh:
            self.flush(viewer)

    def beam_on(self, n_events: int) -> list[Event]:
        extent_mm = 250.0
        if self.current_scene is not None:
            _, radius = self.current_scene.extent_sphere()
            if radius > 1.0:
                extent_mm = radius
        events = []
        for _ in range(n_events):
            event = generate_toy_event(
                seed=self._event_counter,
                n_tracks=self.beam_tracks,
                field_tesla=self.beam_field_tesla,
                extent_mm=extent_mm,
            )
            self._event_counter += 1
            events.append(event)
            self.end_of_event(event)
        return events

    # --- drawing ----------------------------------------------------------

    def build_context(self, viewer: Viewer,
                      view: ViewParameters | None = None) -> TraversalContext:
        scene = viewer.scene
        if scene.end_of_event_action == "accumulate":
            events = self.event_store.snapshot()
        else:
            latest = self.event_store.latest()
            events = (latest,) if latest is not None else ()
        model = (
            self.trajectory_models.get(self.active_trajectory_model)
            if self.active_trajectory_model
            else None
        )
        return TraversalContext(
            view=view or viewer.view,
            events=events,
            filters=tuple(self.trajectory_filters.values()),
            trajectory_model=model,
            extra_transients=tuple(viewer.transients),
            date_text=self.clock(),
        )

    def _sanitised(self, name: str) -> str:
        return re.sub(r"[^A-Za-z0-9_.-]+", "-", name).strip("-")

    def flush(self, viewer: Viewer | None = None) -> ViewOutput:
        """Render the viewer now (issue_view): re-visits geometry and events."""
        viewer = viewer or self.require_viewer()
        scene = viewer.scene
        ctx = self.build_context(viewer)
        result: RenderResult = viewer.system.render(self, viewer, scene, ctx)
        out = ViewOutput(viewer.name, result.ext, result.text, result.data)
        is_atree_to_stdout = result.ext == "txt" and self.out_dir is None
        if is_atree_to_stdout:
            print(result.text, end="")
        else:
            directory = self.out_dir or Path(".")
            directory.mkdir(parents=True, exist_ok=True)
            path = directory / (
                f"{self._sanitised(viewer.name)}-{viewer.sequence}.{result.ext}"
            )
            if result.data is not None:
                path.write_bytes(result.data)
            else:
                path.write_text(result.text, encoding="utf-8")
            out.path = path
        viewer.sequence += 1
        return out

    def rebuild(self, viewer: Viewer | None = None) -> ViewOutput:
        """Drop unrecoverable transients and re-render from the kernel."""
        viewer = viewer or self.require_viewer()
        viewer.transients.clear()
        return self.flush(viewer)

    def draw_primitive(
        self,
        primitive: Primitive,
        transform: Transform | None = None,
        two_d: bool = False,
    ) -> None:
        """Facade draw: delivers to the current viewer as an unrecoverable
        transient; silently ignored (with a note) when no viewer exists."""
        if self.current_viewer is None:
            self.note("info", "draw request ignored: no current viewer")
            return
        self.current_viewer.transients.append((primitive, transform, two_d))
        if self.current_viewer.auto_refresh:
            self.flush(self.current_viewer)

    def register_user_vis_action(self, name: str, callback, extent=None) -> None:
        if name in self.user_actions:
            raise KernelError(f"user vis action '{name}' already registered")
        if self.current_scene is None:
            self.create_scene()
        model = UserVisActionModel(name, callback, extent)
        self.user_actions[name] = model
        self.add_model(model)

    def remove_user_vis_action(self, name: str) -> None:
        model = self.user_actions.pop(name, None)
        if model is None:
            raise KernelError(f"no user vis action named '{name}'")
        for scene in self.scenes:
            if model in scene.permanent:
                scene.permanent.remove(model)
                self.scene_changed(scene)

    def trace_view(self, viewer: Viewer,
                   view: ViewParameters | None = None) -> RecordingSink:
        """The exact call sequence this viewer's driver would receive."""
        recorder = RecordingSink()
        ctx = self.build_context(viewer, view=view)
        traverse(viewer.scene, ProtocolCheckerSink(recorder), ctx)
        return recorder

    def export_view(self, fmt: str = "eps", path=None,
                    viewer: Viewer | None = None) -> Path:
        """Save the current view through the vector painter (EPS or SVG)."""
        viewer = viewer or self.require_viewer()
        if fmt not in ("eps", "svg"):
            raise KernelError(f"export format must be eps or svg, not '{fmt}'")
        scene = viewer.scene
        ctx = self.build_context(viewer)
        collector = CollectingSink()
        traverse(scene, ProtocolCheckerSink(collector), ctx)
        centre, radius = scene.extent_sphere()
        painted = paint(collector, centre, radius, ctx.view,
                        ctx.view.window_width, ctx.view.window_height)
        text = to_eps(painted, viewer.name) if fmt == "eps" else to_svg(painted)
        if path is None:
            directory = self.out_dir or Path(".")
            directory.mkdir(parents=True, exist_ok=True)
            path = directory / (
                f"{self._sanitised(viewer.name)}-export-{viewer.sequence}.{fmt}"
            )
            viewer.sequence += 1
        path = Path(path)
        path.write_text(text, encoding="utf-8")
        return path

    # --- state digest ----------------------------------------------------------

    def state_digest(self) -> str:
        """Hash of the observable kernel state; macro replays must agree."""

        def model_state(m):
            return m.describe()

        geometry_state = None
        if self.geometry is not None:
            geometry_state = {
                "logical_vis": {
                    name: lv.vis.key()
                    for name, lv in sorted(self.geometry.logical_volumes().items())
                },
                "overrides": [
                    [list(map(list, path)), patch.__dict__ and _patch_key(patch)]
                    for path, patch in sorted(self.geometry.touchable_overrides.items())
                ],
            }
        state = {
            "systems": sorted(self.systems),
            "scenes": [
                {
                    "name": s.name,
                    "eoe": s.end_of_event_action,
                    "permanent": [model_state(m) for m in s.permanent],
                    "transient": [model_state(m) for m in s.transient],
                }
                for s in self.scenes
            ],
            "handlers": [
                (h.name, h.system.nickname, h.scene.name) for h in self.handlers
            ],
            "viewers": [
                (v.name, v.system.nickname, v.view.key(), v.auto_refresh, v.sequence,
                 len(v.transients))
                for v in self.viewers
            ],
            "current_scene": self.current_scene.name if self.current_scene else None,
            "current_viewer": self.current_viewer.name if self.current_viewer else None,
            "events": {
                "capacity": self.event_store.capacity,
                "ids": self.event_store.ids(),
                "shape": [
                    (e.event_id, len(e.trajectories), len(e.hits))
                    for e in self.event_store
                ],
            },
            "models": {
                name: repr(m) for name, m in sorted(self.trajectory_models.items())
            },
            "active_model": self.active_trajectory_model,
            "filters": {
                name: repr(f) for name, f in sorted(self.trajectory_filters.items())
            },
            "user_actions": sorted(self.user_actions),
            "atree_verbosity": self.atree_verbosity,
            "verbosity": self.verbosity,
            "geometry": geometry_state,
        }
        blob = json.dumps(state, sort_keys=True, default=str)
        return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def _patch_key(patch) -> list:
    out = []
    for k, v in sorted(patch.__dict__.items()):
        if v is None:
            continue
        out.append([k, v.key() if hasattr(v, "key") else v])
    return out
