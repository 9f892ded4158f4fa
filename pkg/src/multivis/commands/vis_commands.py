"""Registration of the /vis, /control and /run command set."""

from __future__ import annotations

import math

from ..attributes import VisPatch
from ..errors import CommandError, KernelError
from ..events import (
    AttributeIntervalFilter,
    ChargeFilter,
    DrawByCharge,
    DrawByParticleID,
    ParticleFilter,
)
from ..kernel import VERBOSITY_LEVELS
from ..scene import (
    AxesModel,
    DateStampModel,
    EventIDModel,
    FrameModel,
    HitsModel,
    Logo2DModel,
    ScaleModel,
    Text2DModel,
    Text3DModel,
    TrajectoriesModel,
)
from .session import CommandStatus, Session
from .tree import Param

_MODELLING_BASE = "/vis/modeling/trajectories"
_FILTERING_BASE = "/vis/filtering/trajectories"


def register_commands(session: Session) -> None:
    tree = session.tree
    vis = session.vis

    def refresh_viewer_if_auto():
        viewer = vis.require_viewer()
        if viewer.auto_refresh:
            vis.flush(viewer)

    # --- top level -----------------------------------------------------------

    def open_viewer(system, window):
        viewer = vis.open_viewer(system, window)
        return f"opened {viewer.name}"

    tree.register(
        "/vis/open",
        "Create a scene handler and viewer for a graphics system.",
        [
            Param("system", "string"),
            Param("window", "string", default="", omittable=True),
        ],
        open_viewer,
    )

    def list_state():
        lines = ["graphics systems:"]
        for name, system in vis.systems.items():
            caps = system.capabilities
            notes = []
            if caps.retained_store:
                notes.append("retained")
            if caps.geometry_only:
                notes.append("geometry only")
            suffix = f" ({', '.join(notes)})" if notes else ""
            lines.append(f"  {name}{suffix}")
        lines.append("scenes:")
        for scene in vis.scenes:
            marker = "*" if scene is vis.current_scene else " "
            lines.append(f" {marker} {scene.describe()}")
        lines.append("viewers:")
        for viewer in vis.viewers:
            marker = "*" if viewer is vis.current_viewer else " "
            lines.append(
                f" {marker} {viewer.name} on scene '{viewer.scene.name}'"
                f" autoRefresh={viewer.auto_refresh}"
            )
        return CommandStatus("success", "\n".join(lines))

    tree.register("/vis/list", "List systems, scenes and viewers.", [], list_state)

    tree.register(
        "/vis/verbose",
        "Gate kernel messages: " + "|".join(VERBOSITY_LEVELS) + ".",
        [Param("level", "choice", default="warnings", omittable=True,
               choices=VERBOSITY_LEVELS)],
        lambda level: vis.set_verbosity(level),
    )

    def draw_volume(volume):
        scene = vis.draw_volume(None if volume in ("", "!") else volume)
        return f"volume model added to scene '{scene.name}'"

    tree.register(
        "/vis/drawVolume",
        "Add the geometry to the current scene (created if needed).",
        [Param("volume", "string", default="!", omittable=True)],
        draw_volume,
    )

    def export_view(format, filename):
        path = vis.export_view(format, filename or None)
        return f"wrote {path}"

    tree.register(
        "/vis/export",
        "Save the current view through the vector writer.",
        [
            Param("format", "choice", default="eps", omittable=True,
                  choices=("eps", "svg")),
            Param("filename", "string", default="", omittable=True),
        ],
        export_view,
    )

    # --- viewer ----------------------------------------------------------

    def flush():
        out = vis.flush()
        return f"flushed {out.viewer}" + (f" -> {out.path}" if out.path else "")

    tree.register(
        "/vis/viewer/flush",
        "Render the current viewer now (for file drivers, write the file).",
        [],
        flush,
    )

    tree.register(
        "/vis/viewer/rebuild",
        "Drop unrecoverable transients and re-render from the kernel.",
        [],
        lambda: vis.rebuild() and None,
    )

    tree.register(
        "/vis/viewer/select",
        "Make a viewer current (by full name or index).",
        [Param("viewer", "string")],
        lambda viewer: f"current viewer: {vis.select_viewer(viewer).name}",
    )

    def set_auto_refresh(flag):
        viewer = vis.require_viewer()
        viewer.auto_refresh = flag
        if flag:
            vis.flush(viewer)

    tree.register(
        "/vis/viewer/set/autoRefresh",
        "Re-render automatically when the scene or view changes.",
        [Param("flag", "bool", default="true", omittable=True)],
        set_auto_refresh,
    )

    def set_style(style):
        viewer = vis.require_viewer()
        viewer.view.style = {"w": "wireframe", "s": "surface"}.get(style, style)
        refresh_viewer_if_auto()

    tree.register(
        "/vis/viewer/set/style",
        "Drawing style: wireframe or surface.",
        [Param("style", "choice", choices=("wireframe", "surface", "w", "s"))],
        set_style,
    )

    def set_aux_edges(flag):
        vis.require_viewer().view.auxiliary_edges = flag
        refresh_viewer_if_auto()

    tree.register(
        "/vis/viewer/set/auxiliaryEdge",
        "Show edges introduced by curved-surface tessellation.",
        [Param("flag", "bool", default="true", omittable=True)],
        set_aux_edges,
    )

    def set_hidden_marker(flag):
        vis.require_viewer().view.hidden_marker = flag
        refresh_viewer_if_auto()

    tree.register(
        "/vis/viewer/set/hiddenMarker",
        "Let surfaces hide markers behind them.",
        [Param("flag", "bool", default="true", omittable=True)],
        set_hidden_marker,
    )

    def set_segments(segments):
        if segments < 12:
            raise CommandError("lineSegmentsPerCircle must be >= 12")
        vis.require_viewer().view.segments_per_circle = segments
        refresh_viewer_if_auto()

    tree.register(
        "/vis/viewer/set/lineSegmentsPerCircle",
        "Tessellation fineness for curved surfaces.",
        [Param("segments", "int", default="24", omittable=True)],
        set_segments,
    )

    def set_viewpoint_vector(x, y, z):
        if x == 0.0 and y == 0.0 and z == 0.0:
            raise CommandError("viewpoint vector must not be zero")
        vis.require_viewer().view.set_viewpoint((x, y, z))
        refresh_viewer_if_auto()

    tree.register(
        "/vis/viewer/set/viewpointVector",
        "Direction from the scene towards the viewer.",
        [Param("x", "double"), Param("y", "double"), Param("z", "double")],
        set_viewpoint_vector,
    )

    def set_lights_vector(x, y, z):
        if x == 0.0 and y == 0.0 and z == 0.0:
            raise CommandError("lights vector must not be zero")
        vis.require_viewer().view.set_lights((x, y, z))
        refresh_viewer_if_auto()

    tree.register(
        "/vis/viewer/set/lightsVector",
        "Direction the light travels.",
        [Param("x", "double"), Param("y", "double"), Param("z", "double")],
        set_lights_vector,
    )

    def set_viewpoint_theta_phi(theta, phi, unit):
        vis.require_viewer().view.set_viewpoint_theta_phi(theta * unit, phi * unit)
        refresh_viewer_if_auto()

    tree.register(
        "/vis/viewer/set/viewpointThetaPhi",
        "Viewpoint as polar/azimuthal angles (default degrees).",
        [
            Param("theta", "double"),
            Param("phi", "double"),
            Param("unit", "unit", default="deg", unit_category="angle"),
        ],
        set_viewpoint_theta_phi,
    )

    def set_zoom(factor):
        vis.require_viewer().view.set_zoom(factor)
        refresh_viewer_if_auto()

    tree.register(
        "/vis/viewer/set/zoom",
        "Zoom factor (> 0).",
        [Param("factor", "double", default="1", omittable=True)],
        set_zoom,
    )

    def set_projection(style, fov, unit):
        view = vis.require_viewer().view
        view.projection = (
            "orthographic" if style in ("o", "orthographic") else "perspective"
        )
        view.fov_deg = math.degrees(fov * unit)
        refresh_viewer_if_auto()

    tree.register(
        "/vis/viewer/set/projection",
        "Orthographic or perspective projection.",
        [
            Param("style", "choice", default="orthographic", omittable=True,
                  choices=("o", "orthographic", "p", "perspective")),
            Param("fov", "double", default="30", omittable=True),
            Param("unit", "unit", default="deg", unit_category="angle"),
        ],
        set_projection,
    )

    # --- scene ----------------------------------------------------------

    tree.register(
        "/vis/scene/create",
        "Create a scene (auto-named when no name is given) and make it current.",
        [Param("name", "string", default="", omittable=True)],
        lambda name: f"created scene '{vis.create_scene(name).name}'",
    )

    def end_of_event_action(action, maxKept):
        scene = vis.current_scene
        if scene is None:
            raise CommandError("no current scene")
        scene.end_of_event_action = action
        dropped = vis.event_store.set_capacity(maxKept)
        if maxKept == 0:
            return CommandStatus(
                "warning",
                "event store capacity 0: transients are unrecoverable",
            )
        if dropped:
            return CommandStatus(
                "warning", f"event store trimmed, {dropped} event(s) dropped"
            )

    tree.register(
        "/vis/scene/endOfEventAction",
        "refresh: show each event alone; accumulate: superimpose kept events.",
        [
            Param("action", "choice", choices=("refresh", "accumulate")),
            Param("maxKept", "int", default="100", omittable=True),
        ],
        end_of_event_action,
    )

    def add_volume(volume, copy_no, depth):
        scene = vis.draw_volume(
            None if volume in ("", "!") else volume,
            None if depth < 0 else depth,
        )
        return f"volume model added to scene '{scene.name}'"

    tree.register(
        "/vis/scene/add/volume",
        "Add a geometry subtree; depth -1 means unlimited.",
        [
            Param("volume", "string", default="!", omittable=True),
            Param("copy_no", "int", default="0", omittable=True),
            Param("depth", "int", default="-1", omittable=True),
        ],
        add_volume,
    )

    def add_axes(x, y, z, length, unit):
        origin = (x * unit, y * unit, z * unit)
        vis.add_model(
            AxesModel(origin, None if length <= 0 else length * unit)
        )

    tree.register(
        "/vis/scene/add/axes",
        "Simple axes: x=red, y=green, z=blue.",
        [
            Param("x", "double", default="0", omittable=True),
            Param("y", "double", default="0", omittable=True),
            Param("z", "double", default="0", omittable=True),
            Param("length", "double", default="-1", omittable=True),
            Param("unit", "unit", default="mm", unit_category="length"),
        ],
        add_axes,
    )

    def add_scale(length, unit, direction):
        vis.add_model(
            ScaleModel(None if length <= 0 else length * unit, direction)
        )

    tree.register(
        "/vis/scene/add/scale",
        "Scale bar; auto length snaps to 1/2/5 x 10^n mm.",
        [
            Param("length", "double", default="-1", omittable=True),
            Param("unit", "unit", default="mm", unit_category="length"),
            Param("direction", "choice", default="x", omittable=True,
                  choices=("x", "y", "z")),
        ],
        add_scale,
    )

    def add_text(x, y, z, unit, size, dx, dy, text):
        vis.add_model(
            Text3DModel(
                (x * unit, y * unit, z * unit),
                text,
                size=size,
                offsets=(dx, dy),
                colour=session.text_colour,
                layout=session.text_layout,
            )
        )

    tree.register(
        "/vis/scene/add/text",
        "3D-anchored text: x y z unit size x-offset y-offset text...",
        [
            Param("x", "double"),
            Param("y", "double"),
            Param("z", "double"),
            Param("unit", "unit", unit_category="length", unit_required=True),
            Param("size", "double", default="12", omittable=True),
            Param("dx", "double", default="0", omittable=True),
            Param("dy", "double", default="0", omittable=True),
            Param("text", "trailing", default="", omittable=True),
        ],
        add_text,
    )

    def add_text2d(x, y, size, dx, dy, text):
        vis.add_model(
            Text2DModel(
                x,
                y,
                text,
                size=size,
                offsets=(dx, dy),
                colour=session.text_colour,
                layout=session.text_layout,
            )
        )

    tree.register(
        "/vis/scene/add/text2D",
        "Screen-anchored text: x y in [-1,1], size, offsets, text...",
        [
            Param("x", "double"),
            Param("y", "double"),
            Param("size", "double", default="12", omittable=True),
            Param("dx", "double", default="0", omittable=True),
            Param("dy", "double", default="0", omittable=True),
            Param("text", "trailing", default="", omittable=True),
        ],
        add_text2d,
    )

    tree.register(
        "/vis/scene/add/trajectories",
        "Draw stored trajectories at end of event.",
        [Param("flavour", "string", default="smooth", omittable=True)],
        lambda flavour: vis.add_model(TrajectoriesModel(flavour=flavour)) and None,
    )

    tree.register(
        "/vis/scene/add/hits",
        "Draw stored hits at end of event.",
        [],
        lambda: vis.add_model(HitsModel()) and None,
    )

    tree.register(
        "/vis/scene/add/frame",
        "Frame around the view, using the current default colour and width.",
        [],
        lambda: vis.add_model(
            FrameModel(session.draw_colour, session.draw_line_width)
        )
        and None,
    )

    tree.register(
        "/vis/scene/add/date",
        "Date stamp (top right).",
        [],
        lambda: vis.add_model(DateStampModel(session.text_colour)) and None,
    )

    tree.register(
        "/vis/scene/add/eventID",
        "Event number (bottom left), drawn at end of event.",
        [],
        lambda: vis.add_model(EventIDModel(session.text_colour)) and None,
    )

    tree.register(
        "/vis/scene/add/logo2D",
        "Simple 2D logo tag.",
        [],
        lambda: vis.add_model(Logo2DModel(session.text_colour)) and None,
    )

    tree.register(
        "/vis/scene/add/logo",
        "3D logo.",
        [
            Param("height", "double", default="1", omittable=True),
            Param("unit", "unit", default="m", unit_category="length"),
        ],
        unsupported=True,
    )

    # --- default drawing attributes (/vis/set) --------------------------------

    def set_colour(colour):
        session.draw_colour = colour

    tree.register(
        "/vis/set/colour",
        "Default colour for subsequent decorations; no argument reverts to white.",
        [Param("colour", "colour", default="white", omittable=True)],
        set_colour,
    )

    def set_line_width(width):
        session.draw_line_width = width

    tree.register(
        "/vis/set/lineWidth",
        "Default line width; no argument reverts to 1.",
        [Param("width", "double", default="1", omittable=True)],
        set_line_width,
    )

    def set_text_colour(colour):
        session.text_colour = colour

    tree.register(
        "/vis/set/textColour",
        "Default text colour; no argument reverts to blue.",
        [Param("colour", "colour", default="blue", omittable=True)],
        set_text_colour,
    )

    def set_text_layout(layout):
        session.text_layout = layout

    tree.register(
        "/vis/set/textLayout",
        "Default text layout; no argument reverts to left.",
        [Param("layout", "choice", default="left", omittable=True,
               choices=("left", "centre", "right"))],
        set_text_layout,
    )

    def set_touchable(path):
        if not path:
            session.current_touchable = ()
            return "current touchable cleared"
        if vis.geometry is None:
            raise KernelError("no geometry loaded")
        candidate = tuple(path)
        if not any(
            t.path == candidate for t in vis.geometry.descend()
        ):
            return CommandStatus(
                "warning", f"no touchable matches {_path_text(candidate)}"
            )
        session.current_touchable = candidate
        return f"current touchable: {_path_text(candidate)}"

    tree.register(
        "/vis/set/touchable",
        "Select the touchable for /vis/touchable/set/ commands"
        " (name copy-number pairs from the world down).",
        [Param("path", "pairs", omittable=True)],
        set_touchable,
    )

    # --- touchable and logical volume attributes ------------------------------

    def _patch_touchable(patch: VisPatch):
        if vis.geometry is None:
            raise KernelError("no geometry loaded")
        if not session.current_touchable:
            raise CommandError(
                "no touchable selected (use /vis/set/touchable first)"
            )
        changed = vis.geometry.set_touchable_vis(session.current_touchable, patch)
        if changed == 0:
            return CommandStatus(
                "warning",
                f"no touchable matches {_path_text(session.current_touchable)}",
            )
        for scene in vis.scenes:
            vis.scene_changed(scene)

    tree.register(
        "/vis/touchable/set/colour",
        "Colour of the selected touchable.",
        [Param("colour", "colour", default="white", omittable=True)],
        lambda colour: _patch_touchable(VisPatch(colour=colour)),
    )

    tree.register(
        "/vis/touchable/set/visibility",
        "Visibility of the selected touchable.",
        [Param("flag", "bool", default="true", omittable=True)],
        lambda flag: _patch_touchable(VisPatch(visible=flag)),
    )

    tree.register(
        "/vis/touchable/set/lineWidth",
        "Line width of the selected touchable.",
        [Param("width", "double", default="1", omittable=True)],
        lambda width: _patch_touchable(VisPatch(line_width=width)),
    )

    tree.register(
        "/vis/touchable/set/daughtersInvisible",
        "Hide everything below the selected touchable.",
        [Param("flag", "bool", default="true", omittable=True)],
        lambda flag: _patch_touchable(VisPatch(daughters_invisible=flag)),
    )

    def _patch_logical(name, depth, patch: VisPatch):
        if vis.geometry is None:
            raise KernelError("no geometry loaded")
        changed = vis.geometry.set_logical_vis(name, depth, patch)
        if changed == 0:
            return CommandStatus("warning", f"no logical volume named '{name}'")
        for scene in vis.scenes:
            vis.scene_changed(scene)

    tree.register(
        "/vis/geometry/set/visibility",
        "Visibility of a logical volume; depth > 0 descends to daughters.",
        [
            Param("volume", "string"),
            Param("depth", "int", default="0", omittable=True),
            Param("flag", "bool", default="true", omittable=True),
        ],
        lambda volume, depth, flag: _patch_logical(
            volume, depth, VisPatch(visible=flag)
        ),
    )

    tree.register(
        "/vis/geometry/set/colour",
        "Colour of a logical volume; depth > 0 descends to daughters.",
        [
            Param("volume", "string"),
            Param("depth", "int", default="0", omittable=True),
            Param("colour", "colour", default="white", omittable=True),
        ],
        lambda volume, depth, colour: _patch_logical(
            volume, depth, VisPatch(colour=colour)
        ),
    )

    tree.register(
        "/vis/ASCIITree/verbose",
        "Detail level for the ASCII tree driver.",
        [Param("verbosity", "int", default="1", omittable=True)],
        lambda verbosity: _set_atree_verbosity(vis, verbosity),
    )

    # --- trajectory models ----------------------------------------------------

    def _unique_name(prefix: str, table) -> str:
        n = 0
        while f"{prefix}-{n}" in table:
            n += 1
        return f"{prefix}-{n}"

    def _register_model_nodes(name: str):
        base = f"{_MODELLING_BASE}/{name}"

        def set_draw_step_pts(flag):
            vis.trajectory_models[name].draw_step_points = flag

        tree.register(
            f"{base}/default/setDrawStepPts",
            "Draw markers at trajectory step points.",
            [Param("flag", "bool", default="true", omittable=True)],
            set_draw_step_pts,
        )

        def set_step_pts_size(size):
            vis.trajectory_models[name].step_pts_size = size

        tree.register(
            f"{base}/default/setStepPtsSize",
            "Step point marker size in pixels.",
            [Param("size", "double", default="2", omittable=True)],
            set_step_pts_size,
        )

        def set_mapping(key, colour):
            model = vis.trajectory_models[name]
            if isinstance(model, DrawByCharge):
                try:
                    model.set_colour(int(float(key)), colour)
                except ValueError:
                    raise CommandError(f"charge must be numeric, got {key!r}")
            else:
                model.colour_map[key] = colour

        tree.register(
            f"{base}/set",
            "Map a charge sign or particle name to a colour.",
            [Param("key", "string"), Param("colour", "colour")],
            set_mapping,
        )

        def set_default_colour(colour):
            model = vis.trajectory_models[name]
            if isinstance(model, DrawByParticleID):
                model.default_colour = colour
            else:
                raise CommandError("setDefault applies to drawByParticleID models")

        tree.register(
            f"{base}/setDefault",
            "Fallback colour for unmapped particles.",
            [Param("colour", "colour")],
            set_default_colour,
        )

    def create_draw_by_charge(name):
        name = name or _unique_name("drawByCharge", vis.trajectory_models)
        if name in vis.trajectory_models:
            raise CommandError(f"trajectory model '{name}' already exists")
        vis.trajectory_models[name] = DrawByCharge(name=name)
        vis.active_trajectory_model = name
        _register_model_nodes(name)
        return f"trajectory model '{name}' created and selected"

    tree.register(
        f"{_MODELLING_BASE}/create/drawByCharge",
        "Colour trajectories by charge sign.",
        [Param("name", "string", default="", omittable=True)],
        create_draw_by_charge,
    )

    def create_draw_by_particle_id(name):
        name = name or _unique_name("drawByParticleID", vis.trajectory_models)
        if name in vis.trajectory_models:
            raise CommandError(f"trajectory model '{name}' already exists")
        vis.trajectory_models[name] = DrawByParticleID(name=name)
        vis.active_trajectory_model = name
        _register_model_nodes(name)
        return f"trajectory model '{name}' created and selected"

    tree.register(
        f"{_MODELLING_BASE}/create/drawByParticleID",
        "Colour trajectories by particle name.",
        [Param("name", "string", default="", omittable=True)],
        create_draw_by_particle_id,
    )

    def select_model(name):
        if name not in vis.trajectory_models:
            raise CommandError(f"no trajectory model named '{name}'")
        vis.active_trajectory_model = name

    tree.register(
        f"{_MODELLING_BASE}/select",
        "Make a trajectory model active.",
        [Param("name", "string")],
        select_model,
    )

    # --- trajectory filters ----------------------------------------------------

    def _register_filter_nodes(name: str):
        base = f"{_FILTERING_BASE}/{name}"

        def add_value(value):
            f = vis.trajectory_filters[name]
            if isinstance(f, ParticleFilter):
                f.names.add(value)
            elif isinstance(f, ChargeFilter):
                try:
                    f.charges.add(float(value))
                except ValueError:
                    raise CommandError(f"charge must be numeric, got {value!r}")
            else:
                raise CommandError(
                    "interval filters are configured with /set key min max"
                )

        tree.register(
            f"{base}/add",
            "Add an accepted value.",
            [Param("value", "string")],
            add_value,
        )

        def invert(flag):
            vis.trajectory_filters[name].invert = flag

        tree.register(
            f"{base}/invert",
            "Accept exactly what the filter would reject.",
            [Param("flag", "bool", default="true", omittable=True)],
            invert,
        )

        def set_interval(key, minimum, maximum):
            f = vis.trajectory_filters[name]
            if not isinstance(f, AttributeIntervalFilter):
                raise CommandError("/set applies to attribute filters")
            f.key = key
            f.minimum = minimum
            f.maximum = maximum

        tree.register(
            f"{base}/set",
            "Accept trajectories whose attribute lies in [min, max]"
            " (internal units: MeV, mm).",
            [
                Param("key", "string"),
                Param("min", "double"),
                Param("max", "double"),
            ],
            set_interval,
        )

    def _create_filter(kind, name, factory):
        name = name or _unique_name(kind, vis.trajectory_filters)
        if name in vis.trajectory_filters:
            raise CommandError(f"trajectory filter '{name}' already exists")
        vis.trajectory_filters[name] = factory()
        _register_filter_nodes(name)
        return f"trajectory filter '{name}' created"

    tree.register(
        f"{_FILTERING_BASE}/create/particleFilter",
        "Keep only listed particle species.",
        [Param("name", "string", default="", omittable=True)],
        lambda name: _create_filter("particleFilter", name, ParticleFilter),
    )

    tree.register(
        f"{_FILTERING_BASE}/create/chargeFilter",
        "Keep only listed charges.",
        [Param("name", "string", default="", omittable=True)],
        lambda name: _create_filter("chargeFilter", name, ChargeFilter),
    )

    tree.register(
        f"{_FILTERING_BASE}/create/attributeFilter",
        "Keep trajectories with an attribute inside an interval.",
        [Param("name", "string", default="", omittable=True)],
        lambda name: _create_filter(
            "attributeFilter", name, lambda: AttributeIntervalFilter(key="IMag")
        ),
    )

    # --- control and run ----------------------------------------------------

    tree.register(
        "/control/execute",
        "Execute commands from a macro file.",
        [Param("macro", "string")],
        lambda macro: session.execute_macro(macro),
    )

    def beam_on(n):
        if n < 0:
            raise CommandError("event count must be >= 0")
        events = vis.beam_on(n)
        return f"run complete: {len(events)} event(s)"

    tree.register(
        "/run/beamOn",
        "Generate and process toy events.",
        [Param("n", "int", default="1", omittable=True)],
        beam_on,
    )


def _set_atree_verbosity(vis, verbosity: int):
    if verbosity < 0:
        raise CommandError("verbosity must be >= 0")
    vis.atree_verbosity = verbosity


def _path_text(path) -> str:
    return "".join(f"/{name}:{copy}" for name, copy in path)
