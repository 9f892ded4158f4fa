"""Declarative geometry files: one JSON document with materials, solids and
placements. Lengths are mm, angles deg. Schema documented in docs/geometry.md."""

from __future__ import annotations

import json
import math

from .attributes import NAMED_COLOURS, Colour, VisAttributes
from .errors import GeometryError
from .geometry import GeometryModel, LogicalVolume, Material, PhysicalVolume, Replica
from .solids import Box, Cone, Solid, Sphere, Subtraction, Trd, Tube
from .transform import Transform

_TWO_PI_DEG = 360.0


def _need(obj: dict, key: str, where: str):
    if key not in obj:
        raise GeometryError(f"{where}: missing '{key}'")
    return obj[key]


def _rad(deg: float) -> float:
    return math.radians(deg)


def _build_solid(spec: dict, solids: dict[str, Solid]) -> Solid:
    name = _need(spec, "name", "solid")
    kind = _need(spec, "type", f"solid {name}").lower()
    if kind == "box":
        return Box(name, spec["half_x"], spec["half_y"], spec["half_z"])
    if kind == "tube":
        return Tube(
            name,
            spec.get("r_min", 0.0),
            spec["r_max"],
            spec["half_z"],
            _rad(spec.get("phi_start_deg", 0.0)),
            _rad(spec.get("delta_phi_deg", _TWO_PI_DEG)),
        )
    if kind == "cone":
        return Cone(
            name,
            spec.get("r_min1", 0.0),
            spec["r_max1"],
            spec.get("r_min2", 0.0),
            spec["r_max2"],
            spec["half_z"],
            _rad(spec.get("phi_start_deg", 0.0)),
            _rad(spec.get("delta_phi_deg", _TWO_PI_DEG)),
        )
    if kind == "trd":
        return Trd(
            name, spec["half_x1"], spec["half_x2"],
            spec["half_y1"], spec["half_y2"], spec["half_z"],
        )
    if kind == "sphere":
        return Sphere(
            name,
            spec.get("r_min", 0.0),
            spec["r_max"],
            _rad(spec.get("phi_start_deg", 0.0)),
            _rad(spec.get("delta_phi_deg", _TWO_PI_DEG)),
            _rad(spec.get("theta_start_deg", 0.0)),
            _rad(spec.get("delta_theta_deg", 180.0)),
        )
    if kind == "subtraction":
        left = solids.get(_need(spec, "left", f"solid {name}"))
        right = solids.get(_need(spec, "right", f"solid {name}"))
        if left is None or right is None:
            raise GeometryError(f"solid {name}: operands must be defined first")
        return Subtraction(name, left, right, _transform_of(spec))
    raise GeometryError(f"solid {name}: unknown type '{kind}'")


def _transform_of(spec: dict) -> Transform:
    tr = Transform.identity()
    for axis, angle_deg in spec.get("rotations", []):
        tr = Transform.rotate_axis(axis, _rad(angle_deg)).compose(tr)
    translation = spec.get("translation", [0.0, 0.0, 0.0])
    return Transform.translate(*translation).compose(tr)


def _vis_of(spec: dict) -> VisAttributes:
    vis = spec.get("vis")
    if not vis:
        return VisAttributes()
    colour = vis.get("colour", "white")
    if isinstance(colour, str):
        if colour not in NAMED_COLOURS:
            raise GeometryError(f"unknown colour name '{colour}'")
        col = NAMED_COLOURS[colour]
    else:
        col = Colour(*colour)
    return VisAttributes(
        visible=vis.get("visible", True),
        colour=col,
        line_width=vis.get("line_width", 1.0),
        line_style=vis.get("line_style", "solid"),
        forced_style=vis.get("forced_style", "none"),
        daughters_invisible=vis.get("daughters_invisible", False),
    )


def load_geometry(path) -> GeometryModel:
    """Build a GeometryModel from a JSON description file."""
    try:
        f = open(path, "r", encoding="utf-8")
    except OSError as exc:
        raise GeometryError(f"cannot read geometry file: {exc}") from None
    with f:
        try:
            doc = json.load(f)
        except json.JSONDecodeError as exc:
            raise GeometryError(f"{path}: invalid JSON ({exc.msg})") from None

    materials: dict[str, Material] = {}
    for name, spec in _need(doc, "materials", "document").items():
        unit = spec.get("density_unit", "g/cm3")
        scale = {"g/cm3": 1.0, "mg/cm3": 1e-3, "kg/m3": 1e-3}.get(unit)
        if scale is None:
            raise GeometryError(f"material {name}: unknown density unit '{unit}'")
        materials[name] = Material(
            name,
            density_g_cm3=_need(spec, "density", f"material {name}") * scale,
            state=spec.get("state", "undefined"),
            radiation_length_mm=spec.get("radiation_length_mm"),
        )

    solids: dict[str, Solid] = {}
    for spec in _need(doc, "solids", "document"):
        solid = _build_solid(spec, solids)
        solids[solid.name] = solid

    logicals: dict[str, LogicalVolume] = {}
    for spec in _need(doc, "volumes", "document"):
        name = _need(spec, "name", "volume")
        solid = solids.get(_need(spec, "solid", f"volume {name}"))
        material = materials.get(_need(spec, "material", f"volume {name}"))
        if solid is None:
            raise GeometryError(f"volume {name}: unknown solid")
        if material is None:
            raise GeometryError(f"volume {name}: unknown material")
        logicals[name] = LogicalVolume(name, solid, material, _vis_of(spec))

    world_pv: PhysicalVolume | None = None
    for spec in _need(doc, "placements", "document"):
        name = _need(spec, "name", "placement")
        volume = logicals.get(_need(spec, "volume", f"placement {name}"))
        if volume is None:
            raise GeometryError(f"placement {name}: unknown volume")
        mother_name = spec.get("mother")
        replica_spec = spec.get("replica")
        replica = (
            Replica(replica_spec["axis"], replica_spec["count"], replica_spec["width"])
            if replica_spec
            else None
        )
        if mother_name is None:
            if world_pv is not None:
                raise GeometryError("more than one world placement")
            world_pv = PhysicalVolume(name, volume, _transform_of(spec), replica)
        else:
            mother = logicals.get(mother_name)
            if mother is None:
                raise GeometryError(f"placement {name}: unknown mother '{mother_name}'")
            mother.place(name, volume, _transform_of(spec), replica)
    if world_pv is None:
        raise GeometryError("no world placement (one placement must omit 'mother')")
    return GeometryModel(world_pv)
