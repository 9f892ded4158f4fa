"""Volume hierarchy: materials, logical/physical volumes, touchable rollout,
vis-attribute editing, attribute values and mass accounting."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from . import units
from .attributes import (
    DEFAULT_VIS,
    TOUCHABLE_ATTDEFS,
    AttValue,
    VisAttributes,
    VisPatch,
)
from .errors import GeometryError
from .solids import Aabb, Solid, analytic_volume, bounding_box, describe, solid_kind
from .transform import Transform

MAX_DEPTH = 64
_FIT_SLACK = 1e-6  # mm


@dataclass
class Material:
    name: str
    density_g_cm3: float = 0.0
    state: str = "undefined"  # undefined | solid | liquid | gas
    radiation_length_mm: Optional[float] = None

    def __post_init__(self):
        if self.state not in ("undefined", "solid", "liquid", "gas"):
            raise GeometryError(f"material {self.name}: unknown state {self.state!r}")
        if self.state != "undefined" and not self.density_g_cm3 > 0.0:
            raise GeometryError(f"material {self.name}: density must be > 0")


@dataclass(frozen=True)
class Replica:
    """N identical slices of the mother along one axis."""

    axis: str  # x | y | z
    count: int
    width: float  # mm per slice

    def __post_init__(self):
        if self.axis not in ("x", "y", "z"):
            raise GeometryError(f"replica axis must be x, y or z, not {self.axis!r}")
        if self.count < 1:
            raise GeometryError("replica count must be >= 1")
        if not self.width > 0.0:
            raise GeometryError("replica width must be > 0")

    def offsets(self) -> list[float]:
        return [(i - (self.count - 1) / 2.0) * self.width for i in range(self.count)]


@dataclass
class LogicalVolume:
    name: str
    solid: Solid
    material: Material
    vis: VisAttributes = DEFAULT_VIS
    daughters: list["PhysicalVolume"] = field(default_factory=list)

    def place(
        self,
        name: str,
        logical: "LogicalVolume",
        transform: Transform | None = None,
        replica: Replica | None = None,
    ) -> "PhysicalVolume":
        """Place a daughter inside this volume, with fit and cycle checks."""
        pv = PhysicalVolume(name, logical, transform or Transform.identity(), replica)
        if _contains_logical(logical, self):
            raise GeometryError(
                f"placing {logical.name} inside {self.name} would create a cycle"
            )
        mother_box = bounding_box(self.solid)
        child_box = bounding_box(logical.solid)
        for tr in pv.placement_transforms():
            if not mother_box.contains_box(child_box.transformed(tr), _FIT_SLACK):
                raise GeometryError(
                    f"daughter {name} does not fit inside {self.name}"
                )
        self.daughters.append(pv)
        return pv


def _contains_logical(lv: LogicalVolume, target: LogicalVolume, depth: int = 0) -> bool:
    if depth > MAX_DEPTH:
        raise GeometryError("geometry deeper than 64 levels; cycle suspected")
    if lv is target:
        return True
    return any(_contains_logical(d.logical, target, depth + 1) for d in lv.daughters)


@dataclass
class PhysicalVolume:
    name: str
    logical: LogicalVolume
    transform: Transform = field(default_factory=Transform.identity)
    replica: Replica | None = None

    @property
    def placement_kind(self) -> str:
        return "replica" if self.replica else "single"

    def copies(self) -> list[tuple[int, Transform]]:
        """(copy number, transform in mother frame) for every placement."""
        if self.replica is None:
            return [(0, self.transform)]
        axis_index = "xyz".index(self.replica.axis)
        out = []
        for copy_no, offset in enumerate(self.replica.offsets()):
            shift = np.zeros(3)
            shift[axis_index] = offset
            out.append(
                (copy_no, Transform(np.eye(3), shift).compose(self.transform))
            )
        return out

    def placement_transforms(self) -> list[Transform]:
        return [tr for _, tr in self.copies()]


@dataclass(frozen=True, eq=False)
class Touchable:
    """One concrete placement, identified by its (name, copy number) path."""

    path: tuple[tuple[str, int], ...]
    world_transform: Transform
    solid: Solid
    vis: VisAttributes
    depth: int
    logical_name: str
    material: Material

    @property
    def name(self) -> str:
        return self.path[-1][0]

    @property
    def copy_no(self) -> int:
        return self.path[-1][1]

    @property
    def path_str(self) -> str:
        return "".join(f"/{name}:{copy}" for name, copy in self.path)


PathSelector = tuple[tuple[str, int], ...]


def descend(
    world: PhysicalVolume,
    depth_limit: int | None = None,
    cull_invisible: bool = False,
    overrides: dict[PathSelector, VisPatch] | None = None,
    base_transform: Transform | None = None,
) -> list[Touchable]:
    """Roll the hierarchy out into touchables, depth-first pre-order.

    Culling drops touchables that are individually invisible and the whole
    subtree below a daughters_invisible volume; an invisible volume's own
    daughters are still visited.
    """
    overrides = overrides or {}
    out: list[Touchable] = []

    def visit(pv: PhysicalVolume, path, transform, depth):
        if depth > MAX_DEPTH:
            raise GeometryError("descent deeper than 64 levels; cycle suspected")
        for copy_no, local in pv.copies():
            node_path = path + ((pv.name, copy_no),)
            world_tr = transform.compose(local)
            vis = pv.logical.vis
            patch = overrides.get(node_path)
            if patch is not None:
                vis = patch.apply(vis)
            if not (cull_invisible and not vis.visible):
                out.append(
                    Touchable(
                        path=node_path,
                        world_transform=world_tr,
                        solid=pv.logical.solid,
                        vis=vis,
                        depth=depth,
                        logical_name=pv.logical.name,
                        material=pv.logical.material,
                    )
                )
            if depth_limit is not None and depth >= depth_limit:
                continue
            if cull_invisible and vis.daughters_invisible:
                continue
            for daughter in pv.logical.daughters:
                visit(daughter, node_path, world_tr, depth + 1)

    visit(world, (), base_transform or Transform.identity(), 0)
    return out


def _rotation_text(rot: np.ndarray) -> str:
    rows = []
    for r in range(3):
        rows.append("[" + " ".join(f"{rot[r, c]:.6g}" for c in range(3)) + "]")
    return "".join(rows)


def touchable_attributes(t: Touchable) -> list[AttValue]:
    """The full touchable attribute set, rendered with best units."""
    mat = t.material
    radlen = (
        units.fmt(mat.radiation_length_mm, "length")
        if mat.radiation_length_mm is not None
        else "n/a"
    )
    values = [
        AttValue("Density", units.fmt(mat.density_g_cm3, "density")),
        AttValue("DmpSol", describe(t.solid)),
        AttValue("EType", solid_kind(t.solid)),
        AttValue("LVol", t.logical_name),
        AttValue("Material", mat.name),
        AttValue("PVPath", t.path_str),
        AttValue("Radlen", radlen),
        AttValue("Region", "n/a"),
        AttValue("RootRegion", "1" if t.depth == 0 else "0"),
        AttValue("Solid", t.solid.name),
        AttValue("State", mat.state),
        AttValue(
            "Trans",
            _rotation_text(t.world_transform.rotation)
            + " + "
            + units.fmt_vector(t.world_transform.translation, "length"),
        ),
    ]
    assert set(v.key for v in values) == set(TOUCHABLE_ATTDEFS)
    return values


@dataclass
class MassNode:
    """Mass accounting for one placement (one line of the tree)."""

    name: str
    copy_no: int
    logical_name: str
    solid: Solid
    material: Material
    depth: int
    multiplicity: int  # replica copies represented by this node
    own_volume: float  # mm3, one copy
    ds_volume: float  # mm3, daughter-subtracted, one copy
    mass_g: float  # one copy
    di_mass_g: float  # daughter-included, one copy
    children: list["MassNode"] = field(default_factory=list)

    @property
    def density_g_cm3(self) -> float:
        return self.material.density_g_cm3


def compute_masses(world: PhysicalVolume, depth_limit: int | None = None) -> MassNode:
    """Volumes and masses per node; replica daughters count `count` times."""

    def build(pv: PhysicalVolume, depth: int) -> MassNode:
        own = analytic_volume(pv.logical.solid)
        children: list[MassNode] = []
        if depth_limit is None or depth < depth_limit:
            children = [build(d, depth + 1) for d in pv.logical.daughters]
        daughters_volume = sum(c.own_volume * c.multiplicity for c in children)
        ds = own - daughters_volume
        if ds < -1e-6:
            raise GeometryError(
                f"{pv.name}: daughters exceed mother volume ({ds:.6g} mm3);"
                " overlapping placements"
            )
        # g/cm3 * mm3 -> g
        mass = pv.logical.material.density_g_cm3 * ds / 1000.0
        di = mass + sum(c.di_mass_g * c.multiplicity for c in children)
        return MassNode(
            name=pv.name,
            copy_no=0,
            logical_name=pv.logical.name,
            solid=pv.logical.solid,
            material=pv.logical.material,
            depth=depth,
            multiplicity=pv.replica.count if pv.replica else 1,
            own_volume=own,
            ds_volume=ds,
            mass_g=mass,
            di_mass_g=di,
            children=children,
        )

    return build(world, 0)


class GeometryModel:
    """A world hierarchy plus the touchable-override table edited by commands."""

    def __init__(self, world: PhysicalVolume):
        self.world = world
        self.touchable_overrides: dict[PathSelector, VisPatch] = {}

    def descend(
        self,
        depth_limit: int | None = None,
        cull_invisible: bool = False,
        root: PhysicalVolume | None = None,
        base_transform: Transform | None = None,
    ) -> list[Touchable]:
        return descend(
            root or self.world,
            depth_limit,
            cull_invisible,
            self.touchable_overrides,
            base_transform,
        )

    def logical_volumes(self) -> dict[str, LogicalVolume]:
        found: dict[str, LogicalVolume] = {}

        def walk(lv: LogicalVolume):
            if lv.name in found:
                return
            found[lv.name] = lv
            for d in lv.daughters:
                walk(d.logical)

        walk(self.world.logical)
        return found

    def find_physical(self, name: str) -> tuple[PhysicalVolume, Transform] | None:
        """First placement with this name and its accumulated mother transform."""

        def walk(pv: PhysicalVolume, transform: Transform, depth: int):
            if depth > MAX_DEPTH:
                raise GeometryError("descent deeper than 64 levels; cycle suspected")
            if pv.name == name:
                return pv, transform
            for copy_no, local in pv.copies():
                world_tr = transform.compose(local)
                for d in pv.logical.daughters:
                    got = walk(d, world_tr, depth + 1)
                    if got:
                        return got
            return None

        return walk(self.world, Transform.identity(), 0)

    def set_logical_vis(self, volume_name: str, depth: int, patch: VisPatch) -> int:
        """Patch a logical volume's attributes; depth > 0 descends to daughters."""
        lv = self.logical_volumes().get(volume_name)
        if lv is None:
            return 0

        def apply(node: LogicalVolume, remaining: int):
            node.vis = patch.apply(node.vis)
            if remaining > 0:
                for d in node.daughters:
                    apply(d.logical, remaining - 1)

        apply(lv, depth)
        return 1

    def set_touchable_vis(self, selector: Iterable, patch: VisPatch) -> int:
        """Record an override for one placement; 0 when the path matches nothing."""
        path = tuple((str(n), int(c)) for n, c in selector)
        if not any(t.path == path for t in self.descend()):
            return 0
        existing = self.touchable_overrides.get(path)
        if existing is not None:
            merged = {
                k: (v if v is not None else getattr(existing, k))
                for k, v in patch.__dict__.items()
            }
            patch = VisPatch(**merged)
        self.touchable_overrides[path] = patch
        return 1

    def compute_masses(self, depth_limit: int | None = None) -> MassNode:
        return compute_masses(self.world, depth_limit)

    def extent(self) -> Aabb:
        return bounding_box(self.world.logical.solid).transformed(self.world.transform)
