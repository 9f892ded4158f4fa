"""ASCII tree pseudo-driver: dumps the geometry hierarchy with optional
volume, density and mass accounting per placement."""

from __future__ import annotations

from dataclasses import dataclass, field

from .. import units
from ..errors import SceneError
from ..geometry import GeometryModel, Touchable
from ..solids import Solid, analytic_volume, solid_kind
from .base import SceneSink


@dataclass
class _Node:
    touchable: Touchable
    own_volume: float = 0.0
    children: list["_Node"] = field(default_factory=list)
    ds_volume: float = 0.0
    mass_g: float = 0.0
    di_mass_g: float = 0.0


def tree_line(
    detail: int,
    name: str,
    copy_no: int,
    logical_name: str,
    solid: Solid,
    material,
    own_volume: float,
    ds_volume: float,
    mass_g: float,
) -> str:
    """One volume line at the given detail level (no indentation)."""
    line = f'"{name}":{copy_no}'
    if detail >= 1:
        line += f' / "{logical_name}"'
    if detail >= 2:
        line += f' / "{solid.name}"({solid_kind(solid)})'
    if detail >= 3:
        line += (
            f", {units.fmt(own_volume, 'volume')},"
            f" {units.fmt(material.density_g_cm3, 'density')} ({material.name})"
        )
    if detail >= 5:
        line += f", {units.fmt(ds_volume, 'volume')}, {units.fmt(mass_g, 'mass')}"
    return line


class AsciiTreeSink(SceneSink):
    """Builds the placement tree from the touchable stream and renders it."""

    def __init__(self, verbosity: int = 1, depth_limit: int | None = None):
        self.verbosity = verbosity
        self.depth_limit = depth_limit
        self.roots: list[_Node] = []
        self._by_path: dict[tuple, _Node] = {}

    def pre_add_solid(self, transform, vis, touchable=None):
        if touchable is None:
            raise SceneError("ASCII tree needs touchable context on pre_add_solid")
        node = _Node(touchable, analytic_volume(touchable.solid))
        self._by_path[touchable.path] = node
        parent = self._by_path.get(touchable.path[:-1])
        if parent is None:
            self.roots.append(node)
        else:
            parent.children.append(node)

    def _account(self, node: _Node) -> None:
        for child in node.children:
            self._account(child)
        daughters = sum(c.own_volume for c in node.children)
        node.ds_volume = node.own_volume - daughters
        node.mass_g = node.touchable.material.density_g_cm3 * node.ds_volume / 1000.0
        node.di_mass_g = node.mass_g + sum(c.di_mass_g for c in node.children)

    def render(self) -> str:
        detail = self.verbosity % 10
        print_all = self.verbosity >= 10
        lines = [
            f"# Geometry tree, verbosity {self.verbosity}"
            f" (detail {detail}, {'all placements' if print_all else 'collapsed'})",
        ]
        seen_logicals: set[str] = set()

        def emit(node: _Node, siblings_same_name: int) -> None:
            t = node.touchable
            line = "  " * t.depth + tree_line(
                detail,
                t.name,
                t.copy_no,
                t.logical_name,
                t.solid,
                t.material,
                node.own_volume,
                node.ds_volume,
                node.mass_g,
            )
            recurse = True
            if not print_all:
                if siblings_same_name > 1:
                    line += f" ({siblings_same_name} replicas)"
                if t.logical_name in seen_logicals and node.children:
                    line += " (repeated)"
                    recurse = False
            seen_logicals.add(t.logical_name)
            lines.append(line)
            if not recurse:
                return
            groups: dict[str, int] = {}
            for c in node.children:
                groups[c.touchable.name] = groups.get(c.touchable.name, 0) + 1
            emitted: set[str] = set()
            for c in node.children:
                n_same = groups[c.touchable.name]
                if not print_all and n_same > 1:
                    if c.touchable.name in emitted:
                        continue
                    emitted.add(c.touchable.name)
                emit(c, n_same)

        for root in self.roots:
            self._account(root)
            emit(root, 1)
        if detail >= 4:
            depth_txt = (
                "unlimited depth"
                if self.depth_limit is None
                else f"depth {self.depth_limit}"
            )
            for root in self.roots:
                t = root.touchable
                lines.append(
                    f'Overall volume of "{t.name}":{t.copy_no} is'
                    f" {units.fmt(root.own_volume, 'volume')} and the"
                    f" daughter-included mass to {depth_txt} is"
                    f" {units.fmt(root.di_mass_g, 'mass')}"
                )
        return "\n".join(lines) + "\n"


def ascii_tree_render(
    geometry: GeometryModel, verbosity: int, depth_limit: int | None = None
) -> str:
    """Render the world hierarchy directly, outside any scene."""
    sink = AsciiTreeSink(verbosity, depth_limit)
    for touchable in geometry.descend(depth_limit=depth_limit):
        sink.pre_add_solid(touchable.world_transform, touchable.vis, touchable)
        sink.add_solid(touchable.solid)
        sink.post_add_solid()
    return sink.render()
