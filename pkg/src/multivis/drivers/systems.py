"""Concrete graphics systems: the factory objects the kernel registers."""

from __future__ import annotations

from dataclasses import dataclass

from ..scene import traverse
from .ascii_tree import AsciiTreeSink
from .base import CollectingSink, ProtocolCheckerSink
from .raytracer import raytrace, scene_extent
from .scene_export import build_document
from .vector import paint, to_eps, to_svg


@dataclass(frozen=True)
class SystemCapabilities:
    retained_store: bool = False
    renders_2d: bool = True
    picking_attvalues: bool = False
    geometry_only: bool = False


@dataclass(frozen=True)
class RenderResult:
    ext: str
    text: str | None = None
    data: bytes | None = None


class GraphicsSystem:
    nickname = "?"
    capabilities = SystemCapabilities()
    default_style = "wireframe"

    def render(self, manager, viewer, scene, ctx) -> RenderResult:
        raise NotImplementedError


def _collect(scene, ctx) -> CollectingSink:
    collector = CollectingSink()
    traverse(scene, ProtocolCheckerSink(collector), ctx)
    return collector


class AsciiTreeSystem(GraphicsSystem):
    nickname = "ATree"
    capabilities = SystemCapabilities(renders_2d=False)

    def render(self, manager, viewer, scene, ctx) -> RenderResult:
        sink = AsciiTreeSink(manager.atree_verbosity)
        traverse(scene, ProtocolCheckerSink(sink), ctx)
        return RenderResult(ext="txt", text=sink.render())


class SvgSystem(GraphicsSystem):
    nickname = "SVG"
    capabilities = SystemCapabilities()

    def render(self, manager, viewer, scene, ctx) -> RenderResult:
        collector = _collect(scene, ctx)
        centre, radius = scene.extent_sphere()
        painted = paint(
            collector, centre, radius, ctx.view,
            ctx.view.window_width, ctx.view.window_height,
        )
        return RenderResult(ext="svg", text=to_svg(painted))


class RayTracerSystem(GraphicsSystem):
    nickname = "RayTracer"
    capabilities = SystemCapabilities(renders_2d=False, geometry_only=True)
    default_style = "surface"
    threads = 4

    def render(self, manager, viewer, scene, ctx) -> RenderResult:
        collector = _collect(scene, ctx)
        touchables = cull_collected(collector)
        centre, radius = scene.extent_sphere()
        data = raytrace(
            touchables,
            ctx.view,
            ctx.view.window_width,
            ctx.view.window_height,
            threads=self.threads,
            extent=(centre, radius),
        )
        return RenderResult(ext="ppm", data=data)


class SceneExportSystem(GraphicsSystem):
    nickname = "SceneExport"
    capabilities = SystemCapabilities(retained_store=True, picking_attvalues=True)
    default_style = "surface"

    def render(self, manager, viewer, scene, ctx) -> RenderResult:
        collector = _collect(scene, ctx)
        doc = build_document(
            collector, ctx.view, timestamp=manager.clock()
        )
        return RenderResult(ext="scene.json", text=doc.to_json())


def cull_collected(collector: CollectingSink):
    """Apply culling rules to collected touchables: invisible placements go,
    and so does everything below a daughters_invisible volume."""
    blocked: set[tuple] = set()
    for _solid, _tr, vis, touchable in collector.solids:
        if touchable is not None and vis.daughters_invisible:
            blocked.add(touchable.path)
    out = []
    for _solid, _tr, vis, touchable in collector.solids:
        if touchable is None:
            continue
        if not vis.visible:
            continue
        if any(touchable.path[: len(b)] == b for b in blocked
               if len(b) < len(touchable.path)):
            continue
        out.append(touchable)
    return out


def builtin_systems() -> list[GraphicsSystem]:
    return [AsciiTreeSystem(), SvgSystem(), RayTracerSystem(), SceneExportSystem()]


__all__ = [
    "AsciiTreeSystem",
    "GraphicsSystem",
    "RayTracerSystem",
    "RenderResult",
    "SceneExportSystem",
    "SvgSystem",
    "SystemCapabilities",
    "builtin_systems",
    "cull_collected",
]
