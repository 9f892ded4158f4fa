"""Driver layer: the sink protocol, utility sinks, and four concrete drivers."""

from .ascii_tree import AsciiTreeSink, ascii_tree_render, tree_line
from .base import (
    CollectingSink,
    CountingSink,
    ProtocolCheckerSink,
    RecordingSink,
    SceneSink,
    TeeSink,
)
from .raytracer import raytrace, scene_extent, write_png, write_ppm
from .scene_export import (
    SCHEMA,
    SceneDocument,
    build_document,
    read_scene_document,
    write_scene_document,
)
from .systems import (
    AsciiTreeSystem,
    GraphicsSystem,
    RayTracerSystem,
    RenderResult,
    SceneExportSystem,
    SvgSystem,
    SystemCapabilities,
    builtin_systems,
    cull_collected,
)
from .vector import Painted, paint, solid_mesh, to_eps, to_svg

__all__ = [
    "AsciiTreeSink",
    "AsciiTreeSystem",
    "CollectingSink",
    "CountingSink",
    "GraphicsSystem",
    "Painted",
    "ProtocolCheckerSink",
    "RayTracerSystem",
    "RecordingSink",
    "RenderResult",
    "SCHEMA",
    "SceneDocument",
    "SceneExportSystem",
    "SceneSink",
    "SvgSystem",
    "SystemCapabilities",
    "TeeSink",
    "ascii_tree_render",
    "build_document",
    "builtin_systems",
    "cull_collected",
    "paint",
    "raytrace",
    "read_scene_document",
    "scene_extent",
    "solid_mesh",
    "to_eps",
    "to_svg",
    "tree_line",
    "write_png",
    "write_ppm",
    "write_scene_document",
]
