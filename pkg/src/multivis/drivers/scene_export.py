"""Structured scene exporter: a full 3D snapshot with attribute data.

The document carries a small type hierarchy (geometry; event with
trajectory and hit children), pre-tessellated meshes for every touchable,
trajectory polylines with their styles, hits, and the complete
AttDef/AttValue tables so a browser can offer picking and filtering without
any geometry code. Serialisation is canonical JSON (sorted keys, tight
separators), which makes write -> read -> write byte-stable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from ..attributes import (
    EVENT_ATTDEFS,
    HIT_ATTDEFS,
    TOUCHABLE_ATTDEFS,
    TRAJECTORY_ATTDEFS,
    AttDef,
)
from ..errors import VisError
from ..geometry import touchable_attributes
from ..view import ViewParameters
from .vector import solid_mesh

SCHEMA = "multivis-scene/1"


def _attdefs_obj(defs: dict[str, AttDef]) -> dict:
    return {
        key: {
            "description": d.description,
            "kind": d.value_kind,
            "dimensioned": d.dimensioned,
        }
        for key, d in defs.items()
    }


def _type_table() -> dict:
    return {
        "geometry": {"parent": None, "attdefs": _attdefs_obj(TOUCHABLE_ATTDEFS)},
        "event": {"parent": None, "attdefs": _attdefs_obj(EVENT_ATTDEFS)},
        "trajectory": {"parent": "event", "attdefs": _attdefs_obj(TRAJECTORY_ATTDEFS)},
        "hit": {"parent": "event", "attdefs": _attdefs_obj(HIT_ATTDEFS)},
    }


def _view_obj(view: ViewParameters) -> dict:
    return {
        "viewpoint": [float(v) for v in view.viewpoint],
        "up": [float(v) for v in view.up],
        "light_direction": [float(v) for v in view.light_direction],
        "zoom": view.zoom,
        "style": view.style,
        "auxiliary_edges": view.auxiliary_edges,
        "segments_per_circle": view.segments_per_circle,
        "projection": view.projection,
    }


def _colour_obj(colour) -> list[float]:
    return [colour.r, colour.g, colour.b, colour.a]


@dataclass
class SceneDocument:
    data: dict

    @property
    def schema(self) -> str:
        return self.data.get("schema", "")

    @property
    def instances(self) -> list[dict]:
        return self.data["instances"]

    def instances_of(self, type_name: str) -> list[dict]:
        return [i for i in self.instances if i["type"] == type_name]

    def attdefs_for(self, type_name: str) -> dict:
        """Own attdefs merged with ancestors'."""
        types = self.data["types"]
        merged: dict = {}
        name: str | None = type_name
        while name is not None:
            entry = types.get(name)
            if entry is None:
                raise VisError(f"scene document: unknown type '{name}'")
            merged.update(entry.get("attdefs", {}))
            name = entry.get("parent")
        return merged

    def validate(self) -> None:
        if self.schema != SCHEMA:
            raise VisError(
                f"unsupported scene schema {self.schema!r} (expected {SCHEMA!r})"
            )
        for inst in self.instances:
            defs = self.attdefs_for(inst["type"])
            for key in inst.get("attvalues", {}):
                if key not in defs:
                    raise VisError(
                        f"instance {inst.get('name', inst['type'])}:"
                        f" attvalue key '{key}' does not resolve"
                    )

    def to_json(self) -> str:
        return json.dumps(self.data, sort_keys=True, separators=(",", ":")) + "\n"


def build_document(
    collector,
    view: ViewParameters,
    generator: str = "multivis 0.1.0",
    timestamp: str = "",
) -> SceneDocument:
    """Assemble the export document from a CollectingSink traversal."""
    instances: list[dict] = []
    for solid, transform, vis, touchable in collector.solids:
        mesh = solid_mesh(solid, view.segments_per_circle)
        world = transform.apply(mesh.vertices)
        if touchable is not None:
            attvalues = {a.key: a.value for a in touchable_attributes(touchable)}
            name = touchable.path_str
        else:
            attvalues = {}
            name = solid.name
        instances.append(
            {
                "type": "geometry",
                "name": name,
                "colour": _colour_obj(vis.colour),
                "visible": vis.visible,
                "forced_style": vis.forced_style,
                "mesh": {
                    "vertices": [[float(v) for v in row] for row in world],
                    "faces": [list(face) for face in mesh.faces],
                    "edges": [[e.a, e.b, e.kind] for e in mesh.edges],
                },
                "attvalues": attvalues,
            }
        )
    for trajectory, style, attvalues in collector.trajectories:
        instances.append(
            {
                "type": "trajectory",
                "name": f"track {trajectory.track_id} ({trajectory.particle_name})",
                "colour": _colour_obj(style.colour),
                "draw_line": style.draw_line,
                "draw_points": style.draw_points,
                "point_size": style.point_size,
                "points": [
                    [float(p.position[0]), float(p.position[1]), float(p.position[2])]
                    for p in trajectory.points
                ],
                "attvalues": {a.key: a.value for a in attvalues},
            }
        )
    for hit, style, attvalues in collector.hits:
        instances.append(
            {
                "type": "hit",
                "name": f"hit ({hit.detector_name})",
                "colour": _colour_obj(style.colour),
                "size": style.point_size,
                "position": [float(v) for v in hit.position],
                "attvalues": {a.key: a.value for a in attvalues},
            }
        )
    doc = SceneDocument(
        {
            "schema": SCHEMA,
            "header": {
                "generator": generator,
                "timestamp": timestamp,
                "view": _view_obj(view),
            },
            "types": _type_table(),
            "instances": instances,
        }
    )
    doc.validate()
    return doc


def write_scene_document(doc: SceneDocument, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(doc.to_json())


def read_scene_document(path) -> SceneDocument:
    """Load and validate; unknown schema versions are rejected readably."""
    with open(path, "r", encoding="utf-8") as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as exc:
            raise VisError(f"{path}: not a scene document ({exc.msg})") from None
    doc = SceneDocument(data)
    doc.validate()
    return doc
