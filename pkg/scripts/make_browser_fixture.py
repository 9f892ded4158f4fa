"""Regenerate the browser test fixture: the demo detector plus 10 toy events."""

from pathlib import Path

from multivis.drivers import CollectingSink, ProtocolCheckerSink, build_document
from multivis.events import generate_toy_event
from multivis.fixtures import build_b1
from multivis.scene import (
    HitsModel,
    PhysicalVolumeModel,
    Scene,
    TrajectoriesModel,
    TraversalContext,
    traverse,
)
from multivis.view import ViewParameters

OUT = Path(__file__).resolve().parents[1] / "frontend/tests/fixtures/b1-events.scene.json"


def main():
    scene = Scene("b1")
    scene.add_model(PhysicalVolumeModel(build_b1()))
    scene.add_model(TrajectoriesModel())
    scene.add_model(HitsModel())
    events = tuple(generate_toy_event(i, 6, 1.0) for i in range(10))
    view = ViewParameters()
    view.style = "surface"
    ctx = TraversalContext(view=view, events=events)
    collector = CollectingSink()
    traverse(scene, ProtocolCheckerSink(collector), ctx)
    doc = build_document(collector, view, timestamp="2026-01-01T00:00:00")
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(doc.to_json(), encoding="utf-8", newline="\n")
    print(f"wrote {OUT} ({OUT.stat().st_size} bytes)")


if __name__ == "__main__":
    main()
