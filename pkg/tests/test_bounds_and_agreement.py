"""Bounding boxes, the explicit radiation-length path, and cross-driver
agreement between the ray tracer and the vector writer."""

import math

import numpy as np
import pytest

from multivis.attributes import AttValue, Colour, VisAttributes, VisPatch
from multivis.drivers import CollectingSink, ProtocolCheckerSink, paint, raytrace, to_svg
from multivis.geometry import (
    GeometryModel,
    LogicalVolume,
    Material,
    PhysicalVolume,
    touchable_attributes,
)
from multivis.scene import PhysicalVolumeModel, Scene, TraversalContext, traverse
from multivis.solids import Box, Sphere, Subtraction, Tube, bounding_box
from multivis.transform import Transform
from multivis.view import ViewParameters


def test_bounding_box_examples():
    b = bounding_box(Box("b", 1, 2, 3))
    assert np.allclose(b.lo, [-1, -2, -3]) and np.allclose(b.hi, [1, 2, 3])
    t = bounding_box(Tube("t", 0, 2, 5))
    assert np.allclose(t.lo, [-2, -2, -5]) and np.allclose(t.hi, [2, 2, 5])
    sub = Subtraction(
        "s", Box("A", 1, 1, 1), Box("B", 5, 5, 5), Transform.translate(1, 0, 0)
    )
    a = bounding_box(sub)
    assert np.allclose(a.lo, [-1, -1, -1]) and np.allclose(a.hi, [1, 1, 1])


def test_bounding_box_tight_for_wedges():
    quarter = Tube("q", 0, 2, 1, 0.0, math.pi / 2)
    b = bounding_box(quarter)
    assert np.allclose(b.lo, [0, 0, -1], atol=1e-12)
    assert np.allclose(b.hi, [2, 2, 1], atol=1e-12)
    # theta spans [pi/4, 3pi/4]: z extremes are r_max cos at the bounds
    shell = Sphere("s", 1.0, 2.0, 0.0, math.pi / 2, math.pi / 4, math.pi / 2)
    box = bounding_box(shell)
    assert box.hi[2] == pytest.approx(2.0 * math.cos(math.pi / 4))
    assert box.lo[2] == pytest.approx(2.0 * math.cos(3 * math.pi / 4))
    assert box.hi[0] == pytest.approx(2.0)  # the equator sits inside the range


def test_radiation_length_rendered_when_supplied(b1):
    lead = Material("lead", 11.35, "solid", radiation_length_mm=5.6)
    lv = LogicalVolume("L", Box("S", 10, 10, 10), lead)
    g = GeometryModel(PhysicalVolume("P", lv))
    values = {v.key: v.value for v in touchable_attributes(g.descend()[0])}
    assert values["Radlen"] == "5.6 mm"
    assert isinstance(values["Radlen"], str)
    assert AttValue("Radlen", values["Radlen"]).value == "5.6 mm"


def _triple_box_geometry():
    mat = Material("stuff", 1.0, "solid")
    world_lv = LogicalVolume(
        "World", Box("World", 200, 200, 200), mat, VisAttributes(visible=False)
    )
    colours = [Colour(1, 0, 0), Colour(0, 1, 0), Colour(0, 0, 1)]
    for i, colour in enumerate(colours):
        lv = LogicalVolume(
            f"Cell{i}", Box(f"Cell{i}", 25, 25, 25), mat,
            VisAttributes(colour=colour),
        )
        world_lv.place(f"Cell{i}", lv, Transform.translate(-120 + 120 * i, 0, 0))
    return GeometryModel(PhysicalVolume("World", world_lv))


def test_ray_tracer_and_vector_writer_agree_on_contributors():
    """For disjoint solids, the touchables contributing pixels equal the
    touchables contributing projected faces."""
    g = _triple_box_geometry()
    g.set_logical_vis("Cell1", 0, VisPatch(visible=False))
    scene = Scene("agreement")
    scene.add_model(PhysicalVolumeModel(g))
    centre, radius = scene.extent_sphere()
    view = ViewParameters()
    view.style = "surface"
    view.set_viewpoint_theta_phi(math.radians(70), math.radians(20))

    touchables = [t for t in g.descend() if t.vis.visible]
    base = raytrace(touchables, view, 200, 200, extent=(centre, radius))
    rt_contributors = set()
    for t in touchables:
        rest = [u for u in touchables if u is not t]
        without = raytrace(rest, view, 200, 200, extent=(centre, radius))
        if without != base:
            rt_contributors.add(t.path)

    collector = CollectingSink()
    traverse(scene, ProtocolCheckerSink(collector), TraversalContext(view=view))
    painted = paint(collector, centre, radius, view, 200, 200)
    assert painted.depth_items  # faces were projected
    painter_contributors = set()
    for _solid, _tr, vis, touchable in collector.solids:
        if vis.visible:
            painter_contributors.add(touchable.path)

    expected = {t.path for t in touchables}
    assert rt_contributors == painter_contributors == expected
    assert len(expected) == 2  # the hidden cell contributes to neither


def test_vector_output_stable_across_runs():
    g = _triple_box_geometry()
    scene = Scene("stable")
    scene.add_model(PhysicalVolumeModel(g))
    centre, radius = scene.extent_sphere()
    view = ViewParameters()
    view.style = "surface"

    def render():
        collector = CollectingSink()
        traverse(scene, ProtocolCheckerSink(collector), TraversalContext(view=view))
        return to_svg(paint(collector, centre, radius, view, 300, 300))

    assert render() == render()
