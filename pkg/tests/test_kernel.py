"""Visualisation manager: registries, viewers, transients, event flow."""

import numpy as np
import pytest

from multivis.attributes import VisAttributes
from multivis.drivers import GraphicsSystem, RenderResult, SystemCapabilities
from multivis.errors import KernelError
from multivis.kernel import VisManager, parse_window_geometry
from multivis.scene import Circle, HitsModel, Polyline, Text, TrajectoriesModel
from multivis.solids import Box, Subtraction
from multivis.transform import Transform
from multivis.view import ViewParameters


def _vm(b1, tmp_path, fixed_clock):
    return VisManager(geometry=b1, out_dir=tmp_path, clock=fixed_clock)


def test_builtin_registration(b1, tmp_path, fixed_clock):
    vm = _vm(b1, tmp_path, fixed_clock)
    assert vm.system_names() == ["ATree", "SVG", "RayTracer", "SceneExport"]


def test_duplicate_system_rejected(b1, tmp_path, fixed_clock):
    vm = _vm(b1, tmp_path, fixed_clock)

    class Dup(GraphicsSystem):
        nickname = "SVG"

    with pytest.raises(KernelError):
        vm.register_system(Dup())


def test_unknown_system_lists_registered(b1, tmp_path, fixed_clock):
    vm = _vm(b1, tmp_path, fixed_clock)
    with pytest.raises(KernelError, match="ATree"):
        vm.open_viewer("OGL")


def test_window_geometry_parsing():
    assert parse_window_geometry("600x600-0+0") == (600, 600, 0, 0)
    assert parse_window_geometry("800x400") == (800, 400, None, None)
    assert parse_window_geometry("") == (600, 600, None, None)
    with pytest.raises(KernelError):
        parse_window_geometry("600by600")


def test_open_viewer_names_and_current(b1, tmp_path, fixed_clock):
    vm = _vm(b1, tmp_path, fixed_clock)
    v = vm.open_viewer("SVG", "600x600-0+0")
    assert v.name == "viewer-0 (SVG)"
    assert v.view.window_width == 600
    assert vm.current_viewer is v
    v2 = vm.open_viewer("ATree")
    assert vm.current_viewer is v2
    assert vm.current_scene is v.scene  # both share the auto-created scene


def test_registry_invariants_after_commands(b1, tmp_path, fixed_clock):
    vm = _vm(b1, tmp_path, fixed_clock)
    vm.open_viewer("SVG")
    vm.open_viewer("SceneExport")
    vm.create_scene("second")
    vm.open_viewer("ATree")
    for viewer in vm.viewers:
        assert viewer.handler in vm.handlers
        assert viewer.handler.scene in vm.scenes
    assert vm.current_viewer in vm.viewers


def test_scene_auto_created_and_scene_create_duplicates(b1, tmp_path, fixed_clock):
    vm = _vm(b1, tmp_path, fixed_clock)
    s = vm.create_scene("")
    assert s.name == "scene-0"
    with pytest.raises(Exception):
        vm.create_scene("scene-0")


def test_flush_writes_sequenced_files(b1, tmp_path, fixed_clock):
    vm = _vm(b1, tmp_path, fixed_clock)
    vm.open_viewer("SVG")
    vm.draw_volume()
    out0 = vm.flush()
    out1 = vm.flush()
    assert out0.path.name == "viewer-0-SVG-0.svg"
    assert out1.path.name == "viewer-0-SVG-1.svg"


def test_change_view_then_flush_reflects_new_view(b1, tmp_path, fixed_clock):
    vm = _vm(b1, tmp_path, fixed_clock)
    v = vm.open_viewer("SVG")
    vm.draw_volume()
    first = vm.flush().path.read_text()
    v.view.set_viewpoint_theta_phi(np.radians(120), np.radians(150))
    second = vm.flush().path.read_text()
    assert first != second


def test_two_viewers_rebuilt_on_scene_change(b1, tmp_path, fixed_clock):
    vm = _vm(b1, tmp_path, fixed_clock)
    a = vm.open_viewer("SVG")
    b = vm.open_viewer("SceneExport")
    assert a.scene is b.scene
    a.auto_refresh = True
    b.auto_refresh = True
    vm.draw_volume()
    assert a.sequence == 1 and b.sequence == 1


def test_auto_refresh_false_means_no_output(b1, tmp_path, fixed_clock):
    vm = _vm(b1, tmp_path, fixed_clock)
    v = vm.open_viewer("SVG")
    assert v.auto_refresh is False  # no retained store
    vm.draw_volume()
    assert v.sequence == 0
    vm.flush()
    assert v.sequence == 1


def test_end_of_event_refresh_vs_accumulate(b1, tmp_path, fixed_clock):
    vm = _vm(b1, tmp_path, fixed_clock)
    v = vm.open_viewer("SVG")
    vm.draw_volume()
    vm.add_model(TrajectoriesModel())
    vm.current_scene.end_of_event_action = "refresh"
    vm.beam_on(10)
    rec = vm.trace_view(v)
    ids = {r[8][-1][1] for r in rec.trajectory_records()}  # EventID attvalue
    assert ids == {"9"}
    vm.current_scene.end_of_event_action = "accumulate"
    rec = vm.trace_view(v)
    ids = {r[8][-1][1] for r in rec.trajectory_records()}
    assert ids == {str(i) for i in range(10)}


def test_switch_driver_reproduces_transients(b1, tmp_path, fixed_clock):
    vm = _vm(b1, tmp_path, fixed_clock)
    svg = vm.open_viewer("SVG")
    vm.draw_volume()
    vm.add_model(TrajectoriesModel())
    vm.add_model(HitsModel())
    vm.current_scene.end_of_event_action = "accumulate"
    vm.beam_on(5)
    before = vm.trace_view(svg).trajectory_records()
    atree = vm.open_viewer("ATree")  # same scene, new driver; becomes current
    after = vm.trace_view(atree).trajectory_records()
    assert before == after and len(before) > 0


def test_draw_primitive_without_viewer_is_noop(b1, tmp_path, fixed_clock):
    vm = _vm(b1, tmp_path, fixed_clock)
    vm.draw_primitive(Circle(np.zeros(3), 3.0))
    assert vm.messages and vm.messages[-1][0] == "info"


def test_facade_transients_drawn_then_cleared_by_rebuild(b1, tmp_path, fixed_clock):
    vm = _vm(b1, tmp_path, fixed_clock)
    v = vm.open_viewer("SVG")
    vm.draw_volume()
    vm.draw_primitive(Circle(np.zeros(3), 3.0))
    vm.draw_primitive(
        Text(np.array([0.0, -0.9, 0.0]), "note", 12.0), two_d=True
    )
    rec = vm.trace_view(v)
    prims = [r for r in rec.records if r[0] == "add_primitive"]
    assert len(prims) == 2
    vm.rebuild(v)
    rec2 = vm.trace_view(v)
    assert [r for r in rec2.records if r[0] == "add_primitive"] == []


def test_user_vis_action_persists_across_rebuilds(b1, tmp_path, fixed_clock):
    vm = _vm(b1, tmp_path, fixed_clock)
    v = vm.open_viewer("SVG")
    calls = []

    def draw_boxes(handle):
        calls.append(1)
        handle.draw(
            Polyline(np.array([[0, 0, 0], [10, 0, 0]]), VisAttributes()),
            Transform.translate(-6, -6, -6),
        )

    vm.register_user_vis_action("boxes", draw_boxes)
    vm.flush(v)
    vm.rebuild(v)
    assert len(calls) == 2
    rec = vm.trace_view(v)
    assert any(r[0] == "add_primitive" for r in rec.records)
    with pytest.raises(KernelError):
        vm.register_user_vis_action("boxes", draw_boxes)
    vm.remove_user_vis_action("boxes")
    rec = vm.trace_view(v)
    assert not any(r[0] == "add_primitive" for r in rec.records)


def test_user_vis_action_boolean_solid_mesh(b1, tmp_path, fixed_clock):
    # a subtracted box drawn through the facade as a mesh primitive
    from multivis.scene import MeshPrimitive
    from multivis.solids import tessellate

    vm = _vm(b1, tmp_path, fixed_clock)
    vm.open_viewer("SVG")
    carved = Subtraction(
        "carved", Box("A", 30, 30, 30), Box("B", 10, 10, 10),
        Transform.translate(30, 30, 30),
    )
    mesh = tessellate(carved, 12)

    def action(handle):
        handle.draw(MeshPrimitive(mesh, VisAttributes()), Transform.identity())

    vm.register_user_vis_action("carved", action)
    out = vm.flush()
    assert out.path.exists()


def test_viewpoint_theta_phi_unit_vector():
    view = ViewParameters()
    theta, phi = np.radians(120.0), np.radians(150.0)
    view.set_viewpoint_theta_phi(theta, phi)
    v = view.viewpoint
    assert np.linalg.norm(v) == pytest.approx(1.0)
    expected = np.array(
        [
            np.sin(theta) * np.cos(phi),
            np.sin(theta) * np.sin(phi),
            np.cos(theta),
        ]
    )
    assert np.allclose(v, expected)
    assert np.argmax(np.abs(v)) == int(np.argmax(np.abs(expected)))


def test_state_digest_stable_and_sensitive(b1, tmp_path, fixed_clock):
    vm = _vm(b1, tmp_path, fixed_clock)
    vm.open_viewer("SVG")
    d1 = vm.state_digest()
    d2 = vm.state_digest()
    assert d1 == d2
    vm.create_scene("another")
    assert vm.state_digest() != d1
