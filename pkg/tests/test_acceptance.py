"""Acceptance suite: every release criterion at its stated tolerance.

Each test prints one [PASS]/[FAIL] line (run with `pytest -s` to see them
on success). The suite exercises the primary component only.
"""

import math
import time
from importlib import resources

import numpy as np
import pytest

from multivis.attributes import Colour, VisAttributes
from multivis.commands import Session
from multivis.drivers import (
    CountingSink,
    ProtocolCheckerSink,
    RecordingSink,
    raytrace,
    read_scene_document,
    write_scene_document,
    ascii_tree_render,
)
from multivis.events import (
    DrawByCharge,
    EventStore,
    ParticleFilter,
    filter_accept,
    generate_toy_event,
    style_trajectory,
)
from multivis.fixtures import build_b1
from multivis.geometry import GeometryModel, LogicalVolume, Material, PhysicalVolume
from multivis.scene import PhysicalVolumeModel, Scene, traverse
from multivis.solids import Sphere, first_hits, mc_volume, analytic_volume
from multivis.view import ViewParameters

from oracles import aimed_rays, fine_march_check, march_first_hits, random_primitive


def _verdict(name: str, ok: bool, detail: str = "") -> None:
    tag = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"[{tag}] {name}{suffix}")
    assert ok, f"{name}{suffix}"


def test_criterion_fig11_reproduction(b1):
    """Quantitative tree dump of the reference four-volume detector."""
    start = time.perf_counter()
    text = ascii_tree_render(b1, 15)
    elapsed = time.perf_counter() - start
    required = [
        "20736 cm3",
        "12000 cm3",
        "175.929 cm3",
        "936 cm3",
        "8736 cm3",
        "10888.1 cm3",
        "10.525 g",
        "10.8881 kg",
        "198.272 g",
        "1.7316 kg",
        "12.8285 kg",
    ]
    missing = [r for r in required if r not in text]
    ok = not missing and elapsed < 1.0
    _verdict(
        "tree dump volumes and masses",
        ok,
        f"{elapsed * 1000:.0f} ms" + (f", missing {missing}" if missing else ""),
    )


def test_criterion_volume_oracle_suite():
    """500 randomized primitives: |analytic - MC(1e6)| <= 4 standard errors."""
    rng = np.random.default_rng(515151)
    solids = [random_primitive(rng) for _ in range(500)]
    start = time.perf_counter()
    worst = 0.0
    failures = 0
    for i, solid in enumerate(solids):
        r = mc_volume(solid, 1_000_000, seed=10_000 + i)
        err = abs(analytic_volume(solid) - r.volume)
        if r.std_error == 0.0:
            failures += int(err != 0.0)
            continue
        sigmas = err / r.std_error
        worst = max(worst, sigmas)
        failures += int(sigmas > 4.0)
    elapsed = time.perf_counter() - start
    ok = failures == 0 and elapsed < 60.0
    _verdict(
        "volume oracle suite",
        ok,
        f"500 solids, worst {worst:.2f} sigma, {elapsed:.1f} s",
    )


def test_criterion_ray_oracle_suite():
    """1e4 aimed rays per primitive agree with the dense-march oracle."""
    n_rays = 10_000
    mismatches_total = 0
    for kind in ("box", "tube", "cone", "trd", "sphere"):
        rng = np.random.default_rng(abs(hash(kind)) % 2**31)
        solid = random_primitive(rng, kind)
        origins, dirs = aimed_rays(solid, rng, n_rays)
        t_impl, _, _, hit = first_hits(solid, origins, dirs)
        t_oracle = march_first_hits(solid, origins, dirs, step=1e-3)
        for i in range(n_rays):
            impl_hit = bool(hit[i])
            oracle_hit = bool(np.isfinite(t_oracle[i]))
            if impl_hit and oracle_hit and abs(t_impl[i] - t_oracle[i]) <= 1e-5:
                continue
            if not impl_hit and not oracle_hit:
                continue
            if impl_hit and (not oracle_hit or t_oracle[i] > t_impl[i] + 1e-5):
                if fine_march_check(solid, origins[i], dirs[i], float(t_impl[i])):
                    continue
            mismatches_total += 1
    _verdict(
        "ray oracle suite",
        mismatches_total == 0,
        f"5 x {n_rays} rays, {mismatches_total} mismatches",
    )


def test_criterion_startup_script_conformance(tmp_path, fixed_clock):
    """The start-up command corpus runs clean and the SVG shows 10 events."""
    session = Session(out_dir=tmp_path, clock=fixed_clock)
    macro = str(resources.files("multivis.data") / "startup.mac")
    status = session.execute_macro(macro)
    beam = session.execute("/run/beamOn 10")
    viewer = session.vis.current_viewer
    svg_files = sorted(tmp_path.glob("*.svg"))
    svg_text = svg_files[-1].read_text() if svg_files else ""
    recorder = session.vis.trace_view(viewer)
    counting = CountingSink()
    from multivis.scene import TraversalContext

    traverse(
        viewer.scene,
        ProtocolCheckerSink(counting),
        session.vis.build_context(viewer),
    )
    expected_trajectories = sum(
        len(e.trajectories) for e in session.vis.event_store
    )
    ok = (
        status.ok
        and beam.ok
        and len(session.vis.event_store) == 10
        and counting.n("add_trajectory") == expected_trajectories
        and counting.n("add_solid") == 4
        and svg_files
        and "<polyline" in svg_text
        and "<polygon" in svg_text
    )
    _verdict(
        "start-up script conformance",
        ok,
        f"{len(svg_files)} svg files, {counting.n('add_trajectory')} trajectories"
        f" (expected {expected_trajectories})",
    )
    assert len(recorder.trajectory_records()) == expected_trajectories


def test_criterion_event_store_property():
    """Capacity-C store after N >= C insertions holds exactly the C newest."""
    rng = np.random.default_rng(7)
    checks = 0
    ok = True
    for _ in range(200):
        capacity = int(rng.integers(1, 200))
        n = int(rng.integers(capacity, capacity + 300))
        store = EventStore(capacity)
        for i in range(n):
            store.store(generate_toy_event(0, 1, 0.0, extent_mm=20.0, event_id=i))
        ok &= store.ids() == list(range(n - capacity, n))
        checks += 1
    default = EventStore()
    for i in range(150):
        default.store(generate_toy_event(0, 1, 0.0, extent_mm=20.0, event_id=i))
    ok &= default.capacity == 100 and default.ids() == list(range(50, 150))
    _verdict("event store ring buffer", ok, f"{checks} random (N, C) pairs")


def test_criterion_driver_equivalence(b1, tmp_path, fixed_clock):
    """Identical sink call sequences across drivers; transients survive a
    driver switch."""
    from multivis.kernel import VisManager
    from multivis.scene import TrajectoriesModel, HitsModel

    vm = VisManager(geometry=b1, out_dir=tmp_path, clock=fixed_clock)
    svg = vm.open_viewer("SVG")
    vm.draw_volume()
    vm.add_model(TrajectoriesModel())
    vm.add_model(HitsModel())
    vm.current_scene.end_of_event_action = "accumulate"
    vm.beam_on(5)
    export = vm.open_viewer("SceneExport")
    atree = vm.open_viewer("ATree")

    shared_view = svg.view.copy()
    traces = [
        vm.trace_view(v, view=shared_view).records for v in (svg, export, atree)
    ]
    sequences_equal = traces[0] == traces[1] == traces[2]

    before = vm.trace_view(svg, view=shared_view).trajectory_records()
    vm.select_viewer(atree.name)
    vm.flush(atree)  # the switched driver re-renders from the store
    after = vm.trace_view(atree, view=shared_view).trajectory_records()
    transients_reproduced = before == after and len(before) == 5 * vm.beam_tracks

    ok = sequences_equal and transients_reproduced
    _verdict(
        "driver equivalence and transient recovery",
        ok,
        f"{len(traces[0])} sink calls, {len(before)} trajectories",
    )


def test_criterion_ray_tracer(b1, tmp_path):
    """Thread-count determinism, silhouette fraction, and render time."""
    # silhouette of a lone sphere
    mat = Material("stuff", 1.0, "solid")
    lv = LogicalVolume(
        "SphereL", Sphere("SphereS", 0, 50.0), mat,
        VisAttributes(colour=Colour(0.9, 0.1, 0.1)),
    )
    sphere_geo = GeometryModel(PhysicalVolume("SphereP", lv))
    scene = Scene("sil")
    scene.add_model(PhysicalVolumeModel(sphere_geo))
    centre, radius = scene.extent_sphere()
    view = ViewParameters()
    data = raytrace(sphere_geo.descend(), view, 600, 600, extent=(centre, radius))
    img = np.frombuffer(data[data.index(b"255\n") + 4 :], dtype=np.uint8)
    img = img.reshape(600, 600, 3)
    frac = float(np.any(img != 255, axis=2).mean())
    expected = math.pi * 50.0**2 / (2.0 * radius) ** 2
    silhouette_ok = abs(frac - expected) / expected <= 0.01

    # determinism across worker counts on the reference detector
    b1_scene = Scene("b1")
    b1_scene.add_model(PhysicalVolumeModel(b1))
    b1_centre, b1_radius = b1_scene.extent_sphere()
    b1_view = ViewParameters()
    b1_view.style = "surface"
    b1_view.set_viewpoint_theta_phi(math.radians(120), math.radians(150))
    start = time.perf_counter()
    two = raytrace(b1.descend(), b1_view, 600, 600, threads=2,
                   extent=(b1_centre, b1_radius))
    elapsed = time.perf_counter() - start
    eight = raytrace(b1.descend(), b1_view, 600, 600, threads=8,
                     extent=(b1_centre, b1_radius))
    ok = silhouette_ok and two == eight and elapsed < 10.0
    _verdict(
        "ray tracer",
        ok,
        f"silhouette {frac:.4f} vs {expected:.4f}, 600x600 in {elapsed:.2f} s",
    )


def test_criterion_filters_and_models():
    """particleFilter selects exactly gammas; conjunction, inversion,
    idempotence; drawByCharge partitions tracks by charge sign."""
    tracks = []
    for seed in range(100):
        tracks.extend(generate_toy_event(seed, 100, 1.0, extent_mm=20.0).trajectories)
    tracks = tracks[:10_000]
    assert len(tracks) == 10_000

    gamma_filter = ParticleFilter({"gamma"})
    accepted = [t for t in tracks if filter_accept([gamma_filter], t)]
    exact = all(t.particle_name == "gamma" for t in accepted) and all(
        t.particle_name != "gamma"
        for t in tracks
        if not filter_accept([gamma_filter], t)
    )

    inverted = ParticleFilter({"gamma"}, invert=True)
    inversion_ok = all(
        filter_accept([gamma_filter], t) != filter_accept([inverted], t)
        for t in tracks
    )
    conjunction_ok = all(
        filter_accept([gamma_filter, inverted], t) is False for t in tracks
    )
    idempotent = all(
        filter_accept([gamma_filter, gamma_filter], t)
        == filter_accept([gamma_filter], t)
        for t in tracks
    )

    model = DrawByCharge()
    colour_of_sign = {}
    partition_ok = True
    for t in tracks:
        sign = (t.charge > 0) - (t.charge < 0)
        colour = style_trajectory(model, t).colour.key()
        if sign in colour_of_sign:
            partition_ok &= colour_of_sign[sign] == colour
        colour_of_sign[sign] = colour
    partition_ok &= len(set(colour_of_sign.values())) == 3

    ok = exact and inversion_ok and conjunction_ok and idempotent and partition_ok
    _verdict(
        "filters and models",
        ok,
        f"{len(accepted)} gammas of {len(tracks)} tracks",
    )


def test_criterion_export_round_trip(b1, tmp_path):
    """write -> read -> write is byte-identical and every key resolves."""
    from multivis.drivers import CollectingSink, build_document
    from multivis.scene import (
        HitsModel,
        TrajectoriesModel,
        TraversalContext,
    )

    scene = Scene("export")
    scene.add_model(PhysicalVolumeModel(b1))
    scene.add_model(TrajectoriesModel())
    scene.add_model(HitsModel())
    events = tuple(generate_toy_event(i, 6, 1.0) for i in range(10))
    ctx = TraversalContext(view=ViewParameters(), events=events)
    collector = CollectingSink()
    traverse(scene, ProtocolCheckerSink(collector), ctx)
    doc = build_document(collector, ctx.view, timestamp="2026-01-01T00:00:00")
    doc.validate()
    p1 = tmp_path / "a.scene.json"
    p2 = tmp_path / "b.scene.json"
    write_scene_document(doc, p1)
    loaded = read_scene_document(p1)
    loaded.validate()
    write_scene_document(loaded, p2)
    identical = p1.read_bytes() == p2.read_bytes()
    counts = {
        t: len(doc.instances_of(t)) for t in ("geometry", "trajectory", "hit")
    }
    ok = identical and counts["geometry"] == 4 and counts["trajectory"] == 60
    _verdict("export round trip", ok, f"instances {counts}")
