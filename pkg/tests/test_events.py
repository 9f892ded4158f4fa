"""Event store, toy source, event files, filters and styling."""

import math

import numpy as np
import pytest

from multivis.attributes import BLUE, GREEN, RED, TRAJECTORY_ATTDEFS, resolve_attvalues
from multivis.errors import EventDataError
from multivis.events import (
    AttributeIntervalFilter,
    ChargeFilter,
    DrawByCharge,
    DrawByParticleID,
    Event,
    EventStore,
    ParticleFilter,
    Trajectory,
    filter_accept,
    generate_toy_event,
    helix_radius_mm,
    ingest_events,
    numeric_attribute,
    store_event,
    style_trajectory,
    trajectory_attributes,
    write_events,
)

from oracles import rk4_helix


def _toy(seed=1, n=6, field=1.0, extent=250.0):
    return generate_toy_event(seed, n, field, extent_mm=extent)


# --- store -------------------------------------------------------------------

def test_store_keeps_last_hundred():
    store = EventStore(100)
    for i in range(101):
        store_event(store, Event(i))
    assert store.ids() == list(range(1, 101))


def test_store_capacity_one():
    store = EventStore(1)
    for i in range(5):
        store.store(Event(i))
        assert store.ids() == [i]


def test_store_capacity_zero_keeps_nothing():
    store = EventStore(100)
    store.store(Event(0))
    dropped = store.set_capacity(0)
    assert dropped == 1
    store.store(Event(1))
    assert len(store) == 0


def test_store_size_property():
    rng = np.random.default_rng(2)
    for _ in range(20):
        n = int(rng.integers(0, 300))
        c = int(rng.integers(1, 150))
        store = EventStore(c)
        for i in range(n):
            store.store(Event(i))
        assert len(store) == min(n, c)
        assert store.ids() == list(range(max(0, n - c), n))


# --- toy generator ----------------------------------------------------------

def test_toy_event_deterministic():
    a = _toy(seed=9)
    b = _toy(seed=9)
    assert a.event_id == b.event_id == 9
    assert len(a.trajectories) == len(b.trajectories)
    for ta, tb in zip(a.trajectories, b.trajectories):
        assert ta.particle_name == tb.particle_name
        assert np.array_equal(ta.positions(), tb.positions())


def test_toy_zero_field_tracks_are_straight():
    event = _toy(seed=3, field=0.0)
    for t in event.trajectories:
        pts = t.positions()
        if len(pts) < 3:
            continue
        d = pts[1] - pts[0]
        d /= np.linalg.norm(d)
        rel = pts - pts[0]
        cross = np.cross(rel, d)
        assert np.max(np.linalg.norm(cross, axis=1)) < 1e-9


def test_helix_radius_formula():
    assert helix_radius_mm(300.0, 1.0) == pytest.approx(1000.0)


def test_helix_against_lorentz_integration():
    event = _toy(seed=12, n=12, field=2.0, extent=400.0)
    checked = 0
    for t in event.trajectories:
        if checked == 2:
            break
        if t.charge == 0.0 or len(t.points) < 5:
            continue
        n_check = min(len(t.points), 15)
        path_length = 10.0 * (n_check - 1)
        oracle = rk4_helix(t.initial_momentum, t.charge, 2.0, path_length, step=0.05)
        # oracle sampled every 0.05 mm; ours every 10 mm
        stride = 200
        for i, p in enumerate(t.positions()[:n_check]):
            assert np.linalg.norm(p - oracle[i * stride]) < 1e-3
        checked += 1
    assert checked == 2


def test_helix_points_lie_on_analytic_circle():
    event = _toy(seed=5, n=10, field=2.0, extent=400.0)
    for t in event.trajectories:
        if t.charge == 0.0 or len(t.points) < 4:
            continue
        pt = float(np.hypot(t.initial_momentum[0], t.initial_momentum[1]))
        r = helix_radius_mm(pt, 2.0)
        # gyration centre sits at sign(q) * r * (sin phi0, -cos phi0)
        phi0 = math.atan2(t.initial_momentum[1], t.initial_momentum[0])
        sign = 1.0 if t.charge > 0 else -1.0
        centre = sign * r * np.array([math.sin(phi0), -math.cos(phi0)])
        for p in t.positions():
            rho = np.hypot(p[0] - centre[0], p[1] - centre[1])
            assert rho == pytest.approx(r, abs=1e-6)


def test_toy_points_spaced_by_step_and_clipped():
    event = _toy(seed=8, extent=200.0)
    for t in event.trajectories:
        pts = t.positions()
        assert len(pts) >= 1
        assert np.all(np.linalg.norm(pts, axis=1) <= 200.0 + 1e-9)
        if len(pts) > 1:
            seg = np.linalg.norm(np.diff(pts, axis=0), axis=1)
            assert np.all(seg <= 10.0 + 1e-9)


# --- event files ------------------------------------------------------------

def test_ingest_empty_file(tmp_path):
    path = tmp_path / "events.jsonl"
    path.write_text("")
    assert ingest_events(path) == []


def test_round_trip_preserves_everything(tmp_path):
    events = [_toy(seed=i, n=4) for i in range(3)]
    path = tmp_path / "events.jsonl"
    write_events(events, path)
    back = ingest_events(path)
    path2 = tmp_path / "again.jsonl"
    write_events(back, path2)
    assert path.read_bytes() == path2.read_bytes()
    assert [e.event_id for e in back] == [0, 1, 2]
    assert back[0].trajectories[0].particle_name == events[0].trajectories[0].particle_name


def test_missing_key_reports_line(tmp_path):
    path = tmp_path / "bad.jsonl"
    good = '{"event_id":0,"trajectories":[],"hits":[]}'
    bad = (
        '{"event_id":1,"trajectories":[{"id":1,"pdg":11,"charge":-1,'
        '"ike_mev":1,"imom_mev":[1,0,0],"points":[[0,0,0,0]]}],"hits":[]}'
    )  # no "name"
    path.write_text(good + "\n" + bad + "\n")
    with pytest.raises(EventDataError, match=r":2"):
        ingest_events(path)
    with pytest.raises(EventDataError, match="name"):
        ingest_events(path)


def test_invalid_json_reports_line(tmp_path):
    path = tmp_path / "bad.jsonl"
    path.write_text("{not json}\n")
    with pytest.raises(EventDataError, match=r":1"):
        ingest_events(path)


# --- filters ----------------------------------------------------------------

def _trajectory(name="gamma", charge=0.0, ike=100.0):
    from multivis.events import PARTICLE_TABLE, StepPoint

    pdg, _, _ = PARTICLE_TABLE.get(name, (0, 0.0, charge))
    return Trajectory(
        track_id=1,
        parent_id=0,
        particle_name=name,
        pdg_encoding=pdg,
        charge=charge,
        initial_kinetic_energy=ike,
        initial_momentum=np.array([ike, 0.0, 0.0]),
        points=[StepPoint(np.zeros(3))],
    )


def test_particle_filter():
    f = ParticleFilter({"gamma"})
    assert filter_accept([f], _trajectory("gamma"))
    assert not filter_accept([f], _trajectory("e-", -1.0))


def test_empty_chain_accepts():
    assert filter_accept([], _trajectory("proton", 1.0))


def test_inversion_and_conjunction():
    inverted = ParticleFilter({"gamma"}, invert=True)
    negative = ChargeFilter({-1.0})
    electron = _trajectory("e-", -1.0)
    gamma = _trajectory("gamma", 0.0)
    assert filter_accept([inverted, negative], electron)
    assert not filter_accept([inverted, negative], gamma)


def test_filter_idempotent():
    chain = (ParticleFilter({"gamma"}), ChargeFilter({0.0}))
    t = _trajectory("gamma")
    once = filter_accept(chain, t)
    assert filter_accept(list(chain) + list(chain), t) == once


def test_interval_filter():
    f = AttributeIntervalFilter("IKE", 50.0, 150.0)
    assert filter_accept([f], _trajectory(ike=100.0))
    assert not filter_accept([f], _trajectory(ike=151.0))
    unknown = AttributeIntervalFilter("NOPE", 0.0, 1.0)
    assert not filter_accept([unknown], _trajectory())


def test_momentum_magnitude_attribute():
    t = _trajectory(ike=100.0)
    assert numeric_attribute(t, "IMag") == pytest.approx(100.0)


# --- styling ----------------------------------------------------------------

def test_draw_by_charge_defaults():
    model = DrawByCharge()
    assert style_trajectory(model, _trajectory("e-", -1.0)).colour == RED
    assert style_trajectory(model, _trajectory("proton", 1.0)).colour == BLUE
    assert style_trajectory(model, _trajectory("gamma", 0.0)).colour == GREEN


def test_draw_by_particle_id_falls_back_to_default():
    model = DrawByParticleID(colour_map={"gamma": GREEN})
    assert style_trajectory(model, _trajectory("gamma")).colour == GREEN
    assert style_trajectory(model, _trajectory("proton", 1.0)).colour == model.default_colour


def test_step_point_flags_carried():
    model = DrawByCharge(draw_step_points=True, step_pts_size=2.0)
    style = style_trajectory(model, _trajectory("e-", -1.0))
    assert style.draw_points and style.point_size == 2.0


def test_styling_does_not_affect_filtering():
    t = _trajectory("e-", -1.0)
    chain = [ParticleFilter({"e-"})]
    before = filter_accept(chain, t)
    style_trajectory(DrawByCharge(), t)
    assert filter_accept(chain, t) == before


# --- attributes ----------------------------------------------------------------

def test_trajectory_attribute_values():
    event = _toy(seed=4)
    electron = next(
        (t for t in event.trajectories if t.particle_name == "e-"), None
    )
    t = electron or _trajectory("e-", -1.0)
    values = {v.key: v.value for v in trajectory_attributes(t)}
    assert values["PN"] == "e-"
    assert values["Ch"] == "-1 e+"
    assert values["NTP"] == str(len(t.points))
    resolve_attvalues(trajectory_attributes(t), TRAJECTORY_ATTDEFS)


def test_imom_magnitude_consistent():
    event = _toy(seed=6)
    for t in event.trajectories:
        mag = numeric_attribute(t, "IMag")
        assert mag == pytest.approx(float(np.linalg.norm(t.initial_momentum)), abs=1e-9)
