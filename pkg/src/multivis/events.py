"""Event data: trajectories and hits, the ring-buffer store, the toy event
source, line-delimited event files, and trajectory styling/filtering."""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from . import units
from .attributes import (
    BLUE,
    GRAY,
    GREEN,
    RED,
    TRAJECTORY_ATTDEFS,
    AttValue,
    Colour,
)
from .errors import EventDataError

log = logging.getLogger("multivis.events")

# name -> (pdg, mass MeV, charge e)
PARTICLE_TABLE = {
    "e-": (11, 0.510999, -1.0),
    "e+": (-11, 0.510999, +1.0),
    "gamma": (22, 0.0, 0.0),
    "mu-": (13, 105.658, -1.0),
    "proton": (2212, 938.272, +1.0),
}

STEP_MM = 10.0


@dataclass(frozen=True, eq=False)
class StepPoint:
    position: np.ndarray  # mm
    energy_deposit: float = 0.0  # MeV


@dataclass
class Trajectory:
    track_id: int
    parent_id: int
    particle_name: str
    pdg_encoding: int
    charge: float  # e
    initial_kinetic_energy: float  # MeV
    initial_momentum: np.ndarray  # MeV, 3-vector
    points: list[StepPoint]
    creator_process: str = "primary"

    def positions(self) -> np.ndarray:
        return np.array([p.position for p in self.points], dtype=float)


@dataclass
class Hit:
    position: np.ndarray  # mm
    energy_deposit: float  # MeV
    detector_name: str = "toy"
    extra: tuple[AttValue, ...] = ()


@dataclass
class Event:
    event_id: int
    trajectories: list[Trajectory] = field(default_factory=list)
    hits: list[Hit] = field(default_factory=list)


class EventStore:
    """Keeps the most recent `capacity` events (default 100)."""

    def __init__(self, capacity: int = 100):
        self._capacity = int(capacity)
        self._events: list[Event] = []

    @property
    def capacity(self) -> int:
        return self._capacity

    def set_capacity(self, capacity: int) -> int:
        """Resize; returns how many stored events were dropped."""
        self._capacity = max(0, int(capacity))
        dropped = max(0, len(self._events) - self._capacity)
        if dropped:
            self._events = self._events[dropped:]
        return dropped

    def store(self, event: Event) -> None:
        if self._capacity == 0:
            return
        self._events.append(event)
        if len(self._events) > self._capacity:
            del self._events[0 : len(self._events) - self._capacity]

    def snapshot(self) -> tuple[Event, ...]:
        return tuple(self._events)

    def latest(self) -> Optional[Event]:
        return self._events[-1] if self._events else None

    def ids(self) -> list[int]:
        return [e.event_id for e in self._events]

    def clear(self) -> None:
        self._events.clear()

    def __len__(self) -> int:
        return len(self._events)

    def __iter__(self):
        return iter(self._events)


def store_event(store: EventStore, event: Event) -> None:
    store.store(event)


def helix_radius_mm(pt_mev: float, field_tesla: float) -> float:
    """Gyroradius for unit charge: p_T[GeV] / (0.3 B) metres."""
    return pt_mev / (0.3 * field_tesla)


def _track_points(
    momentum: np.ndarray,
    charge: float,
    field_tesla: float,
    extent_mm: float,
    origin: np.ndarray,
) -> list[np.ndarray]:
    p = float(np.linalg.norm(momentum))
    pt = float(np.hypot(momentum[0], momentum[1]))
    max_points = int(8.0 * extent_mm / STEP_MM) + 2
    pts: list[np.ndarray] = []
    if charge == 0.0 or field_tesla <= 0.0 or pt < 1e-9:
        u = momentum / p
        for k in range(max_points):
            pos = origin + u * (k * STEP_MM)
            if np.linalg.norm(pos) > extent_mm:
                break
            pts.append(pos)
        return pts
    # helix about z: transverse circle of radius r, uniform advance in z
    r = helix_radius_mm(pt, field_tesla) / abs(charge)
    u_t = pt / p
    u_z = momentum[2] / p
    phi0 = math.atan2(momentum[1], momentum[0])
    kappa = -math.copysign(1.0, charge) * u_t / r  # dphi/ds
    for k in range(max_points):
        s = k * STEP_MM
        phi = phi0 + kappa * s
        pos = origin + np.array(
            [
                (u_t / kappa) * (math.sin(phi) - math.sin(phi0)),
                -(u_t / kappa) * (math.cos(phi) - math.cos(phi0)),
                u_z * s,
            ]
        )
        if np.linalg.norm(pos) > extent_mm:
            break
        pts.append(pos)
    return pts


def generate_toy_event(
    seed: int,
    n_tracks: int,
    field_tesla: float,
    extent_mm: float = 250.0,
    event_id: int | None = None,
) -> Event:
    """Deterministic stand-in event source.

    Primaries start at the origin with isotropic directions and kinetic
    energies in 50..1500 MeV; charged tracks follow helices about z in the
    given field, neutrals go straight. Points are laid every 10 mm of path
    and clipped to the extent sphere.
    """
    if n_tracks < 1:
        raise EventDataError("n_tracks must be >= 1")
    rng = np.random.default_rng(seed)
    names = sorted(PARTICLE_TABLE)
    trajectories: list[Trajectory] = []
    hits: list[Hit] = []
    origin = np.zeros(3)
    for i in range(n_tracks):
        name = names[int(rng.integers(0, len(names)))]
        pdg, mass, charge = PARTICLE_TABLE[name]
        ke = float(rng.uniform(50.0, 1500.0))
        direction = rng.normal(size=3)
        direction /= np.linalg.norm(direction)
        p_mag = math.sqrt((ke + mass) ** 2 - mass**2)
        momentum = p_mag * direction
        positions = _track_points(momentum, charge, field_tesla, extent_mm, origin)
        edeps = rng.uniform(0.0, 2.0, size=len(positions))
        points = [
            StepPoint(pos, float(e) if charge != 0.0 else 0.0)
            for pos, e in zip(positions, edeps)
        ]
        trajectories.append(
            Trajectory(
                track_id=i + 1,
                parent_id=0,
                particle_name=name,
                pdg_encoding=pdg,
                charge=charge,
                initial_kinetic_energy=ke,
                initial_momentum=momentum,
                points=points,
            )
        )
        if charge != 0.0:
            for j in range(4, len(points), 5):
                hits.append(
                    Hit(
                        position=points[j].position,
                        energy_deposit=float(rng.uniform(0.5, 10.0)),
                        detector_name="toy",
                    )
                )
    return Event(seed if event_id is None else event_id, trajectories, hits)


# --- event files ------------------------------------------------------------

def _event_to_obj(event: Event) -> dict:
    return {
        "event_id": event.event_id,
        "trajectories": [
            {
                "id": t.track_id,
                "parent": t.parent_id,
                "pdg": t.pdg_encoding,
                "name": t.particle_name,
                "charge": t.charge,
                "process": t.creator_process,
                "ike_mev": t.initial_kinetic_energy,
                "imom_mev": [float(v) for v in t.initial_momentum],
                "points": [
                    [float(p.position[0]), float(p.position[1]), float(p.position[2]),
                     p.energy_deposit]
                    for p in t.points
                ],
            }
            for t in event.trajectories
        ],
        "hits": [
            {
                "pos": [float(v) for v in h.position],
                "edep_mev": h.energy_deposit,
                "detector": h.detector_name,
            }
            for h in event.hits
        ],
    }


def event_to_line(event: Event) -> str:
    return json.dumps(_event_to_obj(event), sort_keys=True, separators=(",", ":"))


def write_events(events: Iterable[Event], path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for event in events:
            f.write(event_to_line(event) + "\n")


def _parse_event(obj: dict, where: str) -> Event:
    def need(mapping, key, ctx):
        if key not in mapping:
            raise EventDataError(f"{where}: missing key '{key}' in {ctx}")
        return mapping[key]

    trajectories = []
    for traj in need(obj, "trajectories", "event"):
        points = [
            StepPoint(np.array(p[:3], dtype=float), float(p[3]))
            for p in need(traj, "points", "trajectory")
        ]
        trajectories.append(
            Trajectory(
                track_id=int(need(traj, "id", "trajectory")),
                parent_id=int(traj.get("parent", 0)),
                particle_name=str(need(traj, "name", "trajectory")),
                pdg_encoding=int(need(traj, "pdg", "trajectory")),
                charge=float(need(traj, "charge", "trajectory")),
                initial_kinetic_energy=float(need(traj, "ike_mev", "trajectory")),
                initial_momentum=np.array(
                    need(traj, "imom_mev", "trajectory"), dtype=float
                ),
                points=points,
                creator_process=str(traj.get("process", "primary")),
            )
        )
    hits = [
        Hit(
            position=np.array(need(h, "pos", "hit"), dtype=float),
            energy_deposit=float(need(h, "edep_mev", "hit")),
            detector_name=str(h.get("detector", "")),
        )
        for h in need(obj, "hits", "event")
    ]
    return Event(int(need(obj, "event_id", "event")), trajectories, hits)


def ingest_events(path) -> list[Event]:
    """Read line-delimited event records; errors carry the line number."""
    events: list[Event] = []
    with open(path, "r", encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            where = f"{path}:{lineno}"
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise EventDataError(f"{where}: invalid JSON ({exc.msg})") from None
            events.append(_parse_event(obj, where))
    return events


# --- filters ----------------------------------------------------------------

@dataclass
class ParticleFilter:
    names: set[str] = field(default_factory=set)
    invert: bool = False

    def passes(self, trajectory: Trajectory) -> bool:
        return trajectory.particle_name in self.names


@dataclass
class ChargeFilter:
    charges: set[float] = field(default_factory=set)
    invert: bool = False

    def passes(self, trajectory: Trajectory) -> bool:
        return trajectory.charge in self.charges


def numeric_attribute(trajectory: Trajectory, key: str) -> float | None:
    """Numeric value backing an attribute key, in internal units."""
    getters = {
        "Ch": lambda t: t.charge,
        "ID": lambda t: float(t.track_id),
        "IKE": lambda t: t.initial_kinetic_energy,
        "IMag": lambda t: float(np.linalg.norm(t.initial_momentum)),
        "NTP": lambda t: float(len(t.points)),
        "PDG": lambda t: float(t.pdg_encoding),
        "PID": lambda t: float(t.parent_id),
    }
    getter = getters.get(key)
    return getter(trajectory) if getter else None


@dataclass
class AttributeIntervalFilter:
    key: str
    minimum: float | None = None
    maximum: float | None = None
    invert: bool = False
    _warned: bool = field(default=False, compare=False, repr=False)

    def passes(self, trajectory: Trajectory) -> bool:
        value = numeric_attribute(trajectory, self.key)
        if value is None:
            if not self._warned:
                log.warning("interval filter: unknown attribute key %r", self.key)
                self._warned = True
            return False
        if self.minimum is not None and value < self.minimum:
            return False
        if self.maximum is not None and value > self.maximum:
            return False
        return True


TrajectoryFilter = ParticleFilter | ChargeFilter | AttributeIntervalFilter


def filter_accept(filters: Iterable[TrajectoryFilter], trajectory: Trajectory) -> bool:
    """Conjunction over the chain; invert flips a member; empty chain accepts."""
    for f in filters:
        ok = f.passes(trajectory)
        if f.invert:
            ok = not ok
        if not ok:
            return False
    return True


# --- styling models ---------------------------------------------------------

@dataclass(frozen=True)
class DrawStyle:
    colour: Colour
    draw_line: bool = True
    draw_points: bool = False
    point_size: float = 2.0


@dataclass
class DrawByCharge:
    name: str = "drawByCharge-0"
    positive: Colour = BLUE
    negative: Colour = RED
    neutral: Colour = GREEN
    draw_step_points: bool = False
    step_pts_size: float = 2.0

    def set_colour(self, charge_sign: int, colour: Colour) -> None:
        if charge_sign > 0:
            self.positive = colour
        elif charge_sign < 0:
            self.negative = colour
        else:
            self.neutral = colour

    def style(self, trajectory: Trajectory) -> DrawStyle:
        if trajectory.charge > 0:
            colour = self.positive
        elif trajectory.charge < 0:
            colour = self.negative
        else:
            colour = self.neutral
        return DrawStyle(colour, True, self.draw_step_points, self.step_pts_size)


@dataclass
class DrawByParticleID:
    name: str = "drawByParticleID-0"
    colour_map: dict[str, Colour] = field(default_factory=dict)
    default_colour: Colour = GRAY
    draw_step_points: bool = False
    step_pts_size: float = 2.0

    def style(self, trajectory: Trajectory) -> DrawStyle:
        colour = self.colour_map.get(trajectory.particle_name, self.default_colour)
        return DrawStyle(colour, True, self.draw_step_points, self.step_pts_size)


TrajectoryModel = DrawByCharge | DrawByParticleID

DEFAULT_TRAJECTORY_MODEL = DrawByCharge(name="drawByCharge-default")


def style_trajectory(model: TrajectoryModel | None, trajectory: Trajectory) -> DrawStyle:
    return (model or DEFAULT_TRAJECTORY_MODEL).style(trajectory)


def trajectory_attributes(t: Trajectory) -> list[AttValue]:
    """The implemented trajectory attribute subset, rendered with best units."""
    values = [
        AttValue("CPN", t.creator_process),
        AttValue("Ch", f"{t.charge:.6g} e+"),
        AttValue("ID", str(t.track_id)),
        AttValue("IKE", units.fmt(t.initial_kinetic_energy, "energy")),
        AttValue("IMag", units.fmt(float(np.linalg.norm(t.initial_momentum)), "energy")),
        AttValue("IMom", units.fmt_vector(t.initial_momentum, "energy")),
        AttValue("NTP", str(len(t.points))),
        AttValue("PDG", str(t.pdg_encoding)),
        AttValue("PID", str(t.parent_id)),
        AttValue("PN", t.particle_name),
    ]
    assert set(v.key for v in values) == set(TRAJECTORY_ATTDEFS)
    return values


def hit_attributes(h: Hit) -> list[AttValue]:
    return [
        AttValue("Pos", units.fmt_vector(h.position, "length")),
        AttValue("EDep", units.fmt(h.energy_deposit, "energy")),
        AttValue("Det", h.detector_name),
        *h.extra,
    ]
