"""Built-in demo geometry: a four-volume detector in the style of the
classic beginner example (air world, water envelope, tissue cone, bone trapezoid)."""

from __future__ import annotations

from .geometry import GeometryModel, LogicalVolume, Material, PhysicalVolume
from .solids import Box, Cone, Trd
from .transform import Transform


def build_b1() -> GeometryModel:
    air = Material("G4_AIR", density_g_cm3=1.20479e-3, state="gas")
    water = Material("G4_WATER", density_g_cm3=1.0, state="liquid")
    tissue = Material("G4_A-150_TISSUE", density_g_cm3=1.127, state="solid")
    bone = Material("G4_BONE_COMPACT_ICRU", density_g_cm3=1.85, state="solid")

    world_lv = LogicalVolume("World", Box("World", 120.0, 120.0, 180.0), air)
    env_lv = LogicalVolume("Envelope", Box("Envelope", 100.0, 100.0, 150.0), water)
    shape1_lv = LogicalVolume(
        "Shape1", Cone("Shape1", 0.0, 20.0, 0.0, 40.0, 30.0), tissue
    )
    shape2_lv = LogicalVolume(
        "Shape2", Trd("Shape2", 60.0, 60.0, 50.0, 80.0, 30.0), bone
    )

    world_lv.place("Envelope", env_lv)
    env_lv.place("Shape1", shape1_lv, Transform.translate(0.0, 20.0, -70.0))
    env_lv.place("Shape2", shape2_lv, Transform.translate(0.0, -10.0, 70.0))

    world = PhysicalVolume("World", world_lv)
    return GeometryModel(world)
