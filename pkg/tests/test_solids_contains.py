"""Point classification: examples, tolerance band, and symmetry properties."""

import math

import numpy as np

from multivis.solids import (
    Box,
    Sphere,
    Subtraction,
    Tube,
    classify_many,
    contains,
    gap,
)
from multivis.transform import Transform

from oracles import random_primitive


def test_box_examples():
    b = Box("b", 1, 1, 1)
    assert contains(b, (0, 0, 0)) == "inside"
    assert contains(b, (1, 0, 0)) == "surface"
    assert contains(b, (1.1, 0, 0)) == "outside"


def test_surface_band_width():
    b = Box("b", 1, 1, 1)
    assert contains(b, (1 + 0.9e-9, 0, 0)) == "surface"
    assert contains(b, (1 + 2e-9, 0, 0)) == "outside"
    assert contains(b, (1 - 2e-9, 0, 0)) == "inside"


def test_subtraction_carved_region_is_outside():
    sub = Subtraction(
        "s", Box("A", 2, 2, 2), Box("B", 1, 1, 1), Transform.translate(2, 2, 2)
    )
    assert contains(sub, (1.5, 1.5, 1.5)) == "outside"  # inside the carve
    assert contains(sub, (0, 0, 0)) == "inside"
    assert contains(sub, (1.0, 1.0, 1.0)) == "surface"  # carve boundary


def test_tube_wedge_and_bore():
    t = Tube("t", 0.5, 1.0, 1.0, 0.0, math.pi / 2)
    assert contains(t, (0.75, 0.01, 0)) == "inside"
    assert contains(t, (0.75, -0.01, 0)) == "outside"  # behind the start plane
    assert contains(t, (0.2, 0.2, 0)) == "outside"  # in the bore
    assert contains(t, (0.01, 0.75, 0)) == "inside"


def test_box_symmetry_under_sign_flips():
    rng = np.random.default_rng(3)
    b = Box("b", 0.8, 1.3, 2.1)
    pts = rng.uniform(-2.5, 2.5, size=(500, 3))
    base = classify_many(b, pts)
    for axis in range(3):
        flipped = pts.copy()
        flipped[:, axis] *= -1
        assert np.array_equal(classify_many(b, flipped), base)


def test_full_revolution_solids_are_phi_invariant():
    rng = np.random.default_rng(4)
    solids = [Tube("t", 0.3, 1.0, 1.0), Sphere("s", 0.2, 1.0)]
    pts = rng.uniform(-1.2, 1.2, size=(400, 3))
    for solid in solids:
        base = classify_many(solid, pts)
        for angle in (0.4, 1.7, 3.9):
            c, s = math.cos(angle), math.sin(angle)
            rot = pts @ np.array([[c, s, 0], [-s, c, 0], [0, 0, 1]])
            assert np.array_equal(classify_many(solid, rot), base)


def test_gap_sign_matches_contains():
    rng = np.random.default_rng(5)
    for _ in range(20):
        solid = random_primitive(rng)
        pts = rng.uniform(-2.5, 2.5, size=(200, 3))
        g = gap(solid, pts)
        codes = classify_many(solid, pts)
        assert np.all((codes == 1) == (g < -1e-9))
        assert np.all((codes == -1) == (g > 1e-9))
