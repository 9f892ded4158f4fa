"""Tessellation: counts, edge kinds, planarity, winding, volume convergence."""

import math

import numpy as np
import pytest

from multivis.errors import SolidError
from multivis.solids import (
    Box,
    Cone,
    Sphere,
    Subtraction,
    Trd,
    Tube,
    analytic_volume,
    edge_use_counts,
    face_normal,
    gap,
    max_planarity_error,
    signed_volume,
    tessellate,
)
from multivis.transform import Transform

from oracles import random_primitive


def test_box_mesh_counts():
    m = tessellate(Box("b", 1, 1, 1), 24)
    assert len(m.vertices) == 8
    assert len(m.faces) == 6
    assert len(m.real_edges()) == 12
    assert len(m.auxiliary_edges()) == 0
    assert signed_volume(m) == pytest.approx(8.0)


def test_tube_side_facets_and_auxiliary_edges():
    m = tessellate(Tube("t", 0, 1, 1), 24)
    quads = [f for f in m.faces if len(f) == 4]
    assert len(quads) == 24  # one side facet per division
    assert len(m.faces) == 26  # plus two full-disk caps
    aux = m.auxiliary_edges()
    assert len(aux) == 24  # the lateral seams of the smooth wall
    assert len(m.real_edges()) == 48  # both rims


def test_minimum_segments_enforced():
    with pytest.raises(SolidError):
        tessellate(Tube("t", 0, 1, 1), 11)
    tessellate(Tube("t", 0, 1, 1), 12)


def test_sphere_volume_within_half_percent_at_100():
    s = Sphere("s", 0, 1)
    m = tessellate(s, 100)
    assert signed_volume(m) == pytest.approx(analytic_volume(s), rel=0.005)


@pytest.mark.parametrize(
    "solid",
    [
        Tube("t", 0.4, 1.0, 0.8, 0.3, 4.0),
        Cone("c", 0, 1.0, 0.2, 1.5, 0.9),
        Sphere("s", 0.5, 1.0, 0.5, 3.5, 0.4, 1.9),
    ],
)
def test_curved_volume_error_below_one_percent_at_100(solid):
    m = tessellate(solid, 100)
    assert signed_volume(m) == pytest.approx(analytic_volume(solid), rel=0.01)


def test_faces_planar_within_tolerance():
    rng = np.random.default_rng(9)
    for _ in range(10):
        solid = random_primitive(rng)
        m = tessellate(solid, 16)
        assert max_planarity_error(m) < 1e-6


def test_primitive_meshes_are_closed():
    rng = np.random.default_rng(10)
    for _ in range(10):
        solid = random_primitive(rng)
        counts = edge_use_counts(tessellate(solid, 16))
        assert set(counts.values()) == {2}


def test_face_windings_point_outward():
    rng = np.random.default_rng(12)
    for _ in range(8):
        solid = random_primitive(rng)
        m = tessellate(solid, 16)
        assert signed_volume(m) > 0
        for face in m.faces:
            pts = m.face_points(face)
            n = face_normal(pts)
            nn = np.linalg.norm(n)
            if nn < 1e-12:
                continue
            n = n / nn
            c = pts.mean(axis=0)
            eps = 1e-6
            outside = gap(solid, (c + eps * n)[None, :])[0]
            inside = gap(solid, (c - eps * n)[None, :])[0]
            assert outside > inside


def test_trd_mesh_is_simple():
    m = tessellate(Trd("d", 1, 0.5, 0.8, 1.2, 1), 32)
    assert len(m.faces) == 6
    assert len(m.real_edges()) == 12
    assert signed_volume(m) == pytest.approx(analytic_volume(Trd("d", 1, 0.5, 0.8, 1.2, 1)))


def test_partial_arc_gets_proportional_divisions():
    quarter = Tube("q", 0, 1, 1, 0, math.pi / 2)
    m = tessellate(quarter, 24)
    side_quads = [f for f in m.faces if len(f) == 4]
    assert len(side_quads) == 6 + 2  # quarter arc: 24/4 side facets + 2 phi faces


def test_subtraction_drops_carved_faces():
    left = Box("A", 1, 1, 1)
    sub = Subtraction(
        "s", left, Box("B", 1, 1, 1), Transform.translate(1.0, 1.0, 1.0)
    )
    whole = tessellate(left, 12)
    carved = tessellate(sub, 12)
    # the +x, +y and +z faces have centroids on the carve boundary and stay;
    # nothing is added
    assert len(carved.faces) <= len(whole.faces)
    offs = Subtraction(
        "s2", left, Box("B", 0.6, 0.6, 2.0), Transform.translate(1.0, 0.0, 0.0)
    )
    carved2 = tessellate(offs, 12)
    assert len(carved2.faces) == len(whole.faces) - 1  # +x face dropped
