"""Ray intersection: worked examples, postconditions, and the march oracle."""

import numpy as np
import pytest

from multivis.solids import (
    Box,
    Ray,
    Sphere,
    Subtraction,
    bounding_box,
    contains,
    first_hits,
    gap,
    ray_intersect,
)
from multivis.transform import Transform

from oracles import aimed_rays, fine_march_check, march_first_hits, random_primitive


def test_box_head_on():
    hit = ray_intersect(Box("b", 1, 1, 1), Ray((0, 0, -10), (0, 0, 1)))
    assert hit is not None and hit.entering
    assert hit.distance == pytest.approx(9.0, abs=1e-12)
    assert np.allclose(hit.normal, [0, 0, -1])


def test_sphere_grazing_offset_misses():
    assert ray_intersect(Sphere("s", 0, 1), Ray((0, 2, -10), (0, 0, 1))) is None


def test_ray_from_inside_reports_exit():
    hit = ray_intersect(Box("b", 1, 1, 1), Ray((0, 0, 0), (1, 0, 0)))
    assert hit is not None and not hit.entering
    assert hit.distance == pytest.approx(1.0)
    assert np.allclose(hit.normal, [1, 0, 0])


def test_surface_start_counts_as_exiting():
    b = Box("b", 1, 1, 1)
    assert ray_intersect(b, Ray((1, 0, 0), (1, 0, 0))) is None
    inward = ray_intersect(b, Ray((1, 0, 0), (-1, 0, 0)))
    assert inward is not None and not inward.entering
    assert inward.distance == pytest.approx(2.0)


def test_subtraction_hits_carved_floor():
    sub = Subtraction(
        "s", Box("A", 3, 3, 3), Box("B", 1, 1, 1), Transform.translate(3, 3, 3)
    )
    hit = ray_intersect(sub, Ray((2.5, 2.5, 10), (0, 0, -1)))
    assert hit is not None and hit.entering
    assert hit.distance == pytest.approx(8.0)  # solid resumes at z = 2
    assert np.allclose(hit.normal, [0, 0, 1])


def test_entering_hits_land_inside():
    rng = np.random.default_rng(21)
    for _ in range(8):
        solid = random_primitive(rng)
        origins, dirs = aimed_rays(solid, rng, 300)
        t, normals, entering, hit = first_hits(solid, origins, dirs)
        assert hit.all()  # aimed at interior points, must hit
        assert entering.all()
        probe = origins + (t + 1e-7)[:, None] * dirs
        assert np.all(gap(solid, probe) <= 1e-9)
        # outward normal: stepping along it increases the gap
        at = origins + t[:, None] * dirs
        fwd = gap(solid, at + 1e-6 * normals)
        back = gap(solid, at - 1e-6 * normals)
        assert np.all(fwd > back)


def _agreement(solid, n_rays, rng, step=1e-3, tol=1e-5):
    origins, dirs = aimed_rays(solid, rng, n_rays)
    t_impl, _, _, hit = first_hits(solid, origins, dirs)
    t_oracle = march_first_hits(solid, origins, dirs, step=step)
    mismatches = 0
    for i in range(n_rays):
        impl_hit = bool(hit[i])
        oracle_hit = bool(np.isfinite(t_oracle[i]))
        if impl_hit and oracle_hit and abs(t_impl[i] - t_oracle[i]) <= tol:
            continue
        if not impl_hit and not oracle_hit:
            continue
        if impl_hit and (not oracle_hit or t_oracle[i] > t_impl[i] + tol):
            # the coarse march can step over a sliver; confirm at fine pitch
            if fine_march_check(solid, origins[i], dirs[i], float(t_impl[i])):
                continue
        mismatches += 1
    return mismatches


@pytest.mark.parametrize("kind", ["box", "tube", "cone", "trd", "sphere"])
def test_march_oracle_agreement(kind):
    rng = np.random.default_rng(hash(kind) % 2**31)
    solid = random_primitive(rng, kind)
    assert _agreement(solid, 1000, rng) == 0


def test_march_oracle_agreement_subtraction():
    rng = np.random.default_rng(77)
    sub = Subtraction(
        "s",
        random_primitive(rng, "box"),
        random_primitive(rng, "sphere"),
        Transform.translate(0.3, -0.2, 0.4),
    )
    assert _agreement(sub, 500, rng) == 0


def test_miss_beyond_bbox():
    solid = Box("b", 1, 1, 1)
    box = bounding_box(solid)
    assert box.half_diagonal() == pytest.approx(np.sqrt(3))
    assert ray_intersect(solid, Ray((5, 5, 5), (0, 0, 1))) is None


def test_direction_normalised_on_construction():
    r = Ray((0, 0, 0), (0, 0, 2))
    assert np.allclose(r.direction, [0, 0, 1])
    hit = ray_intersect(Box("b", 1, 1, 1), Ray((0, 0, -4), (0, 0, 3)))
    assert hit.distance == pytest.approx(3.0)
    assert contains(Box("b", 1, 1, 1), (0, 0, -1)) == "surface"
