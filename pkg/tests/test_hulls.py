import math

import numpy as np
import pytest

from spherigon import (
    Lune,
    LuneLocation,
    SphericalPolygon,
    classify_vertices,
    exterior_pocket_good_vertices,
    interior_of,
    lune_contains,
    spherical_convex_hull,
    triangulate_interior,
    unit,
)
from spherigon.errors import (
    AmbiguousInterior,
    BalancedInput,
    ConvexInput,
    NotSimple,
    TooFewVertices,
)
from spherigon.generators import GeneratorSpec, generate
from spherigon.oracles import sample_arc
from spherigon.sphere_core import neg

from conftest import sph

E1, E2, E3 = (1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0)


class TestLune:
    def test_between_sides(self):
        lune = Lune(cusp=E3, p=E1, q=E2)
        assert lune_contains(lune, unit(1, 1, 0)) is LuneLocation.INTERIOR

    def test_opposite(self):
        lune = Lune(cusp=E3, p=E1, q=E2)
        assert lune_contains(lune, unit(-1, -1, 0)) is LuneLocation.OUTSIDE

    def test_on_side(self):
        lune = Lune(cusp=E3, p=E1, q=E2)
        assert lune_contains(lune, unit(1, 0, 1)) is LuneLocation.BOUNDARY

    def test_cusp_segments_stay_inside(self):
        # every segment from a cusp to an interior point stays in the closed lune
        rng = np.random.default_rng(6)
        lune = Lune(cusp=E3, p=E1, q=unit(0.2, 1, 0))
        found = 0
        while found < 50:
            v = rng.standard_normal(3)
            x = unit(*v)
            if lune_contains(lune, x) is not LuneLocation.INTERIOR:
                continue
            found += 1
            for pt in sample_arc(lune.cusp, x, 200)[1:-1]:
                loc = lune_contains(lune, tuple(pt))
                assert loc is not LuneLocation.OUTSIDE


class TestSphericalConvexHull:
    def test_triangle_with_interior_points(self):
        pts = [E1, E2, unit(1, 1, 1), unit(0.8, 0.75, 0.7), unit(0.75, 0.8, 0.72)]
        hull = spherical_convex_hull(pts)
        assert sorted(hull.boundary) == [0, 1, 2]
        assert all(hull.contains(p) for p in pts)

    def test_small_circle_all_on_boundary(self):
        pts = [unit(math.cos(t), math.sin(t), 1.5) for t in np.linspace(0, 2 * math.pi, 9)[:-1]]
        hull = spherical_convex_hull(pts)
        assert sorted(hull.boundary) == list(range(8))

    def test_contains_all_inputs_random(self):
        rng = np.random.default_rng(10)
        for _ in range(30):
            pts = [
                unit(*(rng.standard_normal(2) * 0.5).tolist(), 1.0) for _ in range(8)
            ]
            hull = spherical_convex_hull(pts)
            assert all(hull.contains(p) for p in pts)

    def test_idempotent(self):
        pts = [E1, E2, unit(1, 1, 1), unit(0.8, 0.75, 0.7)]
        hull = spherical_convex_hull(pts)
        again = spherical_convex_hull(hull.boundary_points())
        assert len(again.boundary) == len(hull.boundary)
        assert set(again.boundary) == set(range(len(hull.boundary)))

    def test_balanced_input_rejected(self, tetra_quad):
        with pytest.raises(BalancedInput):
            spherical_convex_hull(tetra_quad.vertices)


class TestInteriorOf:
    def test_reflected_polygon_is_exterior(self, hex6):
        inside = interior_of(hex6)
        for v in hex6.vertices:
            assert not inside(neg(v))

    def test_convex_centroid_interior(self, convex_pentagon):
        inside = interior_of(convex_pentagon)
        centroid = unit(*np.mean(np.asarray(convex_pentagon.vertices), axis=0))
        assert inside(centroid)
        assert not inside(neg(centroid))

    def test_two_reference_agreement(self, hex6):
        # parity from the default references agrees with parity from an
        # explicitly supplied second exterior reference
        inside1 = interior_of(hex6)
        inside2 = interior_of(hex6, reference=neg(hex6.vertices[2]))
        rng = np.random.default_rng(3)
        for _ in range(200):
            x = unit(*rng.standard_normal(3))
            assert inside1(x) == inside2(x)

    def test_not_simple_rejected(self, fig8):
        with pytest.raises(NotSimple):
            interior_of(fig8)

    def test_ambiguous_for_balanced_with_antipodal(self, tetra_quad):
        with pytest.raises(AmbiguousInterior):
            interior_of(tetra_quad)


class TestTriangulateInterior:
    def test_quad_two_triangles(self):
        quad = SphericalPolygon.from_points(
            [(0.4, 0.1, 1), (0.1, 0.5, 1), (-0.4, -0.05, 1), (0.02, -0.45, 1)]
        )
        tri = triangulate_interior(quad)
        assert len(tri.triangles) == 2
        assert len(tri.diagonals) == 1
        assert sorted(tri.leaves()) == [0, 1]

    def test_hexagon_fixture(self, hex6):
        tri = triangulate_interior(hex6)
        assert len(tri.triangles) == hex6.n - 2
        assert len(tri.diagonals) == hex6.n - 3
        assert tri.is_tree()
        assert len(tri.leaves()) >= 2

    def test_leaf_middles_are_excellent(self, hex6):
        cls = classify_vertices(hex6)
        middles = triangulate_interior(hex6).leaf_middle_vertices()
        assert len(middles) >= 2
        for m in middles:
            assert cls[m].excellent

    def test_counts_on_generated_polygons(self):
        for seed in range(10):
            q = generate(GeneratorSpec("balanced_simple_antipodal_free", 6 + seed % 4, seed))
            tri = triangulate_interior(q)
            assert len(tri.triangles) == q.n - 2
            assert len(tri.diagonals) == q.n - 3
            assert tri.is_tree()
            cls = classify_vertices(q)
            for m in tri.leaf_middle_vertices():
                assert cls[m].excellent

    def test_too_few(self):
        t = SphericalPolygon((E1, E2, E3))
        with pytest.raises(TooFewVertices):
            triangulate_interior(t)


class TestExteriorPockets:
    def test_reflex_pentagon(self, reflex_pentagon):
        assert exterior_pocket_good_vertices(reflex_pentagon) == [1]

    def test_convex_rejected(self, convex_pentagon):
        with pytest.raises(ConvexInput):
            exterior_pocket_good_vertices(convex_pentagon)

    def test_union_with_interior_leaves_at_least_three(self, reflex_pentagon):
        middles = set(triangulate_interior(reflex_pentagon).leaf_middle_vertices())
        pockets = set(exterior_pocket_good_vertices(reflex_pentagon))
        assert len(middles | pockets) >= 3

    def test_pocket_vertices_are_good(self):
        rng = np.random.default_rng(44)
        done = 0
        while done < 12:
            radii = rng.uniform(0.4, 1.3, 6)
            angles = np.sort(rng.uniform(0, 2 * math.pi, 6))
            if np.min(np.diff(angles)) < 0.25:
                continue
            pts = [(r * math.cos(a), r * math.sin(a), 1.0) for r, a in zip(radii, angles)]
            q = SphericalPolygon.from_points(pts)
            try:
                pockets = exterior_pocket_good_vertices(q)
            except ConvexInput:
                continue
            cls = classify_vertices(q)
            assert pockets
            for v in pockets:
                assert cls[v].good
            done += 1

    def test_hemisphere_good_count_bound(self):
        # simple hemisphere-contained polygons have at least 3 good vertices
        rng = np.random.default_rng(45)
        done = 0
        while done < 15:
            pts = [(x, y, 1.0) for x, y in rng.uniform(-1, 1, (6, 2))]
            try:
                q = SphericalPolygon.from_points(pts)
                from spherigon import analyze

                rep = analyze(q)
            except Exception:
                continue
            if not rep.simple or rep.balanced:
                continue
            assert rep.good_count >= 3
            done += 1
