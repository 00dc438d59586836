import math

import numpy as np
import pytest

from spherigon import (
    ArcTag,
    CrossingKind,
    GreatArc,
    SpacePolygon,
    SphericalPolygon,
    analyze,
    analyze_space_polygon,
    arcs_relation,
    classify_vertices,
    count_cusps,
    count_flattenings_direct,
    count_inflections,
    delete_vertex,
    epsilon_signs,
    find_intersections,
    find_removable_vertex,
    hemisphere_witness,
    positive_combination,
    tangent_indicatrix,
)
from spherigon.errors import (
    DegenerateTriple,
    PreconditionViolated,
    TooFewVertices,
    VertexOnEdge,
)
from spherigon.generators import GeneratorSpec, generate
from spherigon.oracles import oracle_crossings
from spherigon.sphere_core import neg, unit

from conftest import sph


def small_circle_polygon(n, z=2.0, phase=0.17):
    return SphericalPolygon.from_points(
        [(math.cos(2 * math.pi * k / n + phase), math.sin(2 * math.pi * k / n + phase), z) for k in range(n)]
    )


class TestEpsilonSigns:
    def test_tetra_alternates(self, tetra_quad):
        signs = epsilon_signs(tetra_quad).signs
        assert signs in ((1, -1, 1, -1), (-1, 1, -1, 1))

    def test_convex_constant(self):
        signs = epsilon_signs(small_circle_polygon(8)).signs
        assert len(set(signs)) == 1

    def test_reversal_negates_and_reindexes(self, hex6):
        fwd = epsilon_signs(hex6)
        rev = epsilon_signs(hex6.reversed_())
        n = hex6.n
        # reversed vertex r_k = u_{n-1-k}; eps_rev[k] = -eps[(n-3-k) mod n]
        for k in range(n):
            assert rev.signs[k] == -fwd.signs[(n - 3 - k) % n]
        assert fwd.sign_changes() == rev.sign_changes()

    def test_degenerate_raises(self):
        q = SphericalPolygon((unit(1, 0, 0), unit(1, 1, 0), unit(0, 1, 0), unit(-1, -1, 1)))
        with pytest.raises(DegenerateTriple):
            epsilon_signs(q)


class TestCountInflections:
    def test_tetra(self, tetra_quad):
        assert count_inflections(tetra_quad) == 4

    def test_convex_octagon(self):
        assert count_inflections(small_circle_polygon(8)) == 0

    def test_hexagon_fixture(self, hex6):
        assert count_inflections(hex6) == 6

    def test_even_and_reflection_invariant(self):
        for seed in range(40):
            q = generate(GeneratorSpec("uniform", 4 + seed % 9, seed))
            i = count_inflections(q)
            assert i % 2 == 0
            assert count_inflections(q.reflected()) == i
            assert count_inflections(q.rolled(2)) == i


class TestFindIntersections:
    def test_hexagon_fixture_empty(self, hex6):
        assert find_intersections(hex6) == []
        assert oracle_crossings(hex6, samples_per_arc=2000) == set()

    def test_figure_eight_single_cross(self, fig8):
        recs = find_intersections(fig8)
        assert [(r.i, r.j, r.kind) for r in recs] == [(0, 3, CrossingKind.SELF)]

    def test_tetra_two_antipodal(self, tetra_quad):
        recs = find_intersections(tetra_quad)
        assert [(r.i, r.j, r.kind) for r in recs] == [
            (0, 2, CrossingKind.ANTIPODAL),
            (1, 3, CrossingKind.ANTIPODAL),
        ]
        assert oracle_crossings(tetra_quad, samples_per_arc=4000) == {
            (0, 2, "antipodal"),
            (1, 3, "antipodal"),
        }

    def test_antipodal_equals_cross_with_reflected_copy(self):
        for seed in (3, 5, 8, 13):
            q = generate(GeneratorSpec("uniform", 8, seed))
            got = {
                (r.i, r.j)
                for r in find_intersections(q)
                if r.kind is CrossingKind.ANTIPODAL
            }
            via_reflection = set()
            n = q.n
            for i in range(n - 1):
                for j in range(i + 1, n):
                    if (i + 1) % n == j or (j + 1) % n == i:
                        continue  # edges sharing a vertex cannot cross a reflection
                    rel = arcs_relation(q.edge(i), q.edge(j).reflect())
                    if rel.tag is ArcTag.CROSS:
                        via_reflection.add((i, j))
            assert got == via_reflection

    def test_vertex_on_edge_detected(self):
        a, b = sph(-40, 0), sph(40, 0)
        mid = sph(5, 0)  # exactly on the open equator arc (a, b)
        q = SphericalPolygon((a, b, sph(60, 50), mid, sph(-60, 55)))
        with pytest.raises((VertexOnEdge, DegenerateTriple)):
            find_intersections(q)

    def test_oracle_agreement_random(self):
        for seed in range(30):
            q = generate(GeneratorSpec("uniform", 4 + seed % 9, seed + 100))
            got = {(r.i, r.j, r.kind.value) for r in find_intersections(q)}
            assert got == oracle_crossings(q, samples_per_arc=4000), f"seed {seed}"

    def test_witness_antipodal_sides(self, tetra_quad):
        from spherigon.sphere_core import strictly_inside_arc

        for r in find_intersections(tetra_quad):
            assert strictly_inside_arc(r.witness, tetra_quad.edge(r.i))
            assert strictly_inside_arc(neg(r.witness), tetra_quad.edge(r.j))


class TestCountCusps:
    def test_convex_zero(self):
        assert count_cusps(small_circle_polygon(6)) == 0

    def test_tetra_two(self, tetra_quad):
        assert count_cusps(tetra_quad) == 2

    def test_isolated_inflections_no_cusp(self, hex6):
        # triangle-wave: every edge pair is an inflection, flags all true
        assert count_cusps(hex6) == 3

    def test_two_isolated_changes(self):
        # (+,+,+,-): flags at the two sign-change slots only, not adjacent
        q = None
        for seed in range(200):
            cand = generate(GeneratorSpec("uniform", 6, seed))
            signs = epsilon_signs(cand).signs
            flags = epsilon_signs(cand).inflection_flags()
            if sum(flags) == 2 and not any(
                flags[k] and flags[(k + 1) % 6] for k in range(6)
            ):
                q = cand
                break
        assert q is not None
        assert count_cusps(q) == 0


class TestClassifyVertices:
    def test_hexagon_pattern(self, hex6):
        cls = classify_vertices(hex6)
        assert [c.essential for c in cls] == [True, False, True, False, True, False]
        assert sum(c.excellent for c in cls) >= 2
        assert all(c.good for c in cls)

    def test_excellent_implies_good(self):
        for seed in range(30):
            q = generate(GeneratorSpec("uniform", 5 + seed % 7, seed))
            for c in classify_vertices(q):
                assert c.good or not c.excellent

    def test_simple_balanced_pentagon_bounds(self):
        for seed in range(25):
            q = generate(GeneratorSpec("balanced_simple", 5, seed))
            cls = classify_vertices(q)
            assert sum(c.good for c in cls) >= 4
            assert sum(not c.essential for c in cls) >= 2

    def test_convex_all_good(self, convex_pentagon):
        assert all(c.good for c in classify_vertices(convex_pentagon))

    def test_too_few(self, tetra_quad):
        with pytest.raises(TooFewVertices):
            classify_vertices(tetra_quad)


class TestFindRemovableVertex:
    def test_seven_gon(self):
        for seed in range(15):
            q = generate(GeneratorSpec("balanced_simple_antipodal_free", 7, seed))
            i = find_removable_vertex(q)
            assert i is not None
            out = delete_vertex(q, i)
            assert hemisphere_witness(out.vertices) is None
            assert find_intersections(out) == []

    def test_returned_vertex_never_essential(self):
        for seed in range(40):
            q = generate(GeneratorSpec("balanced_simple_antipodal_free", 7, seed + 50))
            cls = classify_vertices(q)
            if sum(c.essential for c in cls) != 3:
                continue
            i = find_removable_vertex(q)
            assert i is not None and not cls[i].essential

    def test_preconditions(self, hex6, fig8):
        with pytest.raises(PreconditionViolated):
            find_removable_vertex(hex6)  # n = 6 < 7
        with pytest.raises(PreconditionViolated):
            find_removable_vertex(
                SphericalPolygon(fig8.vertices[:5] + (sph(-60, 60), sph(-80, 10)))
            )


class TestSpacePolygons:
    def test_flattenings_match_indicatrix_inflections(self):
        rng = np.random.default_rng(9)
        for _ in range(40):
            p = SpacePolygon.from_points(rng.standard_normal((6 + int(rng.integers(5)), 3)))
            try:
                q = tangent_indicatrix(p)
                i = count_inflections(q)
            except Exception:
                continue
            f, tp, tm = analyze_space_polygon(p)
            assert f == i == count_flattenings_direct(p)

    def test_hexagon_lift(self, hex6):
        # close up a space polygon whose edge directions are exactly the
        # hexagon fixture: strictly positive weights with zero weighted sum
        # exist because the vertex set is balanced.
        dirs = [np.asarray(v) for v in hex6.vertices]
        total = np.sum(dirs, axis=0)
        nu = np.asarray(positive_combination(hex6.vertices, tuple(-total / np.linalg.norm(total))))
        combo = np.sum([w * d for w, d in zip(nu, dirs)], axis=0)
        r = float(combo @ (-total)) / float(total @ total)
        assert r > 0
        weights = nu + r
        assert weights.min() > 0
        edges = [w * d for w, d in zip(weights, dirs)]
        assert np.allclose(np.sum(edges, axis=0), 0.0, atol=1e-12)
        verts = np.cumsum([np.zeros(3)] + edges[:-1], axis=0)
        p = SpacePolygon.from_points(verts)
        f, tp, tm = analyze_space_polygon(p)
        assert (f, tp, tm) == (6, 0, 0)

    def test_perturbed_planar_polygon(self):
        heights = (0.15, 0.01, -0.02, 0.17, -0.015, 0.025)
        pts = [
            (math.cos(t), math.sin(t), heights[k])
            for k, t in enumerate(np.linspace(0, 2 * math.pi, 7)[:-1])
        ]
        p = SpacePolygon.from_points(pts)
        f, _, _ = analyze_space_polygon(p)
        assert f == count_inflections(tangent_indicatrix(p))
        assert f == count_flattenings_direct(p)


class TestAnalyze:
    def test_hexagon_fixture(self, hex6):
        rep = analyze(hex6)
        assert (rep.inflections, rep.dplus, rep.dminus) == (6, 0, 0)
        assert rep.balanced and rep.simple and not rep.symmetric

    def test_tetra_quad(self, tetra_quad):
        rep = analyze(tetra_quad)
        # Both opposite edge pairs have balanced endpoints, so both carry an
        # antipodal crossing (witnesses near +-e1 and +-e3).
        assert (rep.inflections, rep.dplus, rep.dminus) == (4, 0, 2)
        assert rep.balanced and rep.simple
        assert rep.ess_count == 4 and rep.good_count == 4

    def test_d_is_sum(self):
        for seed in range(20):
            rep = analyze(generate(GeneratorSpec("uniform", 4 + seed % 9, seed + 7)))
            assert rep.d == rep.dplus + rep.dminus
            assert rep.simple == (rep.dplus == 0)

    def test_symmetric_polygon(self, symmetric_hexagon):
        rep = analyze(symmetric_hexagon)
        assert rep.symmetric and rep.balanced and rep.simple
        assert rep.dminus == 0

    def test_report_round_trip(self, hex6):
        rep = analyze(hex6)
        from spherigon import AnalysisReport

        assert AnalysisReport.from_obj(rep.to_obj()) == rep


class TestMonotonicity:
    def test_good_deletion_never_increases_inflections(self):
        for seed in range(25):
            q = generate(GeneratorSpec("balanced_simple", 6 + seed % 5, seed))
            i0 = count_inflections(q)
            for idx, c in enumerate(classify_vertices(q)):
                if c.good:
                    assert count_inflections(delete_vertex(q, idx)) <= i0
