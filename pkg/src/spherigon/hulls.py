"""Spherical convex hulls, lunes, interior selection, and triangulation.

The interior of a simple polygon is selected by the region that avoids the
reflected polygon (balanced, antipodal-free case) or the bounded gnomonic
component (hemisphere-contained case); membership is decided by crossing
parity against a reference point known to be exterior. Ear clipping runs
directly on the sphere because the interior of a balanced polygon fits in
no hemisphere.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.spatial import ConvexHull as _PlanarHull

from .analysis import CrossingKind, find_intersections
from .errors import (
    AmbiguousInterior,
    BalancedInput,
    ConvexInput,
    DegenerateTriple,
    EarNotFound,
    InvalidArc,
    NotSimple,
    TooFewVertices,
)
from .polygon import SphericalPolygon
from .sphere_core import (
    DEGENERACY_TOL,
    ArcTag,
    GreatArc,
    Vec3,
    arc_midpoint,
    arcs_relation,
    cross,
    dot,
    interior_hemisphere_witness,
    neg,
    norm,
    normalize,
    oriented_sign,
    point_in_spherical_triangle,
    points_antipodal,
    points_equal,
    scale,
    add,
)


class LuneLocation(enum.Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


@dataclass(frozen=True)
class Lune:
    """Intersection of the two closed hemispheres with boundary circles
    through the cusp pair {cusp, -cusp} and through p resp. q, each
    containing the other side point."""

    cusp: Vec3
    p: Vec3
    q: Vec3


def lune_contains(
    lune: Lune, x: Vec3, tol: float = DEGENERACY_TOL
) -> LuneLocation:
    ref1 = oriented_sign(lune.cusp, lune.p, lune.q, tol)
    ref2 = oriented_sign(lune.cusp, lune.q, lune.p, tol)
    if ref1 == 0 or ref2 == 0:
        raise DegenerateTriple("lune cusp and side points are degenerate")
    s1 = oriented_sign(lune.cusp, lune.p, x, tol) * ref1
    s2 = oriented_sign(lune.cusp, lune.q, x, tol) * ref2
    if s1 < 0 or s2 < 0:
        return LuneLocation.OUTSIDE
    if s1 == 0 or s2 == 0:
        return LuneLocation.BOUNDARY
    return LuneLocation.INTERIOR


@dataclass(frozen=True)
class SphericalConvexHull:
    """Hull boundary as indices into the input, counterclockwise as seen
    from the supporting hemisphere pole."""

    boundary: tuple[int, ...]
    witness: Vec3
    points: tuple[Vec3, ...]

    def boundary_points(self) -> tuple[Vec3, ...]:
        return tuple(self.points[i] for i in self.boundary)

    def contains(self, x: Vec3, tol: float = DEGENERACY_TOL) -> bool:
        """Closed containment (boundary counts as inside)."""
        bpts = self.boundary_points()
        m = len(bpts)
        # The normalized vertex sum lies in the hull cone, so it serves as
        # the interior reference for the edge-side tests.
        center = normalize(
            (
                sum(p[0] for p in bpts),
                sum(p[1] for p in bpts),
                sum(p[2] for p in bpts),
            )
        )
        for k in range(m):
            a, b = bpts[k], bpts[(k + 1) % m]
            ref = oriented_sign(a, b, center, tol)
            if oriented_sign(a, b, x, tol) * ref < 0:
                return False
        return True


def _tangent_basis(w: Vec3) -> tuple[Vec3, Vec3]:
    helper = (0.0, 0.0, 1.0) if abs(w[2]) < 0.9 else (1.0, 0.0, 0.0)
    e = normalize(cross(w, helper))
    f = normalize(cross(w, e))
    return e, f


def gnomonic(points: Sequence[Vec3], w: Vec3) -> np.ndarray:
    """Central projection onto the tangent plane at w (requires p . w > 0)."""
    e, f = _tangent_basis(w)
    out = np.empty((len(points), 2))
    for idx, p in enumerate(points):
        d = dot(p, w)
        if d <= 0.0:
            raise BalancedInput("point outside the open hemisphere of the witness")
        out[idx, 0] = dot(p, e) / d
        out[idx, 1] = dot(p, f) / d
    return out


def spherical_convex_hull(
    points: Sequence[Vec3], tol: float = DEGENERACY_TOL
) -> SphericalConvexHull:
    """Hull of a hemisphere-contained point set via the gnomonic chart.

    The chart center is a strictly interior supporting normal; the planar
    hull maps back because gnomonic projection preserves geodesics.
    """
    pts = tuple(points)
    if len(pts) < 3:
        raise ValueError("need at least three points")
    w = interior_hemisphere_witness(pts, tol)
    plane = gnomonic(pts, w)
    hull = _PlanarHull(plane)
    boundary = [int(i) for i in hull.vertices]  # qhull: counterclockwise in 2D
    area2 = 0.0
    m = len(boundary)
    for k in range(m):
        x1, y1 = plane[boundary[k]]
        x2, y2 = plane[boundary[(k + 1) % m]]
        area2 += x1 * y2 - x2 * y1
    if area2 < 0.0:
        boundary.reverse()
    return SphericalConvexHull(boundary=tuple(boundary), witness=w, points=pts)


def _probe_crosses_edge(probe: GreatArc, e: GreatArc, tol: float) -> bool:
    # Shared or antipodal endpoints put both great circles through the same
    # antipodal point pair; the minor arcs then cannot cross transversally.
    for p in (probe.a, probe.b):
        for v in (e.a, e.b):
            if points_equal(p, v) or points_antipodal(p, v):
                return False
    return arcs_relation(probe, e, tol).tag is ArcTag.CROSS


def _crossing_parity(
    edges: Sequence[GreatArc], x: Vec3, ref: Vec3, tol: float
) -> int:
    probe = GreatArc.of(x, ref)
    crossings = 0
    for e in edges:
        if _probe_crosses_edge(probe, e, tol):
            crossings += 1
    return crossings & 1


def _jittered_refs(base: Vec3, count: int = 6) -> list[Vec3]:
    refs = [base]
    e, f = _tangent_basis(base)
    for k in range(1, count):
        ang = 0.03 * k
        refs.append(
            normalize(
                add(
                    scale(base, math.cos(ang)),
                    add(scale(e, math.sin(ang) * math.cos(2.4 * k)), scale(f, math.sin(ang) * math.sin(2.4 * k))),
                )
            )
        )
    return refs


def _membership_from_refs(
    edges: Sequence[GreatArc], refs: Sequence[Vec3], tol: float
) -> Callable[[Vec3], bool]:
    def contains(x: Vec3) -> bool:
        for ref in refs:
            try:
                return _crossing_parity(edges, x, ref, tol) == 1
            except (DegenerateTriple, InvalidArc):
                continue
        raise AmbiguousInterior("all probe references were degenerate for this point")

    return contains


def interior_of(
    q: SphericalPolygon,
    tol: float = DEGENERACY_TOL,
    reference: Optional[Vec3] = None,
) -> Callable[[Vec3], bool]:
    """Point-membership predicate for the interior region of a simple polygon.

    Balanced and antipodal-free: the component of the complement avoiding
    the reflected polygon. Hemisphere-contained: the bounded component of
    the gnomonic chart. An explicit exterior reference point may be supplied
    (used by the two-reference consistency oracle).
    """
    recs = find_intersections(q, tol)
    if any(r.kind is CrossingKind.SELF for r in recs):
        raise NotSimple("polygon has self-intersections")
    edges = [q.edge(i) for i in range(q.n)]
    from .sphere_core import hemisphere_witness  # local to avoid cycle at import

    balanced = hemisphere_witness(q.vertices, tol) is None
    if balanced:
        if any(r.kind is CrossingKind.ANTIPODAL for r in recs):
            raise AmbiguousInterior(
                "balanced polygon has antipodal intersections; interior undefined"
            )
        refs = []
        for i in range(q.n):
            refs.extend(_jittered_refs(neg(q.vertex(i)), 2))
            refs.append(neg(arc_midpoint(q.vertex(i), q.vertex(i + 1))))
    else:
        w = interior_hemisphere_witness(q.vertices, tol)
        refs = _jittered_refs(neg(w), 6)
    if reference is not None:
        refs = [reference] + refs
    return _membership_from_refs(edges, refs, tol)


@dataclass(frozen=True)
class Triangulation:
    """Fan-free triangulation of a polygon region by its own vertices."""

    triangles: tuple[tuple[int, int, int], ...]
    diagonals: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[int, ...], ...]  # dual graph over triangle indices

    def leaves(self) -> list[int]:
        return [t for t, nbrs in enumerate(self.adjacency) if len(nbrs) <= 1]

    def leaf_middle_vertices(self) -> list[int]:
        """For each leaf triangle, the vertex not on its sole diagonal."""
        diag_set = set(self.diagonals)
        out = []
        for t in self.leaves():
            tri = self.triangles[t]
            sides = [
                tuple(sorted((tri[a], tri[(a + 1) % 3]))) for a in range(3)
            ]
            diag_sides = [s for s in sides if s in diag_set]
            if len(diag_sides) != 1:
                continue
            middle = [v for v in tri if v not in diag_sides[0]][0]
            out.append(middle)
        return out

    def to_obj(self) -> dict:
        return {
            "triangles": [list(t) for t in self.triangles],
            "diagonals": [list(d) for d in self.diagonals],
        }

    def is_tree(self) -> bool:
        m = len(self.triangles)
        edge_count = sum(len(a) for a in self.adjacency) // 2
        if edge_count != m - 1:
            return False
        seen = [False] * m
        stack = [0]
        seen[0] = True
        while stack:
            t = stack.pop()
            for nb in self.adjacency[t]:
                if not seen[nb]:
                    seen[nb] = True
                    stack.append(nb)
        return all(seen)


def _build_dual(
    triangles: list[tuple[int, int, int]], diagonals: list[tuple[int, int]]
) -> tuple[tuple[int, ...], ...]:
    by_side: dict[tuple[int, int], list[int]] = {}
    for t, tri in enumerate(triangles):
        for a in range(3):
            side = tuple(sorted((tri[a], tri[(a + 1) % 3])))
            by_side.setdefault(side, []).append(t)
    adj: list[set[int]] = [set() for _ in triangles]
    for d in diagonals:
        owners = by_side.get(tuple(sorted(d)), [])
        if len(owners) == 2:
            adj[owners[0]].add(owners[1])
            adj[owners[1]].add(owners[0])
    return tuple(tuple(sorted(a)) for a in adj)


def triangulate_interior(
    q: SphericalPolygon, tol: float = DEGENERACY_TOL
) -> Triangulation:
    """Ear clipping of the interior region using only polygon vertices.

    A vertex is clippable when its diagonal is a valid arc crossing no
    remaining edge, the diagonal midpoint lies in the current region, and no
    remaining vertex sits inside the ear triangle. Smallest-index ears are
    clipped first for deterministic output.
    """
    if q.n < 4:
        raise TooFewVertices("triangulation needs >= 4 vertices")
    inside = interior_of(q, tol)
    verts = q.vertices
    work = list(range(q.n))
    triangles: list[tuple[int, int, int]] = []
    diagonals: list[tuple[int, int]] = []

    def current_edges():
        m = len(work)
        return [(work[t], work[(t + 1) % m]) for t in range(m)]

    while len(work) > 3:
        clipped = False
        for pos in range(len(work)):
            m = len(work)
            ia, ib, ic = work[pos - 1], work[pos], work[(pos + 1) % m]
            a, b, c = verts[ia], verts[ib], verts[ic]
            if points_equal(a, c) or points_antipodal(a, c):
                continue
            if oriented_sign(a, b, c, tol) == 0:
                continue
            diag = GreatArc(a, c)
            ok = True
            for (u_idx, v_idx) in current_edges():
                if u_idx in (ia, ic) or v_idx in (ia, ic):
                    continue
                try:
                    rel = arcs_relation(diag, GreatArc(verts[u_idx], verts[v_idx]), tol)
                except DegenerateTriple:
                    ok = False
                    break
                if rel.tag is ArcTag.CROSS:
                    ok = False
                    break
            if not ok:
                continue
            try:
                if not inside(arc_midpoint(a, c)):
                    continue
            except AmbiguousInterior:
                continue
            if any(
                point_in_spherical_triangle(verts[t], a, b, c, tol)
                for t in work
                if t not in (ia, ib, ic)
            ):
                continue
            triangles.append((ia, ib, ic))
            diagonals.append((min(ia, ic), max(ia, ic)))
            work.pop(pos)
            clipped = True
            break
        if not clipped:
            raise EarNotFound("no clippable vertex remains")
    triangles.append((work[0], work[1], work[2]))
    return Triangulation(
        triangles=tuple(triangles),
        diagonals=tuple(diagonals),
        adjacency=_build_dual(triangles, diagonals),
    )


def exterior_pocket_good_vertices(
    q: SphericalPolygon, tol: float = DEGENERACY_TOL
) -> list[int]:
    """Good vertices found in the pockets between the polygon and its hull.

    For each pocket (polygon chain plus a hull lid edge), the pocket is
    triangulated and the middle vertices of leaves whose two non-diagonal
    sides are original polygon edges are returned. Requires a simple,
    hemisphere-contained, non-convex polygon.
    """
    recs = find_intersections(q, tol)
    if any(r.kind is CrossingKind.SELF for r in recs):
        raise NotSimple("polygon has self-intersections")
    hull = spherical_convex_hull(q.vertices, tol)  # BalancedInput if balanced
    hull_set = set(hull.boundary)
    n = q.n
    hull_in_order = [i for i in range(n) if i in hull_set]
    pockets = []
    m = len(hull_in_order)
    for t in range(m):
        a = hull_in_order[t]
        b = hull_in_order[(t + 1) % m]
        chain = []
        k = (a + 1) % n
        while k != b:
            chain.append(k)
            k = (k + 1) % n
        if chain:
            pockets.append([a] + chain + [b])
    if not pockets:
        raise ConvexInput("convex polygon has no exterior pockets")

    good: set[int] = set()
    for pocket in pockets:
        if len(pocket) == 3:
            # The pocket is already a triangle; its middle vertex has both
            # sides on the polygon.
            good.add(pocket[1])
            continue
        sub = SphericalPolygon(tuple(q.vertices[k] for k in pocket))
        tri = triangulate_interior(sub, tol)
        last = len(pocket) - 1
        diag_set = set(tri.diagonals)
        for t in tri.leaves():
            tri_v = tri.triangles[t]
            sides = [tuple(sorted((tri_v[a], tri_v[(a + 1) % 3]))) for a in range(3)]
            for mid_pos in tri_v:
                adjacent_sides = [s for s in sides if mid_pos in s]
                # Both sides at the middle must be consecutive pocket
                # positions (original polygon edges), not the lid (last, 0)
                # and not diagonals.
                def is_poly_edge(s):
                    lo, hi = s
                    return hi - lo == 1 and s not in diag_set and not (lo == 0 and hi == last)

                if all(is_poly_edge(s) for s in adjacent_sides):
                    good.add(pocket[mid_pos])
    return sorted(good)
