"""Cut-and-paste removal of self-intersections and its local sign calculus.

At a self-crossing of edges i and j the four endpoints are reconnected as
u_i -> u_j and u_{i+1} -> u_{j+1} (reversing the intermediate chain), which
removes the crossing. The inflection bookkeeping around the crossing is
captured by a frame of signs (x_k, y_k) attached to the four external
vertices, whose polynomial 2*gamma lower-bounds 2 + I - I' under the
worst-case convention (every status-changing external edge becomes an
inflection).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .analysis import CrossingKind, IntersectionRecord, count_inflections, epsilon_signs, find_intersections
from .errors import (
    ConsecutiveEndpoints,
    DegenerateTriple,
    NumericalUnderflow,
    PerturbationFailed,
    RegionNotEmpty,
    TheoremViolation,
    TooFewVertices,
)
from .polygon import SphericalPolygon, check_general_position
from .sphere_core import (
    DEGENERACY_TOL,
    Vec3,
    add,
    arc_midpoint,
    cross,
    neg,
    normalize,
    oriented_sign,
    point_along_arc,
    point_in_spherical_triangle,
    scale,
    spherical_distance,
    sub,
)

# Relabeling of the four internal vertices: 1 = u_i, 2 = u_j, 3 = u_{j+1},
# 4 = u_{i+1}. Old edges are {4,1} and {3,2}; new edges are {2,1} and {3,4}.


@dataclass(frozen=True)
class LocalFrame:
    """Signs (x_k, y_k) of the four external vertices against the old / new
    edge circles at their internal vertex.

    Pinned so that: the old edge u_4 u_1 is an inflection iff x_1 x_4 = +1
    (same for u_3 u_2 and x_2 x_3); the new edge u_2 u_1 is an inflection iff
    y_1 y_2 = -1 (same for u_3 u_4 and y_3 y_4); the external edge at u_k
    changes inflection status iff x_k y_k = +1.
    """

    x: tuple[int, int, int, int]
    y: tuple[int, int, int, int]

    @property
    def admissible(self) -> bool:
        return all(not (xk == -1 and yk == -1) for xk, yk in zip(self.x, self.y))


@dataclass(frozen=True)
class SurgeryResult:
    output: SphericalPolygon
    removed: IntersectionRecord
    i_before: int
    i_after: int
    gamma_observed: int  # 2 + I_before - I_after


def two_gamma(frame: LocalFrame) -> int:
    """x1x4 + x2x3 + y1y2 + y3y4 - sum(x_k y_k); >= 0 for admissible frames."""
    x1, x2, x3, x4 = frame.x
    y1, y2, y3, y4 = frame.y
    return (
        x1 * x4
        + x2 * x3
        + y1 * y2
        + y3 * y4
        - x1 * y1
        - x2 * y2
        - x3 * y3
        - x4 * y4
    )


def _require_self_crossing(rec: IntersectionRecord) -> None:
    if rec.kind is not CrossingKind.SELF:
        raise ValueError("surgery operates on self-crossings only")


def _check_endpoint_spacing(n: int, i: int, j: int) -> None:
    # The four external vertices must be distinct from the internal ones.
    if (i + 2) % n == j or (j + 2) % n == i:
        raise ConsecutiveEndpoints(
            "crossing endpoints are adjacent; insert a midpoint vertex first"
        )


def _region_triangles(q: SphericalPolygon, rec: IntersectionRecord):
    w = rec.witness
    return (
        (q.vertex(rec.i), q.vertex(rec.j), w),
        (q.vertex(rec.i + 1), q.vertex(rec.j + 1), w),
    )


def _occupied_regions(
    q: SphericalPolygon, rec: IntersectionRecord, tol: float
) -> tuple[bool, bool]:
    tri1, tri2 = _region_triangles(q, rec)
    n = q.n
    internal = {rec.i % n, (rec.i + 1) % n, rec.j % n, (rec.j + 1) % n}
    occ1 = occ2 = False
    for k in range(n):
        if k in internal:
            continue
        v = q.vertex(k)
        if not occ1 and point_in_spherical_triangle(v, *tri1, tol):
            occ1 = True
        if not occ2 and point_in_spherical_triangle(v, *tri2, tol):
            occ2 = True
    return occ1, occ2


def local_frame(
    q: SphericalPolygon, rec: IntersectionRecord, tol: float = DEGENERACY_TOL
) -> LocalFrame:
    """Sign frame of the four external vertices at a self-crossing."""
    _require_self_crossing(rec)
    n = q.n
    i, j = rec.i, rec.j
    _check_endpoint_spacing(n, i, j)
    ui, ui1 = q.vertex(i), q.vertex(i + 1)
    uj, uj1 = q.vertex(j), q.vertex(j + 1)
    e1, e2 = q.vertex(i - 1), q.vertex(j - 1)
    e3, e4 = q.vertex(j + 2), q.vertex(i + 2)

    def sgn(a, b, c):
        s = oriented_sign(a, b, c, tol)
        if s == 0:
            raise DegenerateTriple(f"degenerate frame determinant at crossing ({i},{j})")
        return s

    # The raw determinant signs flip under an orientation-reversing isometry
    # while region membership does not; normalizing by the crossing chirality
    # makes the frame mirror-invariant and puts the forbidden corner (an
    # external vertex inside its lens region) at (-1, -1).
    chi = sgn(ui, ui1, uj)
    x = (
        -chi * sgn(ui, ui1, e1),
        +chi * sgn(uj, uj1, e2),
        -chi * sgn(uj, uj1, e3),
        +chi * sgn(ui, ui1, e4),
    )
    y = (
        +chi * sgn(ui, uj, e1),
        +chi * sgn(ui, uj, e2),
        +chi * sgn(ui1, uj1, e3),
        +chi * sgn(ui1, uj1, e4),
    )
    return LocalFrame(x=x, y=y)


def cut_and_paste(
    q: SphericalPolygon, rec: IntersectionRecord, tol: float = DEGENERACY_TOL
) -> SurgeryResult:
    """Reconnect u_i -> u_j and u_{i+1} -> u_{j+1}, removing the crossing.

    Requires the two triangular regions spanned by {u_i, u_j, w} and
    {u_{i+1}, u_{j+1}, w} to contain no other vertex (buffer_vertices first
    otherwise) and the endpoints to be non-adjacent (insert_midpoint_vertex
    first otherwise).
    """
    _require_self_crossing(rec)
    n = q.n
    i, j = rec.i, rec.j
    _check_endpoint_spacing(n, i, j)
    occ1, occ2 = _occupied_regions(q, rec, tol)
    if occ1 or occ2:
        raise RegionNotEmpty("a surgery region contains foreign vertices")

    i_before = count_inflections(q, tol)
    order = [i] + list(range(j, i, -1)) + [(j + 1 + k) % n for k in range(n - j + i - 1)]
    q2 = SphericalPolygon(tuple(q.vertices[k % n] for k in order))
    i_after = count_inflections(q2, tol)
    return SurgeryResult(
        output=q2,
        removed=rec,
        i_before=i_before,
        i_after=i_after,
        gamma_observed=2 + i_before - i_after,
    )


def split_at_intersection(
    q: SphericalPolygon, rec: IntersectionRecord, tol: float = DEGENERACY_TOL
) -> tuple[SphericalPolygon, SphericalPolygon]:
    """The other reconnection: two polygons [u_i, u_{j+1}, ...] and
    [u_j, u_{i+1}, ...], each with the induced orientation. Diagnostic."""
    _require_self_crossing(rec)
    n = q.n
    i, j = rec.i, rec.j
    _check_endpoint_spacing(n, i, j)
    occ1, occ2 = _occupied_regions(q, rec, tol)
    if occ1 or occ2:
        raise RegionNotEmpty("a surgery region contains foreign vertices")
    size1 = n - j + i
    size2 = j - i
    if size1 < 3 or size2 < 3:
        raise TooFewVertices("a split piece would have fewer than 3 vertices")
    idx1 = [i] + [(j + 1 + k) % n for k in range(size1 - 1)]
    idx2 = [j] + [i + 1 + k for k in range(size2 - 1)]
    return (
        SphericalPolygon(tuple(q.vertices[k % n] for k in idx1)),
        SphericalPolygon(tuple(q.vertices[k % n] for k in idx2)),
    )


def _counts(q: SphericalPolygon, tol: float):
    recs = find_intersections(q, tol)
    return (
        count_inflections(q, tol),
        sum(1 for r in recs if r.kind is CrossingKind.SELF),
        sum(1 for r in recs if r.kind is CrossingKind.ANTIPODAL),
    )


_DELTA_LADDER = (1.0, 0.125, 8.0, 0.015625, 64.0)
_STAGGER = (1.0, 1.381, 1.733, 2.117)


def _nudged(p: Vec3, a: Vec3, b: Vec3, side: int, delta: float) -> Vec3:
    # Moves p off the circle of (a, b) so that sign det[a, p', b] == side.
    # A tangential component breaks coincidences with other special circles
    # (a pure normal displacement can stay on one); it does not affect the
    # sign of det[a, p', b] since the tangent is orthogonal to the normal.
    nrm = normalize(cross(a, b))
    tan = normalize(cross(nrm, p))
    offset = sub(scale(tan, 0.37 * delta), scale(nrm, side * delta))
    return normalize(add(p, offset))


def buffer_vertices(
    q: SphericalPolygon,
    rec: IntersectionRecord,
    antipodal_safe: bool = False,
    tol: float = DEGENERACY_TOL,
) -> SphericalPolygon:
    """Insert vertices on a safety circle around the crossing witness.

    The circle radius is half the minimal spherical distance from the
    witness to any vertex (to any vertex or its antipode when
    antipodal_safe). New vertices go on the incoming edge halves when the
    region {u_i, u_j, w} is occupied and on the outgoing halves when
    {u_{i+1}, u_{j+1}, w} is, then each inserted vertex is displaced off its
    edge circle so the result is in general position with (I, D+, D-)
    unchanged.
    """
    _require_self_crossing(rec)
    n = q.n
    i, j = rec.i, rec.j
    w = rec.witness

    radius = min(spherical_distance(w, v) for v in q.vertices)
    if antipodal_safe:
        radius = min(radius, min(spherical_distance(w, neg(v)) for v in q.vertices))
    radius *= 0.5
    if radius < 1e-9:
        raise NumericalUnderflow("buffer radius below tolerance")

    occ1, occ2 = _occupied_regions(q, rec, tol)
    if not occ1 and not occ2:
        return q

    eps = epsilon_signs(q, tol)
    reference = _counts(q, tol)

    # (edge index, new points ordered from the edge start)
    insertions: list[tuple[int, list[Vec3]]] = []
    for edge, start, end in ((i, q.vertex(i), q.vertex(i + 1)), (j, q.vertex(j), q.vertex(j + 1))):
        pts = []
        if occ1:
            pts.append(point_along_arc(w, start, radius))
        if occ2:
            pts.append(point_along_arc(w, end, radius))
        insertions.append((edge % n, pts))

    for scale_factor in _DELTA_LADDER:
        delta0 = min(1e-8, radius * 1e-3) * scale_factor
        verts: list[Vec3] = []
        stagger = 0
        for k in range(n):
            verts.append(q.vertex(k))
            for edge, pts in insertions:
                if edge == k:
                    side = eps[edge]
                    for p in pts:
                        verts.append(
                            _nudged(p, q.vertex(edge), q.vertex(edge + 1), side, delta0 * _STAGGER[stagger % 4])
                        )
                        stagger += 1
        try:
            cand = SphericalPolygon(tuple(verts))
        except Exception:
            continue
        if not check_general_position(cand, tol).ok:
            continue
        if _counts(cand, tol) != reference:
            continue
        return cand
    raise PerturbationFailed("no buffering displacement preserved the counts")


def insert_midpoint_vertex(
    q: SphericalPolygon, k: int, tol: float = DEGENERACY_TOL
) -> SphericalPolygon:
    """Insert a vertex near the midpoint of edge k, keeping (I, D+, D-).

    The displacement side matches the epsilon sign of the split edge, so
    the two new edges are not inflections whenever edge k was not one.
    """
    k %= q.n
    eps = epsilon_signs(q, tol)
    reference = _counts(q, tol)
    a, b = q.vertex(k), q.vertex(k + 1)
    mid = arc_midpoint(a, b)
    side = eps[k]
    for scale_factor in _DELTA_LADDER:
        delta = 1e-6 * scale_factor
        p = _nudged(mid, a, b, side, delta)
        verts = q.vertices[: k + 1] + (p,) + q.vertices[k + 1 :]
        try:
            cand = SphericalPolygon(verts)
        except Exception:
            continue
        if not check_general_position(cand, tol).ok:
            continue
        if _counts(cand, tol) != reference:
            continue
        return cand
    raise PerturbationFailed("no midpoint displacement preserved the counts")


def _closest_self_crossing(
    q: SphericalPolygon, witness: Vec3, tol: float
) -> IntersectionRecord:
    recs = [r for r in find_intersections(q, tol) if r.kind is CrossingKind.SELF]
    if not recs:
        raise ValueError("polygon has no self-crossing")
    return min(recs, key=lambda r: spherical_distance(r.witness, witness))


def prepare_and_cut(
    q: SphericalPolygon,
    rec: IntersectionRecord,
    antipodal_safe: bool = False,
    tol: float = DEGENERACY_TOL,
    max_steps: int = 8,
) -> SurgeryResult:
    """Full pipeline: insert a midpoint or buffer vertices as needed, then cut.

    After each preparatory step the crossing is re-resolved as the
    self-crossing whose witness is nearest the original one.
    """
    _require_self_crossing(rec)
    target = rec.witness
    for _ in range(max_steps):
        try:
            return cut_and_paste(q, rec, tol)
        except ConsecutiveEndpoints:
            n = q.n
            # Split the short way round: the edge joining the adjacent endpoints.
            if (rec.j + 2) % n == rec.i:
                q = insert_midpoint_vertex(q, rec.j + 1, tol)
            else:
                q = insert_midpoint_vertex(q, rec.i + 1, tol)
        except RegionNotEmpty:
            q = buffer_vertices(q, rec, antipodal_safe, tol)
        rec = _closest_self_crossing(q, target, tol)
    raise PerturbationFailed("surgery pipeline did not converge")


# -- exhaustive frame table ----


@dataclass(frozen=True)
class GammaRow:
    x: tuple[int, int, int, int]
    y: tuple[int, int, int, int]
    two_gamma: int
    orbit_id: int


@dataclass(frozen=True)
class GammaTable:
    rows: tuple[GammaRow, ...]
    orbit_count: int
    min_two_gamma: int


_SYMMETRIES = (
    (0, 1, 2, 3),  # identity
    (1, 0, 3, 2),  # (1 2)(3 4)
    (2, 3, 0, 1),  # (1 3)(2 4)
    (3, 2, 1, 0),  # composition
)


def permute_frame(frame: LocalFrame, perm: tuple[int, int, int, int]) -> LocalFrame:
    return LocalFrame(
        x=tuple(frame.x[p] for p in perm),
        y=tuple(frame.y[p] for p in perm),
    )


def gamma_table() -> GammaTable:
    """All 3^4 = 81 admissible frames with their 2*gamma and symmetry orbit.

    Frames are grouped into orbits under the group generated by (1 2)(3 4)
    and (1 3)(2 4); every admissible frame must have 2*gamma >= 0.
    """
    admissible_pairs = ((1, 1), (1, -1), (-1, 1))
    rows = []
    orbit_ids: dict[tuple, int] = {}
    min_tg = None
    for combo in itertools.product(admissible_pairs, repeat=4):
        frame = LocalFrame(x=tuple(p[0] for p in combo), y=tuple(p[1] for p in combo))
        tg = two_gamma(frame)
        if tg < 0:
            raise TheoremViolation(f"admissible frame {frame} has 2*gamma = {tg}")
        canon = min(
            (permute_frame(frame, perm).x, permute_frame(frame, perm).y)
            for perm in _SYMMETRIES
        )
        orbit = orbit_ids.setdefault(canon, len(orbit_ids))
        rows.append(GammaRow(x=frame.x, y=frame.y, two_gamma=tg, orbit_id=orbit))
        min_tg = tg if min_tg is None else min(min_tg, tg)
    return GammaTable(rows=tuple(rows), orbit_count=len(orbit_ids), min_two_gamma=min_tg)
