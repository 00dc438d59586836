"""Numerically guarded primitive predicates on unit vectors.

Points on the sphere are plain ``(x, y, z)`` tuples of floats with unit
norm (``Vec3``); construct them with :func:`unit`. Signs are plain ints in
{-1, 0, +1}; a 0 means the determinant fell below the degeneracy tolerance
and is treated by all callers as an error condition, never as a branch.
"""

from __future__ import annotations

import enum
import math
from itertools import combinations
from typing import NamedTuple, Optional, Sequence

from . import _kernels
from .errors import BalancedInput, DegenerateTriple, InvalidArc, NotBalanced

Vec3 = tuple[float, float, float]
Sign = int

DEGENERACY_TOL = 1e-12
UNIT_NORM_TOL = 1e-12
# Slack for detecting structurally equal/antipodal point pairs.
PAIR_MATCH_TOL = 1e-9


def dot(a: Vec3, b: Vec3) -> float:
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def cross(a: Vec3, b: Vec3) -> Vec3:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def norm(a: Vec3) -> float:
    return math.sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2])


def normalize(a: Vec3) -> Vec3:
    n = norm(a)
    if n == 0.0:
        raise ValueError("cannot normalize the zero vector")
    return (a[0] / n, a[1] / n, a[2] / n)


def neg(a: Vec3) -> Vec3:
    return (-a[0], -a[1], -a[2])


def add(a: Vec3, b: Vec3) -> Vec3:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


def sub(a: Vec3, b: Vec3) -> Vec3:
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def scale(a: Vec3, s: float) -> Vec3:
    return (a[0] * s, a[1] * s, a[2] * s)


def det3(u: Vec3, v: Vec3, w: Vec3) -> float:
    """Determinant of the 3x3 matrix with columns u, v, w."""
    return (
        u[0] * (v[1] * w[2] - v[2] * w[1])
        - u[1] * (v[0] * w[2] - v[2] * w[0])
        + u[2] * (v[0] * w[1] - v[1] * w[0])
    )


def unit(x: float, y: float, z: float) -> Vec3:
    """Normalize (x, y, z) onto the sphere; rejects the zero vector."""
    return normalize((float(x), float(y), float(z)))


def is_unit(a: Vec3, tol: float = UNIT_NORM_TOL) -> bool:
    return abs(norm(a) - 1.0) <= tol


def points_equal(a: Vec3, b: Vec3, tol: float = PAIR_MATCH_TOL) -> bool:
    return norm(sub(a, b)) < tol


def points_antipodal(a: Vec3, b: Vec3, tol: float = PAIR_MATCH_TOL) -> bool:
    return norm(add(a, b)) < tol


class ArcTag(enum.Enum):
    DISJOINT = "disjoint"
    CROSS = "cross"
    ANTIPODAL_CROSS = "antipodal_cross"


class ArcRelation(NamedTuple):
    tag: ArcTag
    # Crossing point for CROSS; for ANTIPODAL_CROSS the point of arc 1 whose
    # antipode lies on arc 2. None for DISJOINT.
    witness: Optional[Vec3]


class GreatArc(NamedTuple):
    """Minor great-circle arc between two non-equal, non-antipodal points."""

    a: Vec3
    b: Vec3

    @staticmethod
    def of(a: Vec3, b: Vec3) -> "GreatArc":
        if points_equal(a, b):
            raise InvalidArc("arc endpoints coincide")
        if points_antipodal(a, b):
            raise InvalidArc("arc endpoints are antipodal")
        return GreatArc(a, b)

    def normal(self) -> Vec3:
        return cross(self.a, self.b)

    def reflect(self) -> "GreatArc":
        return GreatArc(neg(self.a), neg(self.b))


def oriented_sign(u: Vec3, v: Vec3, w: Vec3, tol: float = DEGENERACY_TOL) -> Sign:
    """Sign of det[u v w]; 0 only when |det| < tol."""
    d = det3(u, v, w)
    if abs(d) < tol:
        return 0
    return 1 if d > 0.0 else -1


def spherical_distance(u: Vec3, v: Vec3) -> float:
    """Angle between two unit vectors, in [0, pi]."""
    return math.atan2(norm(cross(u, v)), dot(u, v))


def _sign_or_raise(u: Vec3, v: Vec3, w: Vec3, tol: float, what: str = "") -> Sign:
    s = oriented_sign(u, v, w, tol)
    if s == 0:
        raise DegenerateTriple(f"degenerate triple {what}".strip())
    return s


def balanced4(a: Vec3, b: Vec3, c: Vec3, d: Vec3, tol: float = DEGENERACY_TOL) -> bool:
    """True iff the four points are not contained in any closed hemisphere.

    Characterization: sign[a,b,c] = sign[a,c,d] = -sign[a,b,d] = -sign[b,c,d].
    """
    s_abc = _sign_or_raise(a, b, c, tol, "(a,b,c)")
    s_acd = _sign_or_raise(a, c, d, tol, "(a,c,d)")
    s_abd = _sign_or_raise(a, b, d, tol, "(a,b,d)")
    s_bcd = _sign_or_raise(b, c, d, tol, "(b,c,d)")
    return s_abc == s_acd and s_abd == s_bcd and s_abc == -s_abd


def hemisphere_witness(
    points: Sequence[Vec3], tol: float = DEGENERACY_TOL
) -> Optional[Vec3]:
    """Unit normal n with n . p >= 0 for all points, or None if none exists.

    A supporting hemisphere, if one exists, can be rotated until its boundary
    passes through two of the points, so only normals orthogonal to point
    pairs need to be tested. Zero determinants are tolerated only when the
    third point is (anti)equal to one of the pair; any other zero raises
    DegenerateTriple. Exact only under general position.
    """
    pts = list(points)
    if len(pts) < 2:
        raise ValueError("need at least two points")
    w = _kernels.hemisphere_scan(pts, tol, PAIR_MATCH_TOL)
    return None if w is None else (w[0], w[1], w[2])


def positive_combination(
    points: Sequence[Vec3],
    target: Vec3,
    tol: float = DEGENERACY_TOL,
    residual_tol: float = 1e-9,
) -> list[float]:
    """Nonnegative coefficients lam with sum(lam_i p_i) pointing along target.

    Requires the points to be balanced; then every direction lies in the
    positive hull of at most three of them, so supporting triples are
    enumerated directly (conic Caratheodory).
    """
    pts = list(points)
    if len(pts) < 4 or hemisphere_witness(pts, tol) is not None:
        raise NotBalanced("points must be balanced (no closed hemisphere)")
    n = len(pts)
    for i, j, k in combinations(range(n), 3):
        p, q, r = pts[i], pts[j], pts[k]
        d = det3(p, q, r)
        if abs(d) < tol:
            continue
        # Cramer solve of alpha*p + beta*q + gamma*r = target.
        alpha = det3(target, q, r) / d
        beta = det3(p, target, r) / d
        gamma = det3(p, q, target) / d
        if alpha < -tol or beta < -tol or gamma < -tol:
            continue
        lam = [0.0] * n
        lam[i] = max(alpha, 0.0)
        lam[j] = max(beta, 0.0)
        lam[k] = max(gamma, 0.0)
        combo = (
            lam[i] * p[0] + lam[j] * q[0] + lam[k] * r[0],
            lam[i] * p[1] + lam[j] * q[1] + lam[k] * r[1],
            lam[i] * p[2] + lam[j] * q[2] + lam[k] * r[2],
        )
        if norm(combo) == 0.0:
            continue
        if spherical_distance(normalize(combo), target) < residual_tol:
            return lam
    raise NotBalanced("no supporting triple found for target")


def strictly_inside_arc(p: Vec3, arc: GreatArc, tol: float = DEGENERACY_TOL) -> bool:
    """True iff p lies strictly between the arc endpoints on its great circle.

    Assumes p is on (or numerically near) the circle spanned by the arc.
    """
    n = arc.normal()
    return dot(cross(arc.a, p), n) > tol and dot(cross(p, arc.b), n) > tol


def arcs_relation(a: GreatArc, b: GreatArc, tol: float = DEGENERACY_TOL) -> ArcRelation:
    """Classify two minor arcs as disjoint, crossing, or antipodally crossing.

    With endpoints (i, i+1) = (a.a, a.b) and (j, j+1) = (b.a, b.b):
    crossing      iff [i,i+1,j] = [i+1,j,j+1] != [i,i+1,j+1] = [i,j,j+1],
    antipodal     iff [i,i+1,j] = [i,j,j+1]   != [i,i+1,j+1] = [i+1,j,j+1]
    (equivalently the four endpoints are balanced).
    """
    s1 = _sign_or_raise(a.a, a.b, b.a, tol, "(A.a,A.b,B.a)")
    s2 = _sign_or_raise(a.b, b.a, b.b, tol, "(A.b,B.a,B.b)")
    s3 = _sign_or_raise(a.a, a.b, b.b, tol, "(A.a,A.b,B.b)")
    s4 = _sign_or_raise(a.a, b.a, b.b, tol, "(A.a,B.a,B.b)")

    if s1 == s2 and s3 == s4 and s1 != s3:
        tag = ArcTag.CROSS
    elif s1 == s4 and s2 == s3 and s1 != s3:
        tag = ArcTag.ANTIPODAL_CROSS
    else:
        return ArcRelation(ArcTag.DISJOINT, None)

    g = normalize(cross(a.normal(), b.normal()))
    # Deterministic sign choice: the witness lies inside arc a.
    w = g if strictly_inside_arc(g, a, tol) else neg(g)
    return ArcRelation(tag, w)


def point_in_spherical_triangle(
    p: Vec3, a: Vec3, b: Vec3, c: Vec3, tol: float = DEGENERACY_TOL
) -> bool:
    """Strict membership in the geodesically convex triangle (a, b, c)."""
    s = _sign_or_raise(a, b, c, tol, "(a,b,c)")
    return (
        oriented_sign(a, b, p, tol) == s
        and oriented_sign(b, c, p, tol) == s
        and oriented_sign(c, a, p, tol) == s
    )


def point_along_arc(origin: Vec3, toward: Vec3, angle: float) -> Vec3:
    """Point at the given angular distance from origin along the arc to toward."""
    t = sub(toward, scale(origin, dot(toward, origin)))
    tn = norm(t)
    if tn < 1e-15:
        raise InvalidArc("direction undefined (points equal or antipodal)")
    t = scale(t, 1.0 / tn)
    return normalize(add(scale(origin, math.cos(angle)), scale(t, math.sin(angle))))


def arc_midpoint(a: Vec3, b: Vec3) -> Vec3:
    if points_antipodal(a, b):
        raise InvalidArc("midpoint of antipodal points is undefined")
    return normalize(add(a, b))


def interior_hemisphere_witness(
    points: Sequence[Vec3], tol: float = DEGENERACY_TOL
) -> Vec3:
    """Unit normal n with n . p strictly positive for every point.

    Sums all supporting pair-candidate normals; the sum lies in the relative
    interior of the cone of valid normals, which is strictly positive exactly
    when the points fit in an open hemisphere.
    """
    pts = list(points)
    total = (0.0, 0.0, 0.0)
    found = False
    n = len(pts)
    for i in range(n - 1):
        for j in range(i + 1, n):
            c = cross(pts[i], pts[j])
            if norm(c) < tol:
                continue
            cn = normalize(c)
            for cand in (cn, neg(cn)):
                ok = True
                for k in range(n):
                    if k == i or k == j:
                        continue
                    if dot(cand, pts[k]) < -tol:
                        ok = False
                        break
                if ok:
                    total = add(total, cand)
                    found = True
    if not found or norm(total) < tol:
        raise BalancedInput("points do not fit in a closed hemisphere")
    w = normalize(total)
    if min(dot(w, p) for p in pts) <= tol:
        raise BalancedInput("points do not fit in an open hemisphere")
    return w
