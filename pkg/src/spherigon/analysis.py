"""Counting and classification on spherical and space polygons.

Inflections, self and antipodal intersections, cusps, flattenings, and the
essential / good / excellent vertex taxonomy.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from . import _kernels
from .errors import AntipodalConsecutive, PreconditionViolated, TooFewVertices
from .polygon import SpacePolygon, SphericalPolygon, is_symmetric, tangent_indicatrix
from .sphere_core import (
    DEGENERACY_TOL,
    PAIR_MATCH_TOL,
    Vec3,
    cross,
    dot,
    hemisphere_witness,
    neg,
    normalize,
    points_antipodal,
    sub,
)


class CrossingKind(enum.Enum):
    SELF = "self"
    ANTIPODAL = "antipodal"


_KIND_BY_CODE = {
    _kernels.SELF_CROSS: CrossingKind.SELF,
    _kernels.ANTIPODAL_CROSS: CrossingKind.ANTIPODAL,
}


@dataclass(frozen=True)
class EpsilonSequence:
    """Cyclic signs eps_i = sign det[u_i, u_{i+1}, u_{i+2}]."""

    signs: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.signs)

    def __getitem__(self, i: int) -> int:
        return self.signs[i % len(self.signs)]

    def sign_changes(self) -> int:
        n = len(self.signs)
        return sum(1 for i in range(n) if self.signs[i] != self.signs[(i + 1) % n])

    def inflection_flags(self) -> tuple[bool, ...]:
        """flags[k] is True iff the pair {u_k, u_{k+1}} is an inflection."""
        n = len(self.signs)
        return tuple(self.signs[(k - 1) % n] != self.signs[k] for k in range(n))


@dataclass(frozen=True, order=True)
class IntersectionRecord:
    i: int
    j: int
    kind: CrossingKind
    witness: Vec3

    def __post_init__(self):
        if not self.i < self.j:
            raise ValueError("records are canonicalized with i < j")


@dataclass(frozen=True)
class VertexClass:
    essential: bool
    good: bool
    excellent: bool


@dataclass(frozen=True)
class AnalysisReport:
    n: int
    inflections: int
    dplus: int
    dminus: int
    d: int
    cusps: int
    ess_count: int
    exc_count: int
    good_count: int
    balanced: bool
    simple: bool
    symmetric: bool

    def to_obj(self) -> dict:
        return {
            "n": self.n,
            "I": self.inflections,
            "Dplus": self.dplus,
            "Dminus": self.dminus,
            "D": self.d,
            "S": self.cusps,
            "EssCount": self.ess_count,
            "ExcCount": self.exc_count,
            "GoodCount": self.good_count,
            "balanced": self.balanced,
            "simple": self.simple,
            "symmetric": self.symmetric,
        }

    @staticmethod
    def from_obj(obj: dict) -> "AnalysisReport":
        return AnalysisReport(
            n=obj["n"],
            inflections=obj["I"],
            dplus=obj["Dplus"],
            dminus=obj["Dminus"],
            d=obj["D"],
            cusps=obj["S"],
            ess_count=obj["EssCount"],
            exc_count=obj["ExcCount"],
            good_count=obj["GoodCount"],
            balanced=obj["balanced"],
            simple=obj["simple"],
            symmetric=obj["symmetric"],
        )


def epsilon_signs(q: SphericalPolygon, tol: float = DEGENERACY_TOL) -> EpsilonSequence:
    return EpsilonSequence(tuple(_kernels.eps_signs(q.vertices, tol)))


def count_inflections(q: SphericalPolygon, tol: float = DEGENERACY_TOL) -> int:
    """Number of cyclic sign changes of the epsilon sequence; always even."""
    return epsilon_signs(q, tol).sign_changes()


def _pick_witness(g: Vec3, arc_a, tol: float) -> Vec3:
    """The one of +-g lying inside arc_a, by the larger interior margin."""
    n = arc_a.normal()

    def margin(p):
        return min(dot(cross(arc_a.a, p), n), dot(cross(p, arc_a.b), n))

    return g if margin(g) >= margin(neg(g)) else neg(g)


def find_intersections(
    q: SphericalPolygon, tol: float = DEGENERACY_TOL
) -> list[IntersectionRecord]:
    """All self and antipodal crossings between edges, canonicalized i < j.

    Edge pairs sharing a vertex or linked by antipodal endpoints are tested
    for nondegeneracy but can never produce a crossing (their great circles
    meet only at the shared or antipodal point pair).
    """
    raw = _kernels.pair_scan(q.vertices, tol, PAIR_MATCH_TOL)
    out = []
    for i, j, code in raw:
        ea, eb = q.edge(i), q.edge(j)
        g = normalize(cross(ea.normal(), eb.normal()))
        out.append(
            IntersectionRecord(i=i, j=j, kind=_KIND_BY_CODE[code], witness=_pick_witness(g, ea, tol))
        )
    out.sort(key=lambda r: (r.i, r.j, r.kind.value))
    return out


def count_cusps(q: SphericalPolygon, tol: float = DEGENERACY_TOL) -> int:
    """Maximal non-overlapping pairs of consecutive inflections.

    Left-to-right scan from index 0 with consumption; a run of k consecutive
    inflections contributes floor(k/2).
    """
    flags = list(epsilon_signs(q, tol).inflection_flags())
    n = len(flags)
    consumed = [False] * n
    cusps = 0
    for i in range(n):
        j = (i + 1) % n
        if flags[i] and flags[j] and not consumed[i] and not consumed[j]:
            consumed[i] = consumed[j] = True
            cusps += 1
    return cusps


def _classify(q: SphericalPolygon, tol: float) -> list[VertexClass]:
    n = q.n
    if n == 4:
        # Deleting any vertex leaves a triangle: three points always fit a
        # hemisphere (every vertex essential) and a triangle has no
        # non-adjacent edge pairs (every vertex good and excellent).
        return [VertexClass(True, True, True)] * 4
    out = []
    verts = list(q.vertices)
    for i in range(n):
        if points_antipodal(verts[(i - 1) % n], verts[(i + 1) % n]):
            raise AntipodalConsecutive(
                f"neighbors of vertex {i} are antipodal; deletion is undefined"
            )
        rest = verts[:i] + verts[i + 1 :]
        essential = _kernels.hemisphere_scan(rest, tol, PAIR_MATCH_TOL) is not None
        recs = _kernels.pair_scan(rest, tol, PAIR_MATCH_TOL)
        good = not any(r[2] == _kernels.SELF_CROSS for r in recs)
        excellent = not recs
        out.append(VertexClass(essential, good, excellent))
    return out


def classify_vertices(
    q: SphericalPolygon, tol: float = DEGENERACY_TOL
) -> list[VertexClass]:
    """Per-vertex essential / good / excellent classification.

    essential: removal leaves a set that fits a closed hemisphere;
    good: removal leaves a polygon without self-intersections;
    excellent: removal leaves neither self nor antipodal intersections.
    """
    if q.n < 5:
        raise TooFewVertices("classification needs >= 5 vertices")
    return _classify(q, tol)


def find_removable_vertex(
    q: SphericalPolygon, tol: float = DEGENERACY_TOL
) -> Optional[int]:
    """Smallest index that is simultaneously nonessential and excellent.

    Under the preconditions (balanced, no self or antipodal intersections,
    n >= 7) such a vertex always exists; None therefore signals a theorem
    violation to the caller, not an error.
    """
    if q.n < 7:
        raise PreconditionViolated("need n >= 7")
    if hemisphere_witness(q.vertices, tol) is not None:
        raise PreconditionViolated("polygon is not balanced")
    if find_intersections(q, tol):
        raise PreconditionViolated("polygon has self or antipodal intersections")
    for i, cls in enumerate(_classify(q, tol)):
        if not cls.essential and cls.excellent:
            return i
    return None


def count_flattenings_direct(p: SpacePolygon) -> int:
    """Flattenings counted by side-of-plane tests in R^3.

    The triple {v_i, v_{i+1}, v_{i+2}} is a flattening iff v_{i-1} and
    v_{i+3} lie on the same side of its plane. Independent arithmetic route
    from the indicatrix inflection count.
    """
    n = p.n
    count = 0
    for i in range(n):
        e0 = sub(p.vertex(i + 1), p.vertex(i))
        e1 = sub(p.vertex(i + 2), p.vertex(i + 1))
        nrm = cross(e0, e1)
        side_prev = dot(sub(p.vertex(i - 1), p.vertex(i)), nrm)
        side_next = dot(sub(p.vertex(i + 3), p.vertex(i)), nrm)
        if side_prev * side_next > 0.0:
            count += 1
    return count


def analyze_space_polygon(
    p: SpacePolygon, tol: float = DEGENERACY_TOL
) -> tuple[int, int, int]:
    """(F, T+, T-): flattenings and parallel-vertex pair counts.

    F equals the inflection count of the tangent indicatrix; T+/T- are its
    self / antipodal crossing counts.
    """
    q = tangent_indicatrix(p)
    f = count_inflections(q, tol)
    recs = find_intersections(q, tol)
    tplus = sum(1 for r in recs if r.kind is CrossingKind.SELF)
    tminus = sum(1 for r in recs if r.kind is CrossingKind.ANTIPODAL)
    return f, tplus, tminus


def analyze(q: SphericalPolygon, tol: float = DEGENERACY_TOL) -> AnalysisReport:
    """Aggregate all counters and flags in one pass."""
    inflections = count_inflections(q, tol)
    cusps = count_cusps(q, tol)
    recs = find_intersections(q, tol)
    dplus = sum(1 for r in recs if r.kind is CrossingKind.SELF)
    dminus = sum(1 for r in recs if r.kind is CrossingKind.ANTIPODAL)
    balanced = hemisphere_witness(q.vertices, tol) is None
    classes = _classify(q, tol)
    return AnalysisReport(
        n=q.n,
        inflections=inflections,
        dplus=dplus,
        dminus=dminus,
        d=dplus + dminus,
        cusps=cusps,
        ess_count=sum(1 for c in classes if c.essential),
        exc_count=sum(1 for c in classes if c.excellent),
        good_count=sum(1 for c in classes if c.good),
        balanced=balanced,
        simple=dplus == 0,
        symmetric=is_symmetric(q),
    )
