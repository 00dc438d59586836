"""Closed space polygons and spherical polygons with cyclic indexing.

Both polygon types are immutable values; all operations return new objects.
The polygon file format (shared with the CLI) is a JSON object
``{"kind": "spherical"|"space", "vertices": [[x,y,z], ...], "name": ...}``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .errors import (
    AntipodalConsecutive,
    DegenerateEdge,
    PerturbationFailed,
    TooFewVertices,
)
from .sphere_core import (
    DEGENERACY_TOL,
    PAIR_MATCH_TOL,
    GreatArc,
    Vec3,
    add,
    dot,
    neg,
    norm,
    normalize,
    points_antipodal,
    points_equal,
    scale,
    spherical_distance,
    sub,
)

SYMMETRY_TOL = 1e-9
LOAD_NORM_TOL = 1e-6


@dataclass(frozen=True)
class SphericalPolygon:
    """Closed spherical polygon [u_0, ..., u_{n-1}], indices mod n.

    Vertices must be unit and no two consecutive vertices may be equal or
    antipodal (edges are the minor arcs). Theorem-level operations require
    n >= 4; n = 3 is allowed so that surgery can emit triangles.
    """

    vertices: tuple[Vec3, ...]

    def __post_init__(self):
        n = len(self.vertices)
        if n < 3:
            raise TooFewVertices(f"spherical polygon needs >= 3 vertices, got {n}")
        for i, v in enumerate(self.vertices):
            if abs(norm(v) - 1.0) > 1e-9:
                raise ValueError(f"vertex {i} is not unit length")
        for i in range(n):
            a, b = self.vertices[i], self.vertices[(i + 1) % n]
            if points_equal(a, b):
                raise DegenerateEdge(f"vertices {i} and {(i + 1) % n} coincide")
            if points_antipodal(a, b):
                raise AntipodalConsecutive(
                    f"vertices {i} and {(i + 1) % n} are antipodal"
                )

    @staticmethod
    def from_points(points: Iterable[Sequence[float]]) -> "SphericalPolygon":
        verts = tuple(normalize((float(p[0]), float(p[1]), float(p[2]))) for p in points)
        return SphericalPolygon(verts)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def vertex(self, i: int) -> Vec3:
        return self.vertices[i % self.n]

    def edge(self, i: int) -> GreatArc:
        return GreatArc(self.vertex(i), self.vertex(i + 1))

    @cached_property
    def coords(self) -> np.ndarray:
        return np.asarray(self.vertices, dtype=np.float64)

    def reflected(self) -> "SphericalPolygon":
        return SphericalPolygon(tuple(neg(v) for v in self.vertices))

    def reversed_(self) -> "SphericalPolygon":
        return SphericalPolygon(tuple(reversed(self.vertices)))

    def rolled(self, k: int) -> "SphericalPolygon":
        k %= self.n
        return SphericalPolygon(self.vertices[k:] + self.vertices[:k])


@dataclass(frozen=True)
class SpacePolygon:
    """Closed polygon in R^3 (arbitrary units), n >= 4."""

    vertices: tuple[Vec3, ...]

    def __post_init__(self):
        if len(self.vertices) < 4:
            raise TooFewVertices("space polygon needs >= 4 vertices")

    @staticmethod
    def from_points(points: Iterable[Sequence[float]]) -> "SpacePolygon":
        return SpacePolygon(
            tuple((float(p[0]), float(p[1]), float(p[2])) for p in points)
        )

    @property
    def n(self) -> int:
        return len(self.vertices)

    def vertex(self, i: int) -> Vec3:
        return self.vertices[i % self.n]


@dataclass(frozen=True)
class GeneralPositionReport:
    ok: bool
    offending: tuple[tuple[int, int, int], ...]
    min_abs_det: float


def tangent_indicatrix(p: SpacePolygon) -> SphericalPolygon:
    """Spherical polygon of normalized edge directions of a space polygon."""
    dirs = []
    n = p.n
    for i in range(n):
        e = sub(p.vertex(i + 1), p.vertex(i))
        ln = norm(e)
        if ln == 0.0:
            raise DegenerateEdge(f"edge {i} has zero length")
        dirs.append(scale(e, 1.0 / ln))
    for i in range(n):
        a, b = dirs[i], dirs[(i + 1) % n]
        if points_equal(a, b):
            raise DegenerateEdge(f"edges {i} and {(i + 1) % n} have equal direction")
        if points_antipodal(a, b):
            raise AntipodalConsecutive(
                f"edges {i} and {(i + 1) % n} have opposite directions"
            )
    return SphericalPolygon(tuple(dirs))


def check_general_position(
    q: SphericalPolygon,
    tol: float = DEGENERACY_TOL,
    *,
    allow_antipodal_pairs: bool = False,
) -> GeneralPositionReport:
    """Scan all vertex triples for near-zero determinants.

    With allow_antipodal_pairs, triples containing an antipodal vertex pair
    are skipped: their determinant is structurally zero (any great circle
    through a point passes through its antipode), which is unavoidable for
    centrally symmetric polygons.
    """
    min_abs, offenders = _kernels.gp_scan(
        q.vertices, tol, allow_antipodal_pairs, PAIR_MATCH_TOL
    )
    return GeneralPositionReport(
        ok=not offenders,
        offending=tuple(offenders),
        min_abs_det=min_abs,
    )


def _counts_via_kernels(q: SphericalPolygon, tol: float):
    """(I, D+, D-) straight from the kernels; assumes general position."""
    eps = _kernels.eps_signs(q.vertices, tol)
    n = len(eps)
    inflections = sum(1 for i in range(n) if eps[i] != eps[(i + 1) % n])
    recs = _kernels.pair_scan(q.vertices, tol, PAIR_MATCH_TOL)
    dplus = sum(1 for r in recs if r[2] == _kernels.SELF_CROSS)
    dminus = sum(1 for r in recs if r[2] == _kernels.ANTIPODAL_CROSS)
    return inflections, dplus, dminus


def perturb(
    q: SphericalPolygon,
    magnitude: float,
    seed: int,
    tol: float = DEGENERACY_TOL,
    max_attempts: int = 64,
) -> SphericalPolygon:
    """Tangentially displace every vertex by at most `magnitude` radians.

    Deterministic for a fixed seed. Retries until the result passes the
    general-position check and, when the input itself passes it, until the
    counts (I, D+, D-) are unchanged.
    """
    if magnitude <= 0.0:
        raise ValueError("magnitude must be positive")
    rng = np.random.default_rng(seed)
    input_gp = check_general_position(q, tol).ok
    reference = _counts_via_kernels(q, tol) if input_gp else None

    for _ in range(max_attempts):
        verts = []
        for v in q.vertices:
            g = rng.standard_normal(3)
            t = g - np.dot(g, v) * np.asarray(v)
            tn = float(np.linalg.norm(t))
            if tn < 1e-12:
                t = np.asarray((v[1], -v[0], 0.0) if abs(v[2]) < 0.9 else (0.0, v[2], -v[1]))
                tn = float(np.linalg.norm(t))
            t = t / tn
            ang = magnitude * float(rng.uniform(0.0, 1.0))
            w = math.cos(ang) * np.asarray(v) + math.sin(ang) * t
            verts.append(normalize((float(w[0]), float(w[1]), float(w[2]))))
        try:
            cand = SphericalPolygon(tuple(verts))
        except (DegenerateEdge, AntipodalConsecutive):
            continue
        if not check_general_position(cand, tol).ok:
            continue
        if reference is not None and _counts_via_kernels(cand, tol) != reference:
            continue
        return cand
    raise PerturbationFailed(f"no acceptable perturbation in {max_attempts} attempts")


def delete_vertex(q: SphericalPolygon, i: int) -> SphericalPolygon:
    """Remove vertex i and reconnect its neighbors by the minor arc."""
    if q.n < 5:
        raise TooFewVertices("deletion needs a polygon with >= 5 vertices")
    i %= q.n
    return SphericalPolygon(q.vertices[:i] + q.vertices[i + 1 :])


def is_symmetric(q: SphericalPolygon, tol: float = SYMMETRY_TOL) -> bool:
    """True iff n is even and u_{i+n/2} = -u_i for all i (within tol).

    Central symmetry forces the index shift n/2, so only that shift is tested.
    """
    if q.n % 2 != 0:
        return False
    m = q.n // 2
    return all(
        spherical_distance(q.vertex(i + m), neg(q.vertex(i))) < tol for i in range(m)
    )


def insert_vertex(q: SphericalPolygon, after: int, v: Vec3) -> SphericalPolygon:
    """New polygon with v inserted between vertices `after` and `after`+1."""
    after %= q.n
    verts = q.vertices[: after + 1] + (v,) + q.vertices[after + 1 :]
    return SphericalPolygon(verts)


# -- polygon file format ----


def polygon_to_obj(p: SphericalPolygon | SpacePolygon, name: str | None = None) -> dict:
    obj = {
        "kind": "spherical" if isinstance(p, SphericalPolygon) else "space",
        "vertices": [list(v) for v in p.vertices],
    }
    if name is not None:
        obj["name"] = name
    return obj


def polygon_from_obj(obj: dict) -> SphericalPolygon | SpacePolygon:
    kind = obj.get("kind")
    raw = obj.get("vertices")
    if kind not in ("spherical", "space") or not isinstance(raw, list):
        raise ValueError("polygon object needs kind in {spherical, space} and vertices")
    pts = [(float(v[0]), float(v[1]), float(v[2])) for v in raw]
    if kind == "space":
        return SpacePolygon(tuple(pts))
    for i, v in enumerate(pts):
        if abs(norm(v) - 1.0) > LOAD_NORM_TOL:
            raise ValueError(
                f"vertex {i} deviates from unit length by more than {LOAD_NORM_TOL}"
            )
    return SphericalPolygon(tuple(normalize(v) for v in pts))


def save_polygon(p: SphericalPolygon | SpacePolygon, path, name: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(polygon_to_obj(p, name), fh, indent=2)
        fh.write("\n")


def load_polygon(path) -> SphericalPolygon | SpacePolygon:
    with open(path, "r", encoding="utf-8") as fh:
        return polygon_from_obj(json.load(fh))
