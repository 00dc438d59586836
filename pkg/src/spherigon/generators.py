"""Seeded random polygon generators for the verification campaigns.

Families are produced by rejection sampling from uniform points where that
is feasible; the rare families (simple / antipodal-free / symmetric at
larger n) fall back to constructive jittered zigzags, re-verified against
their family's hypotheses before being emitted. Everything is deterministic
in (family, n, seed).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import GeometryError, RejectionBudgetExceeded
from .polygon import SpacePolygon, SphericalPolygon, check_general_position, tangent_indicatrix
from .sphere_core import PAIR_MATCH_TOL, Vec3, neg, normalize
from .surgery import insert_midpoint_vertex

FAMILIES = (
    "uniform",
    "balanced",
    "balanced_simple",
    "balanced_simple_antipodal_free",
    "symmetric_simple_balanced",
    "symmetric_balanced",
    "space_polygon",
)

DEFAULT_MAX_REJECTIONS = 100_000
# Uniform-rejection attempts before switching to the constructive fallback.
_UNIFORM_TRIES_SIMPLE = {4: 2000, 5: 2000, 6: 1500, 7: 1000, 8: 600, 9: 300}
_UNIFORM_TRIES_ANTIPODAL_FREE = {6: 1500, 7: 500}
_UNIFORM_TRIES_SYMMETRIC = {6: 1500, 8: 600, 10: 300}


@dataclass(frozen=True)
class GeneratorSpec:
    family: str
    n: int
    seed: int
    max_rejections: int = DEFAULT_MAX_REJECTIONS

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.n < 4:
            raise ValueError("n must be >= 4")
        if self.family == "balanced_simple_antipodal_free" and self.n < 6:
            raise ValueError("antipodal-free polygons need n >= 6")
        if self.family.startswith("symmetric"):
            if self.n % 2 != 0:
                raise ValueError("symmetric polygons need even n")
            if self.n < 6:
                raise ValueError("symmetric polygons need n >= 6")


class _Budget:
    def __init__(self, spec: GeneratorSpec):
        self.spec = spec
        self.attempts = 0
        self.accepted_stage = ""

    def spend(self, k: int = 1):
        self.attempts += k
        if self.attempts > self.spec.max_rejections:
            raise RejectionBudgetExceeded(
                f"family={self.spec.family} n={self.spec.n} seed={self.spec.seed}: "
                f"{self.attempts} attempts"
            )


def _rng(spec: GeneratorSpec) -> np.random.Generator:
    return np.random.default_rng(
        np.random.SeedSequence((spec.seed, spec.n, FAMILIES.index(spec.family)))
    )


def _tol(spec) -> float:
    return 1e-12


def _uniform_candidate(rng, n) -> SphericalPolygon | None:
    pts = rng.standard_normal((n, 3))
    nr = np.linalg.norm(pts, axis=1)
    if (nr < 1e-8).any():
        return None
    pts = pts / nr[:, None]
    try:
        q = SphericalPolygon.from_points(pts)
    except GeometryError:
        return None
    return q


def _counts(q: SphericalPolygon, tol: float):
    recs = _kernels.pair_scan(q.vertices, tol, PAIR_MATCH_TOL)
    dplus = sum(1 for r in recs if r[2] == _kernels.SELF_CROSS)
    dminus = sum(1 for r in recs if r[2] == _kernels.ANTIPODAL_CROSS)
    return dplus, dminus


def _is_balanced(q: SphericalPolygon, tol: float) -> bool:
    return _kernels.hemisphere_scan(q.vertices, tol, PAIR_MATCH_TOL) is None


def _random_rotation(rng) -> np.ndarray:
    m = rng.standard_normal((3, 3))
    qmat, r = np.linalg.qr(m)
    qmat = qmat * np.sign(np.diag(r))
    if np.linalg.det(qmat) < 0:
        qmat[:, 0] = -qmat[:, 0]
    return qmat


def _rotated(points: list[Vec3], rot: np.ndarray) -> list[Vec3]:
    arr = np.asarray(points) @ rot.T
    return [normalize((float(p[0]), float(p[1]), float(p[2]))) for p in arr]


def _zigzag(rng, n: int) -> SphericalPolygon | None:
    """Alternating-latitude band polygon; simple because every edge occupies
    its own longitude strip."""
    gaps = rng.uniform(0.6, 1.4, n)
    lons = 2.0 * math.pi * np.cumsum(gaps) / gaps.sum()
    lons += rng.uniform(0.0, 2.0 * math.pi)
    amp = rng.uniform(math.radians(12.0), math.radians(45.0), n)
    pts = []
    for i in range(n):
        lat = amp[i] * (1 if i % 2 == 0 else -1)
        pts.append(
            (
                math.cos(lat) * math.cos(lons[i]),
                math.cos(lat) * math.sin(lons[i]),
                math.sin(lat),
            )
        )
    try:
        return SphericalPolygon(tuple(_rotated(pts, _random_rotation(rng))))
    except GeometryError:
        return None


def _triangle_wave_hexagon(rng) -> SphericalPolygon | None:
    """Balanced hexagon far from its reflection: three deep vertices forming
    a spread triangle, three high vertices near the antipodal cap."""
    lons = np.radians(np.array([0.0, 60.0, 120.0, 180.0, 240.0, 300.0]) + rng.uniform(-12.0, 12.0, 6))
    pts = []
    for i in range(6):
        if i % 2 == 0:
            lat = math.radians(rng.uniform(-25.0, -5.0))
        else:
            lat = math.radians(rng.uniform(55.0, 75.0))
        pts.append(
            (
                math.cos(lat) * math.cos(lons[i]),
                math.cos(lat) * math.sin(lons[i]),
                math.sin(lat),
            )
        )
    try:
        return SphericalPolygon(tuple(_rotated(pts, _random_rotation(rng))))
    except GeometryError:
        return None


def _symmetric_candidate(rng, n: int, constructive: bool) -> SphericalPolygon | None:
    m = n // 2
    if constructive:
        gaps = rng.uniform(0.6, 1.4, m)
        lons = math.pi * np.cumsum(gaps) / gaps.sum()
        lons += rng.uniform(0.0, 2.0 * math.pi)
        amp = rng.uniform(math.radians(12.0), math.radians(45.0), m)
        half = []
        for i in range(m):
            lat = amp[i] * (1 if i % 2 == 0 else -1)
            half.append(
                (
                    math.cos(lat) * math.cos(lons[i]),
                    math.cos(lat) * math.sin(lons[i]),
                    math.sin(lat),
                )
            )
        half = _rotated(half, _random_rotation(rng))
    else:
        pts = rng.standard_normal((m, 3))
        nr = np.linalg.norm(pts, axis=1)
        if (nr < 1e-8).any():
            return None
        half = [normalize(tuple(map(float, p))) for p in pts / nr[:, None]]
    verts = half + [neg(v) for v in half]
    try:
        return SphericalPolygon(tuple(verts))
    except GeometryError:
        return None


def generate(spec: GeneratorSpec) -> SphericalPolygon | SpacePolygon:
    """Deterministic sample from the requested family.

    Every emitted polygon is re-verified: general position (symmetry-aware
    for the symmetric families) plus the family's declared hypotheses.
    """
    rng = _rng(spec)
    tol = _tol(spec)
    budget = _Budget(spec)
    fam, n = spec.family, spec.n

    if fam == "space_polygon":
        while True:
            budget.spend()
            pts = rng.standard_normal((n, 3))
            try:
                p = SpacePolygon.from_points(pts)
                q = tangent_indicatrix(p)
            except GeometryError:
                continue
            if check_general_position(q, tol).ok:
                return p

    if fam in ("symmetric_simple_balanced", "symmetric_balanced"):
        need_simple = fam == "symmetric_simple_balanced"
        tries = _UNIFORM_TRIES_SYMMETRIC.get(n, 200)
        for constructive in (False, True):
            while True:
                budget.spend()
                if not constructive and budget.attempts > tries:
                    break
                q = _symmetric_candidate(rng, n, constructive)
                if q is None:
                    continue
                if not check_general_position(q, tol, allow_antipodal_pairs=True).ok:
                    continue
                if not _is_balanced(q, tol):
                    continue
                if need_simple and _counts(q, tol)[0] != 0:
                    continue
                return q

    if fam == "balanced_simple_antipodal_free":
        tries = _UNIFORM_TRIES_ANTIPODAL_FREE.get(n, 0)
        while budget.attempts < tries:
            budget.spend()
            q = _uniform_candidate(rng, n)
            if q is None or not check_general_position(q, tol).ok:
                continue
            if not _is_balanced(q, tol):
                continue
            if _counts(q, tol) == (0, 0):
                return q
        while True:
            budget.spend()
            core = _triangle_wave_hexagon(rng)
            if core is None or not check_general_position(core, tol).ok:
                continue
            if not (_is_balanced(core, tol) and _counts(core, tol) == (0, 0)):
                continue
            q = core
            ok = True
            for _ in range(n - 6):
                try:
                    q = insert_midpoint_vertex(q, int(rng.integers(q.n)), tol)
                except GeometryError:
                    ok = False
                    break
            if not ok:
                continue
            if (
                check_general_position(q, tol).ok
                and _is_balanced(q, tol)
                and _counts(q, tol) == (0, 0)
            ):
                return q

    if fam in ("uniform", "balanced", "balanced_simple"):
        tries = None
        if fam == "balanced_simple":
            tries = _UNIFORM_TRIES_SIMPLE.get(n, 150)
        while True:
            budget.spend()
            if tries is not None and budget.attempts > tries:
                break
            q = _uniform_candidate(rng, n)
            if q is None or not check_general_position(q, tol).ok:
                continue
            if fam == "uniform":
                return q
            if not _is_balanced(q, tol):
                continue
            if fam == "balanced":
                return q
            if _counts(q, tol)[0] == 0:
                return q
        # constructive fallback for balanced_simple
        while True:
            budget.spend()
            q = _zigzag(rng, n)
            if q is None or not check_general_position(q, tol).ok:
                continue
            if _is_balanced(q, tol) and _counts(q, tol)[0] == 0:
                return q

    raise ValueError(f"unhandled family {fam!r}")
