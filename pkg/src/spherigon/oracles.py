"""Sampling-based oracles, independent of the determinant-sign predicates.

The intersection oracle samples one arc densely, finds sign changes of the
plane height against the other arc's circle, bisects each to a crossing
candidate on the exact curve, and decides by angular containment. The
hemisphere oracle scans a fixed bag of random directions. Neither route
shares logic with the sign-pattern classification it is used to check.
"""

from __future__ import annotations

import math

import numpy as np

from .polygon import SphericalPolygon
from .sphere_core import Vec3

ANGULAR_TOL = 1e-6


def _slerp(a: np.ndarray, b: np.ndarray, t: float) -> np.ndarray:
    ang = math.acos(max(-1.0, min(1.0, float(a @ b))))
    if ang < 1e-15:
        return a
    return (math.sin((1.0 - t) * ang) * a + math.sin(t * ang) * b) / math.sin(ang)


def sample_arc(a: Vec3, b: Vec3, count: int) -> np.ndarray:
    av, bv = np.asarray(a), np.asarray(b)
    ang = math.acos(max(-1.0, min(1.0, float(av @ bv))))
    ts = np.linspace(0.0, 1.0, count)
    pts = (np.sin((1.0 - ts) * ang)[:, None] * av + np.sin(ts * ang)[:, None] * bv) / math.sin(ang)
    return pts / np.linalg.norm(pts, axis=1, keepdims=True)


def _in_arc_angular(x: np.ndarray, a: np.ndarray, b: np.ndarray, margin: float) -> bool:
    """x strictly inside arc (a, b): the two sub-angles add up to the arc
    angle and x keeps clear of both endpoints."""
    ang = math.acos(max(-1.0, min(1.0, float(a @ b))))
    da = math.acos(max(-1.0, min(1.0, float(a @ x))))
    db = math.acos(max(-1.0, min(1.0, float(x @ b))))
    return abs(da + db - ang) <= margin and da > margin and db > margin


def _candidates_on_circle(
    samples: np.ndarray, a: np.ndarray, b: np.ndarray, normal: np.ndarray
) -> list[np.ndarray]:
    """Points of the sampled arc lying on the circle with the given normal,
    refined by bisection on the exact arc."""
    h = samples @ normal
    h = np.where(h == 0.0, 5e-324, h)  # exact zeros count as positive
    flips = np.nonzero(np.sign(h[:-1]) * np.sign(h[1:]) < 0)[0]
    out = []
    count = len(samples)
    for k in flips:
        lo, hi = k / (count - 1), (k + 1) / (count - 1)
        flo = h[k]
        for _ in range(40):
            mid = 0.5 * (lo + hi)
            x = _slerp(a, b, mid)
            fm = float(x @ normal)
            if (fm < 0.0) == (flo < 0.0):
                lo, flo = mid, fm
            else:
                hi = mid
        out.append(_slerp(a, b, 0.5 * (lo + hi)))
    return out


def oracle_crossings(
    q: SphericalPolygon,
    samples_per_arc: int = 10_000,
    angular_tol: float = ANGULAR_TOL,
) -> set[tuple[int, int, str]]:
    """All (i, j, kind) crossings found by dense sampling plus bisection."""
    n = q.n
    verts = [np.asarray(v) for v in q.vertices]
    arcs = [sample_arc(q.vertex(i), q.vertex(i + 1), samples_per_arc) for i in range(n)]
    normals = []
    for i in range(n):
        c = np.cross(verts[i], verts[(i + 1) % n])
        normals.append(c / np.linalg.norm(c))
    found = set()
    for i in range(n - 1):
        ai, bi = verts[i], verts[(i + 1) % n]
        for j in range(i + 1, n):
            aj, bj = verts[j], verts[(j + 1) % n]
            for x in _candidates_on_circle(arcs[i], ai, bi, normals[j]):
                if not _in_arc_angular(x, ai, bi, angular_tol):
                    continue
                if _in_arc_angular(x, aj, bj, angular_tol):
                    found.add((i, j, "self"))
                if _in_arc_angular(-x, aj, bj, angular_tol):
                    found.add((i, j, "antipodal"))
    return found


def random_directions(count: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    d = rng.standard_normal((count, 3))
    return d / np.linalg.norm(d, axis=1, keepdims=True)


def mc_hemisphere_found(points, directions: np.ndarray) -> bool:
    """True iff some sampled direction d has d . p >= 0 for every point."""
    pts = np.asarray(points, dtype=np.float64)
    dots = directions @ pts.T
    return bool((dots.min(axis=1) >= 0.0).any())
