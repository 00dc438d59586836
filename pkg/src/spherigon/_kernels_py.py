"""Pure-Python kernels for the polygon-scale hot loops.

Mirrored by the compiled extension ``_kernels_cy``; both backends must be
behaviorally identical (same scan order, same floats, same exceptions).
Coordinates are accepted as any sequence of (x, y, z) rows.
"""

from __future__ import annotations

from .errors import DegenerateTriple, VertexOnEdge

SELF_CROSS = 1
ANTIPODAL_CROSS = 2

BACKEND = "pure"


def _rows(coords):
    return [(float(r[0]), float(r[1]), float(r[2])) for r in coords]


def _det3(u, v, w):
    return (
        u[0] * (v[1] * w[2] - v[2] * w[1])
        - u[1] * (v[0] * w[2] - v[2] * w[0])
        + u[2] * (v[0] * w[1] - v[1] * w[0])
    )


def _antipodal(a, b, atol):
    return (
        abs(a[0] + b[0]) < atol and abs(a[1] + b[1]) < atol and abs(a[2] + b[2]) < atol
    )


def _equal(a, b, atol):
    return (
        abs(a[0] - b[0]) < atol and abs(a[1] - b[1]) < atol and abs(a[2] - b[2]) < atol
    )


def _inside_arc(p, a, b, tol):
    # Strictly between a and b on their great circle (p assumed on it).
    nx = a[1] * b[2] - a[2] * b[1]
    ny = a[2] * b[0] - a[0] * b[2]
    nz = a[0] * b[1] - a[1] * b[0]
    c1x = a[1] * p[2] - a[2] * p[1]
    c1y = a[2] * p[0] - a[0] * p[2]
    c1z = a[0] * p[1] - a[1] * p[0]
    if c1x * nx + c1y * ny + c1z * nz <= tol:
        return False
    c2x = p[1] * b[2] - p[2] * b[1]
    c2y = p[2] * b[0] - p[0] * b[2]
    c2z = p[0] * b[1] - p[1] * b[0]
    return c2x * nx + c2y * ny + c2z * nz > tol


def eps_signs(coords, tol):
    """Sign of det[u_i, u_{i+1}, u_{i+2}] for every cyclic index."""
    pts = _rows(coords)
    n = len(pts)
    out = []
    for i in range(n):
        d = _det3(pts[i], pts[(i + 1) % n], pts[(i + 2) % n])
        if abs(d) < tol:
            raise DegenerateTriple(
                f"consecutive vertices {i},{(i + 1) % n},{(i + 2) % n} on one great circle"
            )
        out.append(1 if d > 0.0 else -1)
    return out


def _check_degenerate(d, vtx, va, vb, tol, vidx, eidx):
    if abs(d) < tol:
        if _inside_arc(vtx, va, vb, tol):
            raise VertexOnEdge(f"vertex {vidx} lies on edge {eidx}")
        raise DegenerateTriple(f"vertex {vidx} on the great circle of edge {eidx}")


def _check_hinge(prev_pt, hinge, next_pt, tol, atol, iprev, ihinge):
    # Edges (prev->hinge) and (hinge->next). Antipodal neighbors make a flat
    # hinge spanning exactly half a circle: collinear but never overlapping.
    if _antipodal(prev_pt, next_pt, atol):
        return
    if abs(_det3(prev_pt, hinge, next_pt)) < tol:
        raise DegenerateTriple(
            f"edges at shared vertex {ihinge} are collinear (hinge {iprev},{ihinge})"
        )


def pair_scan(coords, tol, atol):
    """All self / antipodal crossings among edge pairs of a closed polygon.

    Returns (i, j, kind) with i < j, kind in {SELF_CROSS, ANTIPODAL_CROSS}.
    Pairs sharing a vertex or joined by antipodal endpoints cannot cross and
    are only validated for nondegeneracy.
    """
    pts = _rows(coords)
    n = len(pts)
    out = []
    for i in range(n - 1):
        a1 = pts[i]
        a2 = pts[(i + 1) % n]
        for j in range(i + 1, n):
            b1 = pts[j]
            b2 = pts[(j + 1) % n]
            if (i + 1) % n == j:
                _check_hinge(a1, a2, b2, tol, atol, i, j)
                continue
            if (j + 1) % n == i:
                _check_hinge(b1, b2, a2, tol, atol, j, i)
                continue
            ap11 = _antipodal(a1, b1, atol)
            ap12 = _antipodal(a1, b2, atol)
            ap21 = _antipodal(a2, b1, atol)
            ap22 = _antipodal(a2, b2, atol)
            if ap11 or ap12 or ap21 or ap22:
                # Both circles pass through the antipodal pair, so the arcs
                # can meet only at those two points, never transversally.
                if not (ap11 or ap21):
                    _check_degenerate(_det3(a1, a2, b1), b1, a1, a2, tol, j, i)
                if not (ap21 or ap22):
                    _check_degenerate(_det3(a2, b1, b2), a2, b1, b2, tol, (i + 1) % n, j)
                if not (ap12 or ap22):
                    _check_degenerate(_det3(a1, a2, b2), b2, a1, a2, tol, (j + 1) % n, i)
                if not (ap11 or ap12):
                    _check_degenerate(_det3(a1, b1, b2), a1, b1, b2, tol, i, j)
                continue
            d1 = _det3(a1, a2, b1)
            d2 = _det3(a2, b1, b2)
            d3 = _det3(a1, a2, b2)
            d4 = _det3(a1, b1, b2)
            _check_degenerate(d1, b1, a1, a2, tol, j, i)
            _check_degenerate(d2, a2, b1, b2, tol, (i + 1) % n, j)
            _check_degenerate(d3, b2, a1, a2, tol, (j + 1) % n, i)
            _check_degenerate(d4, a1, b1, b2, tol, i, j)
            s1 = 1 if d1 > 0.0 else -1
            s2 = 1 if d2 > 0.0 else -1
            s3 = 1 if d3 > 0.0 else -1
            s4 = 1 if d4 > 0.0 else -1
            if s1 == s2 and s3 == s4 and s1 != s3:
                out.append((i, j, SELF_CROSS))
            elif s1 == s4 and s2 == s3 and s1 != s3:
                out.append((i, j, ANTIPODAL_CROSS))
    return out


def gp_scan(coords, tol, skip_antipodal, atol):
    """Scan all vertex triples; returns (min |det| seen, offending triples)."""
    pts = _rows(coords)
    n = len(pts)
    min_abs = float("inf")
    offenders = []
    for i in range(n - 2):
        for j in range(i + 1, n - 1):
            ij_anti = skip_antipodal and _antipodal(pts[i], pts[j], atol)
            for k in range(j + 1, n):
                if skip_antipodal and (
                    ij_anti
                    or _antipodal(pts[i], pts[k], atol)
                    or _antipodal(pts[j], pts[k], atol)
                ):
                    continue
                d = abs(_det3(pts[i], pts[j], pts[k]))
                if d < min_abs:
                    min_abs = d
                if d < tol:
                    offenders.append((i, j, k))
    return min_abs, offenders


def hemisphere_scan(coords, tol, atol):
    """Witness normal with n . p >= 0 for all points, or None if balanced.

    Candidates are normals of point pairs; determinant zeros are tolerated
    only for points (anti)equal to a pair member.
    """
    pts = _rows(coords)
    n = len(pts)
    for i in range(n - 1):
        p = pts[i]
        for j in range(i + 1, n):
            q = pts[j]
            cx = p[1] * q[2] - p[2] * q[1]
            cy = p[2] * q[0] - p[0] * q[2]
            cz = p[0] * q[1] - p[1] * q[0]
            cn = (cx * cx + cy * cy + cz * cz) ** 0.5
            if cn < tol:
                continue
            has_pos = False
            has_neg = False
            for k in range(n):
                if k == i or k == j:
                    continue
                r = pts[k]
                d = _det3(p, q, r)
                if abs(d) < tol:
                    if (
                        _equal(r, p, atol)
                        or _equal(r, q, atol)
                        or _antipodal(r, p, atol)
                        or _antipodal(r, q, atol)
                    ):
                        continue
                    raise DegenerateTriple(
                        f"points {i},{j},{k} on one great circle"
                    )
                if d > 0.0:
                    has_pos = True
                else:
                    has_neg = True
                if has_pos and has_neg:
                    break
            if not has_neg:
                return (cx / cn, cy / cn, cz / cn)
            if not has_pos:
                return (-cx / cn, -cy / cn, -cz / cn)
    return None
