# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the polygon-scale hot loops.

Behavioral twin of ``_kernels_py`` (same scan order, same floating-point
expression order, same exceptions); parity is enforced by tests.
"""

import numpy as np

from .errors import DegenerateTriple, VertexOnEdge

SELF_CROSS = 1
ANTIPODAL_CROSS = 2

BACKEND = "cython"


cdef inline double _det3(const double* u, const double* v, const double* w) nogil:
    return (
        u[0] * (v[1] * w[2] - v[2] * w[1])
        - u[1] * (v[0] * w[2] - v[2] * w[0])
        + u[2] * (v[0] * w[1] - v[1] * w[0])
    )


cdef inline bint _antipodal(const double* a, const double* b, double atol) nogil:
    return (
        (a[0] + b[0] if a[0] + b[0] >= 0 else -(a[0] + b[0])) < atol
        and (a[1] + b[1] if a[1] + b[1] >= 0 else -(a[1] + b[1])) < atol
        and (a[2] + b[2] if a[2] + b[2] >= 0 else -(a[2] + b[2])) < atol
    )


cdef inline bint _equal(const double* a, const double* b, double atol) nogil:
    return (
        (a[0] - b[0] if a[0] - b[0] >= 0 else -(a[0] - b[0])) < atol
        and (a[1] - b[1] if a[1] - b[1] >= 0 else -(a[1] - b[1])) < atol
        and (a[2] - b[2] if a[2] - b[2] >= 0 else -(a[2] - b[2])) < atol
    )


cdef inline bint _inside_arc(const double* p, const double* a, const double* b, double tol) nogil:
    cdef double nx = a[1] * b[2] - a[2] * b[1]
    cdef double ny = a[2] * b[0] - a[0] * b[2]
    cdef double nz = a[0] * b[1] - a[1] * b[0]
    cdef double c1x = a[1] * p[2] - a[2] * p[1]
    cdef double c1y = a[2] * p[0] - a[0] * p[2]
    cdef double c1z = a[0] * p[1] - a[1] * p[0]
    if c1x * nx + c1y * ny + c1z * nz <= tol:
        return False
    cdef double c2x = p[1] * b[2] - p[2] * b[1]
    cdef double c2y = p[2] * b[0] - p[0] * b[2]
    cdef double c2z = p[0] * b[1] - p[1] * b[0]
    return c2x * nx + c2y * ny + c2z * nz > tol


cdef double[:, ::1] _as_view(coords):
    return np.ascontiguousarray(coords, dtype=np.float64)


def eps_signs(coords, double tol):
    """Sign of det[u_i, u_{i+1}, u_{i+2}] for every cyclic index."""
    cdef double[:, ::1] pts = _as_view(coords)
    cdef Py_ssize_t n = pts.shape[0]
    cdef Py_ssize_t i
    cdef double d
    out = []
    for i in range(n):
        d = _det3(&pts[i, 0], &pts[(i + 1) % n, 0], &pts[(i + 2) % n, 0])
        if (d if d >= 0 else -d) < tol:
            raise DegenerateTriple(
                f"consecutive vertices {i},{(i + 1) % n},{(i + 2) % n} on one great circle"
            )
        out.append(1 if d > 0.0 else -1)
    return out


cdef int _check_degenerate(double d, const double* vtx, const double* va,
                           const double* vb, double tol, Py_ssize_t vidx,
                           Py_ssize_t eidx) except -1:
    if (d if d >= 0 else -d) < tol:
        if _inside_arc(vtx, va, vb, tol):
            raise VertexOnEdge(f"vertex {vidx} lies on edge {eidx}")
        raise DegenerateTriple(f"vertex {vidx} on the great circle of edge {eidx}")
    return 0


cdef int _check_hinge(const double* prev_pt, const double* hinge,
                      const double* next_pt, double tol, double atol,
                      Py_ssize_t iprev, Py_ssize_t ihinge) except -1:
    cdef double d
    if _antipodal(prev_pt, next_pt, atol):
        return 0
    d = _det3(prev_pt, hinge, next_pt)
    if (d if d >= 0 else -d) < tol:
        raise DegenerateTriple(
            f"edges at shared vertex {ihinge} are collinear (hinge {iprev},{ihinge})"
        )
    return 0


def pair_scan(coords, double tol, double atol):
    """All self / antipodal crossings among edge pairs of a closed polygon."""
    cdef double[:, ::1] pts = _as_view(coords)
    cdef Py_ssize_t n = pts.shape[0]
    cdef Py_ssize_t i, j, i1, j1
    cdef const double *a1
    cdef const double *a2
    cdef const double *b1
    cdef const double *b2
    cdef bint ap11, ap12, ap21, ap22
    cdef double d1, d2, d3, d4
    cdef int s1, s2, s3, s4
    out = []
    for i in range(n - 1):
        i1 = (i + 1) % n
        a1 = &pts[i, 0]
        a2 = &pts[i1, 0]
        for j in range(i + 1, n):
            j1 = (j + 1) % n
            b1 = &pts[j, 0]
            b2 = &pts[j1, 0]
            if i1 == j:
                _check_hinge(a1, a2, b2, tol, atol, i, j)
                continue
            if j1 == i:
                _check_hinge(b1, b2, a2, tol, atol, j, i)
                continue
            ap11 = _antipodal(a1, b1, atol)
            ap12 = _antipodal(a1, b2, atol)
            ap21 = _antipodal(a2, b1, atol)
            ap22 = _antipodal(a2, b2, atol)
            if ap11 or ap12 or ap21 or ap22:
                if not (ap11 or ap21):
                    _check_degenerate(_det3(a1, a2, b1), b1, a1, a2, tol, j, i)
                if not (ap21 or ap22):
                    _check_degenerate(_det3(a2, b1, b2), a2, b1, b2, tol, i1, j)
                if not (ap12 or ap22):
                    _check_degenerate(_det3(a1, a2, b2), b2, a1, a2, tol, j1, i)
                if not (ap11 or ap12):
                    _check_degenerate(_det3(a1, b1, b2), a1, b1, b2, tol, i, j)
                continue
            d1 = _det3(a1, a2, b1)
            d2 = _det3(a2, b1, b2)
            d3 = _det3(a1, a2, b2)
            d4 = _det3(a1, b1, b2)
            _check_degenerate(d1, b1, a1, a2, tol, j, i)
            _check_degenerate(d2, a2, b1, b2, tol, i1, j)
            _check_degenerate(d3, b2, a1, a2, tol, j1, i)
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


def gp_scan(coords, double tol, bint skip_antipodal, double atol):
    """Scan all vertex triples; returns (min |det| seen, offending triples)."""
    cdef double[:, ::1] pts = _as_view(coords)
    cdef Py_ssize_t n = pts.shape[0]
    cdef Py_ssize_t i, j, k
    cdef double d
    cdef double min_abs = float("inf")
    cdef bint ij_anti
    offenders = []
    for i in range(n - 2):
        for j in range(i + 1, n - 1):
            ij_anti = skip_antipodal and _antipodal(&pts[i, 0], &pts[j, 0], atol)
            for k in range(j + 1, n):
                if skip_antipodal and (
                    ij_anti
                    or _antipodal(&pts[i, 0], &pts[k, 0], atol)
                    or _antipodal(&pts[j, 0], &pts[k, 0], atol)
                ):
                    continue
                d = _det3(&pts[i, 0], &pts[j, 0], &pts[k, 0])
                if d < 0:
                    d = -d
                if d < min_abs:
                    min_abs = d
                if d < tol:
                    offenders.append((i, j, k))
    return min_abs, offenders


def hemisphere_scan(coords, double tol, double atol):
    """Witness normal with n . p >= 0 for all points, or None if balanced."""
    cdef double[:, ::1] pts = _as_view(coords)
    cdef Py_ssize_t n = pts.shape[0]
    cdef Py_ssize_t i, j, k
    cdef const double *p
    cdef const double *q
    cdef const double *r
    cdef double cx, cy, cz, cn, d
    cdef bint has_pos, has_neg
    for i in range(n - 1):
        p = &pts[i, 0]
        for j in range(i + 1, n):
            q = &pts[j, 0]
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
                r = &pts[k, 0]
                d = _det3(p, q, r)
                if (d if d >= 0 else -d) < tol:
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
