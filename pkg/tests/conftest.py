import math

import pytest

from spherigon import SphericalPolygon, unit


def sph(lon_deg: float, lat_deg: float):
    """Unit vector from longitude/latitude in degrees."""
    lon, lat = math.radians(lon_deg), math.radians(lat_deg)
    return (
        math.cos(lat) * math.cos(lon),
        math.cos(lat) * math.sin(lon),
        math.sin(lat),
    )


TETRA = (
    unit(1, 1, 1),
    unit(1, -1, -1),
    unit(-1, 1, -1),
    unit(-1, -1, 1),
)

# Balanced hexagon without self or antipodal intersections: three deep
# vertices forming a spread triangle and three high vertices near the
# antipodal cap, far from the reflected polygon.
HEX6_VERTICES = tuple(
    sph(lon, -10 if i % 2 == 0 else 70)
    for i, lon in enumerate((0, 60, 120, 180, 240, 300))
)

# Single self-crossing between edges 0 and 3 (near e1), everything else clear.
FIG8_VERTICES = (
    sph(-30, 0),
    sph(30, 0),
    sph(40, -40),
    sph(0, -30),
    sph(0, 30),
    sph(-40, 40),
)

# FIG8 with a detour vertex inside the crossing region {u_0, u_3, w}.
CROSSED7_VERTICES = (
    sph(-30, 0),
    sph(30, 0),
    sph(40, -40),
    sph(0, -30),
    sph(0, 30),
    sph(-12, -9),
    sph(-40, 40),
)

# Simple hemisphere-contained pentagon with one reflex vertex (index 1),
# built in the gnomonic chart at the north pole.
REFLEX_PENTAGON_PLANE = ((1.2, 0.0), (0.2, 0.25), (-0.6, 0.9), (-0.8, -0.6), (0.4, -0.9))


@pytest.fixture
def tetra_quad():
    return SphericalPolygon(TETRA)


@pytest.fixture
def hex6():
    return SphericalPolygon(HEX6_VERTICES)


@pytest.fixture
def fig8():
    return SphericalPolygon(FIG8_VERTICES)


@pytest.fixture
def crossed7():
    return SphericalPolygon(CROSSED7_VERTICES)


@pytest.fixture
def reflex_pentagon():
    return SphericalPolygon.from_points([(x, y, 1.0) for x, y in REFLEX_PENTAGON_PLANE])


@pytest.fixture
def symmetric_hexagon():
    base = [sph(0, 20), sph(60, -20), sph(120, 20)]
    return SphericalPolygon(tuple(base + [tuple(-c for c in v) for v in base]))


@pytest.fixture
def convex_pentagon():
    return SphericalPolygon.from_points(
        [(math.cos(t), math.sin(t), 2.0) for t in (0.1, 1.3, 2.6, 3.9, 5.1)]
    )
