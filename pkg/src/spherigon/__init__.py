"""Spherical polygon geometry and verification of four-vertex-type inequalities."""

from ._kernels import backend_name
from .analysis import (
    AnalysisReport,
    CrossingKind,
    EpsilonSequence,
    IntersectionRecord,
    VertexClass,
    analyze,
    analyze_space_polygon,
    classify_vertices,
    count_cusps,
    count_flattenings_direct,
    count_inflections,
    epsilon_signs,
    find_intersections,
    find_removable_vertex,
)
from .polygon import (
    GeneralPositionReport,
    SpacePolygon,
    SphericalPolygon,
    check_general_position,
    delete_vertex,
    insert_vertex,
    is_symmetric,
    load_polygon,
    perturb,
    polygon_from_obj,
    polygon_to_obj,
    save_polygon,
    tangent_indicatrix,
)
from .sphere_core import (
    ArcRelation,
    ArcTag,
    GreatArc,
    Vec3,
    arcs_relation,
    balanced4,
    hemisphere_witness,
    oriented_sign,
    point_in_spherical_triangle,
    positive_combination,
    spherical_distance,
    unit,
)
from .campaign import ReportDoc, emit_report, parse_report, run_campaign
from .checks import CHECK_IDS, TheoremCheck, run_checks
from .generators import FAMILIES, GeneratorSpec, generate
from .hulls import (
    Lune,
    LuneLocation,
    SphericalConvexHull,
    Triangulation,
    exterior_pocket_good_vertices,
    interior_of,
    lune_contains,
    spherical_convex_hull,
    triangulate_interior,
)
from .surgery import (
    GammaTable,
    LocalFrame,
    SurgeryResult,
    buffer_vertices,
    cut_and_paste,
    gamma_table,
    insert_midpoint_vertex,
    local_frame,
    prepare_and_cut,
    split_at_intersection,
    two_gamma,
)

__version__ = "0.1.0"
