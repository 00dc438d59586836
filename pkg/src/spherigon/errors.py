"""Exception types shared across the package."""


class GeometryError(Exception):
    """Base class for all geometric failures."""


class DegenerateTriple(GeometryError):
    """Three points lie on one great circle (determinant below tolerance)."""


class DegenerateEdge(GeometryError):
    """Zero-length edge, or consecutive edges with equal direction."""


class AntipodalConsecutive(GeometryError):
    """Consecutive vertices are antipodal; the minor arc between them is undefined."""


class InvalidArc(GeometryError):
    """Arc endpoints equal or antipodal."""


class NotBalanced(GeometryError):
    """Point set fits in a closed hemisphere where balance was required."""


class BalancedInput(GeometryError):
    """Point set is balanced, so no hemisphere-based construction applies."""


class TooFewVertices(GeometryError):
    """Operation would leave a polygon with too few vertices."""


class VertexOnEdge(GeometryError):
    """A vertex lies on a non-adjacent edge."""


class PerturbationFailed(GeometryError):
    """Retry budget exhausted without an acceptable perturbation."""


class NumericalUnderflow(GeometryError):
    """A constructed length fell below tolerance."""


class RegionNotEmpty(GeometryError):
    """A surgery region contains foreign vertices; buffer first."""


class ConsecutiveEndpoints(GeometryError):
    """Crossing endpoints are adjacent in the polygon; insert a midpoint first."""


class NotSimple(GeometryError):
    """Polygon has self-intersections where simplicity was required."""


class AmbiguousInterior(GeometryError):
    """Neither interior-selection rule applies to this polygon."""


class EarNotFound(GeometryError):
    """Ear clipping found no clippable vertex (bad input or degeneracy)."""


class ConvexInput(GeometryError):
    """Polygon is convex, so it has no exterior pockets."""


class PreconditionViolated(GeometryError):
    """Input fails the stated hypotheses of the operation."""


class RejectionBudgetExceeded(GeometryError):
    """Random generation exhausted its rejection budget."""


class TheoremViolation(GeometryError):
    """A proven inequality failed on a concrete input (treated as a bug)."""
