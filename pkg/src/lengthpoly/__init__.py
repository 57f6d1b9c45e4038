"""Length-increasing deformations of singular hyperbolic one-holed tori.

Given a geometric trace triple, every rational slope contributes one side
of an infinite convex projective polygon of deformation directions that
lengthen all simple closed curves.  This package computes those sides in
closed form, certifies the assembled boundary, quantifies its asymptotic
shape, and follows the two degenerate limits (one pinched curve; the
fully collapsed Euclidean torus, where the polygon rounds out to a disk).
"""

from ._mp import DEFAULT_BITS, MIN_BITS, PrecisionError, default_bits
from .farey import (
    BASE_SLOPES,
    INFINITY,
    ONE,
    ZERO,
    BaseRegionError,
    FareyTriangle,
    NotNeighborsError,
    Slope,
    anchor_pair,
    cross,
    enumerate_slopes,
    expansions,
    is_neighbor,
    mediant,
    parents,
    sorted_slopes,
    tree_depth,
)
from .markoff import (
    Classification,
    HalfTraceCoords,
    MarkoffTriple,
    NotGeometricError,
    classify,
    half_trace_coords,
    jet_at,
    k_constancy_check,
    triple_from_coords,
    value_at,
)
from .polygon import (
    Chart,
    ConvexityError,
    Edge,
    FamilyEdge,
    MembershipResult,
    PolygonApprox,
    Quadrilateral,
    assemble,
    dlength,
    edge_closed_form,
    edge_global,
    interior_point,
    membership,
    quadrilateral,
    suggest_assembly_bits,
)
from .asymptotics import (
    axis_intercept,
    expansion_residuals,
    gap_proportion,
    interleaving_threshold,
    side_and_chord,
    side_slope,
    slope_interleaving_ok,
)
from .degenerate import (
    FlatTorusForm,
    OnePinchModel,
    disk_center_radius,
    eta_form,
    euclidean_extension,
    flat_length,
    hausdorff_to_disk,
    lightlike_vector,
    minkowski,
    octant_tangency_certificate,
    one_pinch_edge,
    one_pinch_model,
    parabola_certificates,
    pinch_side_share,
    round_cone_test,
    shrink_family,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_BITS",
    "MIN_BITS",
    "PrecisionError",
    "default_bits",
    "BASE_SLOPES",
    "INFINITY",
    "ONE",
    "ZERO",
    "BaseRegionError",
    "FareyTriangle",
    "NotNeighborsError",
    "Slope",
    "anchor_pair",
    "cross",
    "enumerate_slopes",
    "expansions",
    "is_neighbor",
    "mediant",
    "parents",
    "sorted_slopes",
    "tree_depth",
    "Classification",
    "HalfTraceCoords",
    "MarkoffTriple",
    "NotGeometricError",
    "classify",
    "half_trace_coords",
    "jet_at",
    "k_constancy_check",
    "triple_from_coords",
    "value_at",
    "Chart",
    "ConvexityError",
    "Edge",
    "FamilyEdge",
    "MembershipResult",
    "PolygonApprox",
    "Quadrilateral",
    "assemble",
    "dlength",
    "edge_closed_form",
    "edge_global",
    "interior_point",
    "membership",
    "quadrilateral",
    "suggest_assembly_bits",
    "axis_intercept",
    "expansion_residuals",
    "gap_proportion",
    "interleaving_threshold",
    "side_and_chord",
    "side_slope",
    "slope_interleaving_ok",
    "FlatTorusForm",
    "OnePinchModel",
    "disk_center_radius",
    "eta_form",
    "euclidean_extension",
    "flat_length",
    "hausdorff_to_disk",
    "lightlike_vector",
    "minkowski",
    "octant_tangency_certificate",
    "one_pinch_edge",
    "one_pinch_model",
    "parabola_certificates",
    "pinch_side_share",
    "round_cone_test",
    "shrink_family",
    "__version__",
]
