"""Compact floor plans for plane triangulations via orderly spanning trees.

The pipeline turns a triangulation with a chosen outer face into a
rectilinear floor plan whose modules touch exactly when their nodes are
adjacent: pick an orderly spanning tree with few leaves, draw it as a
visibility layout, stretch the rows until every unrelated edge gets a
horizontal contact, grow contact branches, and squash the branches flat.
floorplan() runs the whole chain; the intermediate stages are exposed for
inspection and testing.
"""

from __future__ import annotations

from . import engine
from .errors import (
    AsymmetricEdge,
    BudgetExceeded,
    CyclicDependency,
    ExteriorNotAFace,
    InternalError,
    NonUniqueCoveringNode,
    NotANeighbor,
    NotSimple,
    NotTriangulated,
    OstplanError,
    ParseError,
    WrongEdgeCount,
)
from .formats import ParsedPlan, read_graph, read_plan, write_graph, write_plan
from .instances import (
    InstanceSpec,
    brute_force_min_area,
    lower_bound_predicate,
    nested_triangle_family,
    random_triangulation,
)
from .layout import (
    FloorPlan,
    TwoVisibilityDrawing,
    floorplan,
    grow_branches,
    reduce_branch_heights,
    stretch_to_two_visibility,
    visibility_drawing_of_tree,
)
from .ost import (
    OrderlySpanningTree,
    Realizer,
    TreeAnnotations,
    annotate,
    canonical_order,
    check_orderly,
    check_realizer,
    min_leaf_ost,
    ost_from_realizer,
    realizer_from_canonical,
)
from .plane_graph import PlaneTriangulation
from .validator import (
    Finding,
    ValidationReport,
    check_adjacency,
    check_bounds,
    check_partition,
    check_shapes,
    classify_module,
    rasterize,
    validate_floorplan,
)

__version__ = "0.1.0"

__all__ = [
    "AsymmetricEdge",
    "BudgetExceeded",
    "CyclicDependency",
    "ExteriorNotAFace",
    "Finding",
    "FloorPlan",
    "InstanceSpec",
    "InternalError",
    "NonUniqueCoveringNode",
    "NotANeighbor",
    "NotSimple",
    "NotTriangulated",
    "OrderlySpanningTree",
    "OstplanError",
    "ParseError",
    "ParsedPlan",
    "PlaneTriangulation",
    "Realizer",
    "TreeAnnotations",
    "TwoVisibilityDrawing",
    "ValidationReport",
    "WrongEdgeCount",
    "annotate",
    "brute_force_min_area",
    "canonical_order",
    "check_adjacency",
    "check_bounds",
    "check_orderly",
    "check_partition",
    "check_realizer",
    "check_shapes",
    "classify_module",
    "engine",
    "floorplan",
    "grow_branches",
    "lower_bound_predicate",
    "min_leaf_ost",
    "nested_triangle_family",
    "ost_from_realizer",
    "random_triangulation",
    "rasterize",
    "read_graph",
    "read_plan",
    "realizer_from_canonical",
    "reduce_branch_heights",
    "stretch_to_two_visibility",
    "validate_floorplan",
    "visibility_drawing_of_tree",
    "write_graph",
    "write_plan",
    "__version__",
]
