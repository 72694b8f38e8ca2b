"""Exact Reeb graphs of PL functions, certified quotient maps, and
constructive upper bounds for the universal edit distance."""

from .category import induced_map, limit_projection, pullback, triangulate_limit, zigzag_limit
from .editdist import (
    BoundRegistry,
    Coupling,
    ZigzagDiagram,
    build_homotopy_zigzag,
    compose_couplings,
    coupling,
    coupling_bound,
    homotopy_breakpoints,
    identity_coupling,
    induced_quotient_via_reparam,
    interpolate,
    point_distance,
    point_graph,
    product_coupling,
    zigzag_cost,
    zigzag_from_coupling,
)
from .generators import circle, cylinder, path, point, random_instance
from .graphs import (
    GraphPoint,
    ReebGraph,
    complexify,
    graph_isomorphic,
    minimalize,
    point_on_edge,
)
from .maps import (
    CellMap,
    Certificate,
    MonotonePL,
    compose,
    subdivide_at_levels,
    verify_reeb_quotient,
)
from .metrics import (
    PLGraphMap,
    correspondence_table,
    d_f,
    d_matrix,
    distortion,
    fd_upper_bound,
    plgraphmap_from_cellmap,
    sample_points,
)
from .plcore import (
    PLFunction,
    SimplicialComplex,
    barycentric_subdivision,
    interval_preimage_components,
    level_components,
    validate_complex,
)
from .reeb import compute_reeb, graph_identity_map, reeb_of_graph

__version__ = "0.1.0"

__all__ = [
    "BoundRegistry",
    "CellMap",
    "Certificate",
    "Coupling",
    "GraphPoint",
    "MonotonePL",
    "PLFunction",
    "PLGraphMap",
    "ReebGraph",
    "SimplicialComplex",
    "ZigzagDiagram",
    "barycentric_subdivision",
    "build_homotopy_zigzag",
    "circle",
    "complexify",
    "compose",
    "compose_couplings",
    "compute_reeb",
    "correspondence_table",
    "coupling",
    "coupling_bound",
    "cylinder",
    "d_f",
    "d_matrix",
    "distortion",
    "fd_upper_bound",
    "graph_identity_map",
    "graph_isomorphic",
    "homotopy_breakpoints",
    "identity_coupling",
    "induced_map",
    "induced_quotient_via_reparam",
    "interpolate",
    "interval_preimage_components",
    "level_components",
    "limit_projection",
    "minimalize",
    "path",
    "plgraphmap_from_cellmap",
    "point",
    "point_distance",
    "point_graph",
    "point_on_edge",
    "product_coupling",
    "pullback",
    "random_instance",
    "reeb_of_graph",
    "sample_points",
    "subdivide_at_levels",
    "triangulate_limit",
    "validate_complex",
    "verify_reeb_quotient",
    "zigzag_cost",
    "zigzag_from_coupling",
    "zigzag_limit",
]
