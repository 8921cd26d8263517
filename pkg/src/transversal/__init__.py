"""Transversal matroids, single-element contractions, and path-circular minors."""

from .core import (
    ElementSet,
    GroundSet,
    Matroid,
    MatroidError,
    MinorMatroid,
    ParseError,
    PreconditionError,
    Presentation,
    RankOracle,
    SizeLimitError,
    TransversalMatroid,
    VerificationError,
    has_transversal,
    loops_and_coloops,
    matroids_equal,
    max_partial_transversal,
    normalize_presentation,
    restrict,
)
from .cotransversal import (
    AlphaTable,
    alpha,
    alpha_presentation,
    alpha_table,
    cyclic_flats,
    exchange_set,
    is_cotransversal,
    is_cyclic_flat,
    maximal_presentation,
)
from .contraction import (
    ContractionVerdict,
    PresentingGraph,
    contract_presentation,
    induced_support,
    is_contraction_transversal,
    is_presenting,
    minimal_presenting_graph,
    pivot_indices,
)
from .pathcircular import (
    PathCircularInstance,
    SimpleGraph,
    VertexPath,
    add_coloop,
    bicircular,
    contract_path,
    delete_path,
    matroid_of,
    multipath,
    validate,
)

__version__ = "0.1.0"
