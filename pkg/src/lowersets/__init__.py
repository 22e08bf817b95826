"""Lower sets in Z_+^d: enumeration, counting, growth bounds and
sampling discretization experiments."""

from .core import (
    BudgetExceededError,
    Coords,
    LowerSet,
    Partition,
    addable_points,
    corners,
    count_lower_sets,
    enumerate_lower_sets,
    from_json_line,
    from_partition,
    is_lower_set,
    partition_oracle_2d,
    plane_partition_oracle_3d,
    slice_decompose,
    to_json_line,
    to_partition,
)
from .bounds import BoundsReport, StaircaseNumbers, verify_bounds
from .discretization import (
    DiscretizationReport,
    GramSpectrum,
    PointSetTorus,
    SearchExhausted,
    SearchResult,
    gram_spectrum,
    hyperbolic_cross_size,
    sample_points,
    search_minimal_m,
    tensor_grid,
    universal_constants,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceededError",
    "BoundsReport",
    "Coords",
    "DiscretizationReport",
    "GramSpectrum",
    "LowerSet",
    "Partition",
    "PointSetTorus",
    "SearchExhausted",
    "SearchResult",
    "StaircaseNumbers",
    "addable_points",
    "corners",
    "count_lower_sets",
    "enumerate_lower_sets",
    "from_json_line",
    "from_partition",
    "gram_spectrum",
    "hyperbolic_cross_size",
    "is_lower_set",
    "partition_oracle_2d",
    "plane_partition_oracle_3d",
    "sample_points",
    "search_minimal_m",
    "slice_decompose",
    "tensor_grid",
    "to_json_line",
    "to_partition",
    "universal_constants",
    "verify_bounds",
]
