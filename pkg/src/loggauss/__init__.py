"""Logarithmic Gauss maps, amoeba contours and covering bounds."""

from .amoeba import (
    CoveringReport,
    arg_map,
    compute_amoeba,
    compute_contour,
    count_preimages,
    is_arg_critical_oracle,
    log_map,
    real_jacobian_arg_rank,
    verify_covering,
)
from .errors import (
    DegenerateParametrizationError,
    InsufficientRegularTrialsError,
    IterateLeftTorusError,
    NonConvergenceError,
    PolyParseError,
    SingularPointError,
    UncertainRankError,
    UnsupportedShapeError,
)
from .gaussmap import (
    CriticalClassification,
    GrassmannPoint,
    VarietySystem,
    classify_point,
    gauss_matrix,
    generalized_gauss,
    hypersurface_gauss,
    schubert_cell_dimension,
    schubert_index,
)
from .laurent import (
    LaurentPoly,
    evaluate,
    log_gradient,
    parse_poly,
    partial_derivative,
    to_string,
    torus_translate,
)
from .linalg import (
    RankReport,
    null_space,
    rank_with_margin,
    real_intersection_dim,
    subspace_distance,
)
from .variety import (
    AffineLinearSpace,
    SamplePoint,
    affine_variety_system,
    all_roots,
    intersection_dim_conjugate,
    is_log_critical_oracle,
    newton_refine,
    real_jacobian_log_rank,
    sample_affine,
    sample_hypersurface_fibers,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
