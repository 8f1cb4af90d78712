"""Priorities and inconsistency indices for (incomplete) pairwise comparison matrices."""

from .core import (
    MISSING,
    BadDiagonal,
    BadSize,
    MatrixSyntaxError,
    NonPositiveEntry,
    NonSquare,
    NotComplete,
    NotIrreducible,
    PCError,
    PCMatrix,
    ReciprocityViolation,
    Triad,
    defined_pairs,
    is_complete,
    list_triads,
    parse_matrix,
    serialize_matrix,
    validate,
)
from .graph import (
    ComparisonGraph,
    Cycle,
    CycleCapExceeded,
    NoPath,
    Path,
    build_graph,
    cycle_inconsistency,
    cycle_ratio,
    degree_matrix,
    enumerate_cycles,
    enumerate_paths,
    is_irreducible,
    path_product,
)
from .priority import (
    EigenResult,
    NotConverged,
    ReducibleInput,
    SingularSystem,
    evm,
    gmm,
    harker_matrix,
    harker_rank,
    ills,
    principal_eigen,
)
from .indices import (
    CLASSICAL_NAMES,
    INDEX_NAMES,
    BadParams,
    BlendParams,
    CycleIndices,
    DegenerateDenominator,
    all_indices,
    blend_indices,
    classical_indices,
    cycle_based_indices,
    gci_inc,
    gw_inc,
    harker_ci,
    lls_index,
    oliva_index,
    re_inc,
    sh_index_inc,
)
from .montecarlo import (
    BadK,
    DistanceTable,
    ExperimentConfig,
    disturb,
    gen_consistent,
    remove_comparisons,
    rescaled_distance,
    run_experiment,
    total_distance,
)

__version__ = "0.1.0"
