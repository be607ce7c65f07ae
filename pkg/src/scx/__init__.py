"""Spectral, homological, domination and matroid computations on simplicial complexes."""

from .campaigns import REPRODUCE_NAMES, SUITES, run_reproduce, run_suite
from .complexes import (
    Complex,
    Partition,
    complex_from_json,
    complex_to_json,
    from_facets,
    from_missing_faces,
    intersection,
    partition_from_json,
)
from .domination import (
    VectorRepresentation,
    all_ones_representation,
    check_colorful_hall,
    check_connectivity_bound,
    check_domination_bound,
    rep_value,
    total_domination,
)
from .homology import (
    KERNEL_TOL,
    SpectrumReport,
    betti_exact,
    betti_hodge,
    boundary_matrix,
    coboundary_matrix,
    eta,
    laplacians,
    spectral_gap,
    spectrum,
)
from .matroids import (
    LinearMatroid,
    UniformMatroid,
    ag23_complex,
    ag23_matroid,
    gp_complex,
    is_general_position,
    pg33_complex,
    pg33_matroid,
    phi,
    phi_star,
)
from .reports import CheckRecord, VerificationReport

__version__ = "0.1.0"

__all__ = [
    "Complex",
    "Partition",
    "from_facets",
    "from_missing_faces",
    "intersection",
    "complex_to_json",
    "complex_from_json",
    "partition_from_json",
    "SpectrumReport",
    "spectrum",
    "spectral_gap",
    "laplacians",
    "boundary_matrix",
    "coboundary_matrix",
    "betti_exact",
    "betti_hodge",
    "eta",
    "KERNEL_TOL",
    "VectorRepresentation",
    "all_ones_representation",
    "total_domination",
    "rep_value",
    "check_domination_bound",
    "check_connectivity_bound",
    "check_colorful_hall",
    "LinearMatroid",
    "UniformMatroid",
    "is_general_position",
    "gp_complex",
    "phi",
    "phi_star",
    "ag23_matroid",
    "pg33_matroid",
    "ag23_complex",
    "pg33_complex",
    "CheckRecord",
    "VerificationReport",
    "SUITES",
    "REPRODUCE_NAMES",
    "run_suite",
    "run_reproduce",
    "__version__",
]
