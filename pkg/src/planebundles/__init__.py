"""Exact cohomology of rank-two bundles on the projective plane."""

from .bundles import (
    ChernPair,
    CohomologyTable,
    SerreBundle,
    bundle_resolution,
    cohomology_table,
    dual_presentation,
    h0_bundle,
    h1_module,
    make_bundle,
    minimal_section_twist,
    rr_chi_p2,
    rr_chi_p3,
    splits,
    twist_chern,
)
from .exact_linalg import DenseMatrix, FieldSpec, kernel_basis, rank, rref
from .ideals import (
    GradedBetti,
    ResolutionClass,
    betti_summary,
    cayley_bacharach,
    classify_resolution,
    graded_betti,
    ideal_cohomology,
    minimal_generator_counts,
    regularity,
)
from .schemes import (
    Arc,
    ProjPoint,
    SchemeSpec,
    ZeroDimScheme,
    evaluation_matrix,
    monomial_basis,
    random_scheme,
    remove_component_point,
)
from .verifier import (
    CheckReport,
    EnsembleConfig,
    realize_ten_cases,
    run_trial,
    verify_bundle,
    verify_ensemble,
    verify_remarks,
)

__version__ = "0.1.0"
