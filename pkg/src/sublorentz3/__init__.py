"""Left-invariant sub-Lorentzian contact structures on 3D Lie groups.

Adapted frames, the curvature invariants kappa and h, boost normal forms,
Lie algebra recognition, and the full classification table with machine
verification.
"""

__version__ = "0.1.0"

from .algebra import (
    DEFAULT_TOL,
    AlgebraTag,
    LieAlgebra3,
    LieAlgebraClass,
    Subspace,
    ad_matrix,
    bracket,
    canonical_model,
    change_basis,
    derived_algebra,
    jacobi_defect,
    killing_form,
)
from .classify import (
    ClassificationReport,
    Status,
    TableRow,
    classify,
    construct_from_invariants,
    table_report,
)
from .frames import (
    AdaptedStructure,
    MetricOnH,
    OrientationFlags,
    StructureFunctions,
    adapt_structure,
    flip_orientation,
    from_structure_functions,
    orthonormalize_h,
    reeb_frame,
)
from .invariants import (
    CurvatureGauge,
    GaugeCoefficients,
    HClass,
    HNormalForm,
    HTensor,
    InvariantSet,
    boost_structure,
    curvature_gauge,
    gauge_coefficients,
    h_tensor,
    invariant_set,
    kappa,
    normalize_h,
    so11_conjugate,
    tau,
)
from .prolongation import (
    GradedSymbol,
    heisenberg_symbol,
    line_symbol,
    prolongation_dim,
)
from .recognize import recognize, same_class

__all__ = [
    "DEFAULT_TOL",
    "AdaptedStructure",
    "AlgebraTag",
    "ClassificationReport",
    "CurvatureGauge",
    "GaugeCoefficients",
    "GradedSymbol",
    "HClass",
    "HNormalForm",
    "HTensor",
    "InvariantSet",
    "LieAlgebra3",
    "LieAlgebraClass",
    "MetricOnH",
    "OrientationFlags",
    "Status",
    "StructureFunctions",
    "Subspace",
    "TableRow",
    "ad_matrix",
    "adapt_structure",
    "boost_structure",
    "bracket",
    "canonical_model",
    "change_basis",
    "classify",
    "construct_from_invariants",
    "curvature_gauge",
    "derived_algebra",
    "flip_orientation",
    "from_structure_functions",
    "gauge_coefficients",
    "h_tensor",
    "heisenberg_symbol",
    "invariant_set",
    "jacobi_defect",
    "kappa",
    "killing_form",
    "line_symbol",
    "normalize_h",
    "orthonormalize_h",
    "prolongation_dim",
    "recognize",
    "reeb_frame",
    "same_class",
    "so11_conjugate",
    "table_report",
    "tau",
]
