"""Exact Weyr characteristics of linear relations and matrix pencils.

All arithmetic is over the Gaussian rationals, so every dimension count and
every comparison is exact.
"""

from .errors import (
    DimensionMismatch,
    InconsistentInvariants,
    Infeasible,
    InternalInvariantError,
    KronWeyrError,
    NotAChain,
    NotNested,
    NotRankOne,
    NotSingular,
    NotSquare,
    ShapeMismatch,
    SingularTransform,
    UnresolvedEigenvalues,
    ZeroPerturbation,
    ZeroPolynomial,
)
from .matrix import Matrix, kernel_basis, rank, rref
from .pencil import (
    KroneckerInvariants,
    Pencil,
    PencilWeyr,
    apply_pencil_equivalence,
    build_kronecker,
    invariants_from_weyr,
    minimal_columns_range,
    minimal_rows_kernel,
    minimal_rows_range,
    pencil_eigenvalues,
    pencil_weyr,
    pencil_weyr_from_invariants,
    pencil_weyr_via_kernel,
    pencil_weyr_via_range,
    strictly_equivalent_pencils,
)
from .perturb import (
    RankOnePencil,
    check_representation_transfer,
    perturbation_bound_report,
    rank_one_pencil,
    relation_perturbation_rank,
    run_perturbation_trials,
)
from .poly import Poly, PolyMatrix, rational_roots, smith_normal_form
from .relation import (
    Chain,
    LinearRelation,
    apply_equivalence,
    compose,
    direct_sum,
    dom,
    from_graph,
    inverse,
    is_chain,
    kernel,
    kernel_rep,
    mul,
    op_sum,
    power,
    ran,
    range_rep,
    root_manifold,
    root_manifold_inf,
    scale,
    shift,
    singular_chain_space,
    transform_singular_chain,
)
from .scalars import I, Gaussian, format_scalar, gaussian, parse_scalar, scalar
from .subspace import Subspace, image, intersect, preimage, quotient_dim, span, subspace_sum
from .weyr import (
    Partition,
    WeyrCharacteristic,
    conjugate,
    multi_index_add,
    proper_finite_eigenvalues,
    strictly_equivalent_relations,
    weyr_at,
    weyr_characteristic,
    weyr_inf,
    weyr_multishift,
    weyr_singular,
)

__all__ = [
    "DimensionMismatch",
    "InconsistentInvariants",
    "Infeasible",
    "InternalInvariantError",
    "KronWeyrError",
    "NotAChain",
    "NotNested",
    "NotRankOne",
    "NotSingular",
    "NotSquare",
    "ShapeMismatch",
    "SingularTransform",
    "UnresolvedEigenvalues",
    "ZeroPerturbation",
    "ZeroPolynomial",
    "Matrix",
    "kernel_basis",
    "rank",
    "rref",
    "KroneckerInvariants",
    "Pencil",
    "PencilWeyr",
    "apply_pencil_equivalence",
    "build_kronecker",
    "invariants_from_weyr",
    "minimal_columns_range",
    "minimal_rows_kernel",
    "minimal_rows_range",
    "pencil_eigenvalues",
    "pencil_weyr",
    "pencil_weyr_from_invariants",
    "pencil_weyr_via_kernel",
    "pencil_weyr_via_range",
    "strictly_equivalent_pencils",
    "RankOnePencil",
    "check_representation_transfer",
    "perturbation_bound_report",
    "rank_one_pencil",
    "relation_perturbation_rank",
    "run_perturbation_trials",
    "Poly",
    "PolyMatrix",
    "rational_roots",
    "smith_normal_form",
    "Chain",
    "LinearRelation",
    "apply_equivalence",
    "compose",
    "direct_sum",
    "dom",
    "from_graph",
    "inverse",
    "is_chain",
    "kernel",
    "kernel_rep",
    "mul",
    "op_sum",
    "power",
    "ran",
    "range_rep",
    "root_manifold",
    "root_manifold_inf",
    "scale",
    "shift",
    "singular_chain_space",
    "transform_singular_chain",
    "I",
    "Gaussian",
    "format_scalar",
    "gaussian",
    "parse_scalar",
    "scalar",
    "Subspace",
    "image",
    "intersect",
    "preimage",
    "quotient_dim",
    "span",
    "subspace_sum",
    "Partition",
    "WeyrCharacteristic",
    "conjugate",
    "multi_index_add",
    "proper_finite_eigenvalues",
    "strictly_equivalent_relations",
    "weyr_at",
    "weyr_characteristic",
    "weyr_inf",
    "weyr_multishift",
    "weyr_singular",
]

__version__ = "0.1.0"
