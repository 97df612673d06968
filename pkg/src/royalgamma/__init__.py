"""Boundary-augmented Blaschke interpolation and rational maps into the
symmetrized bidisc with prescribed royal nodes, values and boundary phasar
derivatives."""

from . import errors
from .blaschke import (
    BlaschkeProduct,
    Parametrization,
    PhasarValue,
    build_parametrization,
    circle_grid,
    disc_grid,
    phasar_derivative,
    solve_blaschke,
    to_blaschke_product,
)
from .gamma import (
    FamilyMember,
    GammaInnerFn,
    GammaPoint,
    PointClass,
    RoyalData,
    RoyalPipelineResult,
    RoyalSolution,
    S0P0Solution,
    VerificationReport,
    classify_point,
    compose_phi_omega,
    construct_h,
    extract_royal_data,
    gamma_inner_distance,
    generate_h_nu,
    phi_omega,
    royal_nodes,
    solve_royal_problem,
    solve_s0_p0,
    verify_royal_solution,
)
from .pick import (
    BlaschkeData,
    ExceptionalSet,
    KernelVectors,
    PickMatrix,
    PositivityResult,
    augmented_pick_matrix,
    augmented_rho,
    build_pick_matrix,
    check_positive_definite,
    choose_tau,
    exceptional_set,
    kernel_vectors,
)
from .polyrat import (
    DEFAULT_TOLERANCES,
    Poly,
    RationalFn,
    RootCluster,
    TolerancePolicy,
    poly_derivative,
    poly_eval,
    poly_roots,
    rat_reduce,
)

__version__ = "0.1.0"

__all__ = [
    "errors",
    "TolerancePolicy",
    "DEFAULT_TOLERANCES",
    "Poly",
    "RationalFn",
    "RootCluster",
    "poly_eval",
    "poly_derivative",
    "poly_roots",
    "rat_reduce",
    "BlaschkeData",
    "PickMatrix",
    "PositivityResult",
    "KernelVectors",
    "ExceptionalSet",
    "build_pick_matrix",
    "check_positive_definite",
    "kernel_vectors",
    "augmented_rho",
    "augmented_pick_matrix",
    "exceptional_set",
    "choose_tau",
    "PhasarValue",
    "BlaschkeProduct",
    "Parametrization",
    "phasar_derivative",
    "build_parametrization",
    "solve_blaschke",
    "to_blaschke_product",
    "circle_grid",
    "disc_grid",
    "GammaPoint",
    "PointClass",
    "classify_point",
    "phi_omega",
    "compose_phi_omega",
    "GammaInnerFn",
    "RoyalData",
    "FamilyMember",
    "S0P0Solution",
    "VerificationReport",
    "RoyalSolution",
    "RoyalPipelineResult",
    "solve_s0_p0",
    "construct_h",
    "royal_nodes",
    "extract_royal_data",
    "verify_royal_solution",
    "generate_h_nu",
    "solve_royal_problem",
    "gamma_inner_distance",
]
