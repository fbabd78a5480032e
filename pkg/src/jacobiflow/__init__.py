"""Structure-preserving integrators for Hamiltonian systems on Jacobi manifolds.

The pipeline: a Jacobi structure (L, E) on the base manifold is turned into a
homogeneous Poisson structure Pi = L/t + d/dt ^ E on the extended space, a
truncated polynomial realization (alpha, beta) of Pi is built on its cotangent
space, and one integration step maps x0 through the Lagrangian bisection of a
generating family: solve alpha(xbar, zeta_dt(xbar)) = x0, return
beta(xbar, zeta_dt(xbar)).
"""

from .errors import (
    ConfigurationError,
    DomainError,
    InputError,
    JacobiflowError,
    NumericError,
    SolverError,
)
from .fields import ScalarField, constant_field, coordinate_field, product_field
from .jacobi import (
    JacobiIdentityReport,
    JacobiStructure,
    TestFunctionBasis,
    check_antisymmetry,
    check_jacobi_identity,
    hamiltonian_vf_eval,
    jacobi_bracket_eval,
    leibniz_defect,
)
from .poissonization import (
    CasimirReport,
    HomogeneousPoissonStructure,
    LiftedHamiltonian,
    ScalingAction,
    casimir_lift_check,
    check_pi_homogeneity,
    lift_hamiltonian,
    poissonize,
)
from .realization import (
    Realization,
    RealizationReport,
    SprayCoefficients,
    SprayVector,
    build_karasev_alpha,
    check_spray_homogeneity,
    contact_alpha_closed_form,
    eval_flat_spray,
    poisson_map_defect,
    verify_realization,
)
from .families import (
    GeneratingFamily,
    VariationReport,
    default_family,
    family_homogeneity_defect,
    variation_function_check,
)
from .stepping import (
    JacobiStepResult,
    NewtonConfig,
    StepResult,
    Trajectory,
    flow,
    jacobi_step,
    phi_step,
)
from .diagnostics import (
    ConvergenceReport,
    ReferenceConfig,
    StructureDefectReport,
    casimir_drift,
    convergence_study,
    reference_flow_jacobi,
    reference_flow_poisson,
    richardson_validate,
    step_homogeneity_defect,
    step_pushforward_defect,
    structure_defects,
)
from .structures import (
    broken_structure,
    canonical_contact_structure,
    get_structure,
    so3_structure,
    structure_keys,
)
from .systems import SystemSpec, damped_oscillator, free_particle, get_system, rigid_body, system_keys

__version__ = "0.1.0"

__all__ = [
    "JacobiflowError",
    "InputError",
    "DomainError",
    "NumericError",
    "ConfigurationError",
    "SolverError",
    "ScalarField",
    "constant_field",
    "coordinate_field",
    "product_field",
    "JacobiStructure",
    "TestFunctionBasis",
    "JacobiIdentityReport",
    "jacobi_bracket_eval",
    "hamiltonian_vf_eval",
    "check_jacobi_identity",
    "check_antisymmetry",
    "leibniz_defect",
    "ScalingAction",
    "HomogeneousPoissonStructure",
    "LiftedHamiltonian",
    "CasimirReport",
    "poissonize",
    "lift_hamiltonian",
    "check_pi_homogeneity",
    "casimir_lift_check",
    "Realization",
    "RealizationReport",
    "build_karasev_alpha",
    "contact_alpha_closed_form",
    "verify_realization",
    "poisson_map_defect",
    "SprayCoefficients",
    "SprayVector",
    "eval_flat_spray",
    "check_spray_homogeneity",
    "GeneratingFamily",
    "VariationReport",
    "default_family",
    "family_homogeneity_defect",
    "variation_function_check",
    "NewtonConfig",
    "StepResult",
    "JacobiStepResult",
    "Trajectory",
    "phi_step",
    "jacobi_step",
    "flow",
    "ReferenceConfig",
    "ConvergenceReport",
    "StructureDefectReport",
    "reference_flow_poisson",
    "reference_flow_jacobi",
    "richardson_validate",
    "convergence_study",
    "structure_defects",
    "step_pushforward_defect",
    "step_homogeneity_defect",
    "casimir_drift",
    "canonical_contact_structure",
    "so3_structure",
    "broken_structure",
    "get_structure",
    "structure_keys",
    "SystemSpec",
    "damped_oscillator",
    "free_particle",
    "rigid_body",
    "get_system",
    "system_keys",
]
