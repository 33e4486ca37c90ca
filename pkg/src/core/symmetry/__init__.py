from src.core.symmetry.enums import PRINCIPAL, GeneratorTag
from src.core.symmetry.generators import (
    ApplicabilitySet,
    SymmetryGenerator,
    applicable_generators,
    apply_generator,
    original_variable_flow,
)
from src.core.symmetry.orbits import (
    OrbitCase,
    OrbitResult,
    orbit_matrix,
    orbit_residual_test,
    row_params,
    row_solution,
)

__all__ = [
    "PRINCIPAL",
    "GeneratorTag",
    "ApplicabilitySet",
    "SymmetryGenerator",
    "applicable_generators",
    "apply_generator",
    "original_variable_flow",
    "OrbitCase",
    "OrbitResult",
    "orbit_matrix",
    "orbit_residual_test",
    "row_params",
    "row_solution",
]
