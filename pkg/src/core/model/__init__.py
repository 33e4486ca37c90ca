from src.core.model.enums import PressureKind
from src.core.model.params import ModelParams, validate_params
from src.core.model.jet import StateJet, random_jet
from src.core.model.physics import (
    FluxBundle,
    ResidualVector,
    compute_fluxes,
    from_effective,
    matrix_density,
    residual_original,
    residual_starred,
    stress_tensor,
    stress_tensor_linear,
    to_effective,
)

__all__ = [
    "PressureKind",
    "ModelParams",
    "validate_params",
    "StateJet",
    "random_jet",
    "FluxBundle",
    "ResidualVector",
    "compute_fluxes",
    "from_effective",
    "matrix_density",
    "residual_original",
    "residual_starred",
    "stress_tensor",
    "stress_tensor_linear",
    "to_effective",
]
