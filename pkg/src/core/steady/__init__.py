from src.core.steady.enums import ProfileBranch, Tissue
from src.core.steady.profiles import (
    ConcentrationProfile,
    SteadyParams,
    SteadyProfiles,
    g_function,
    steady_profiles,
)
from src.core.steady.displacement import (
    TaylorOrderStudy,
    displacement_linear,
    displacement_quadrature,
    displacement_slope,
    displacement_taylor,
    present_position,
    taylor_order_study,
)
from src.core.steady.example1 import example1_scenario
from src.core.steady.solution import steady_solution

__all__ = [
    "ProfileBranch",
    "Tissue",
    "ConcentrationProfile",
    "SteadyParams",
    "SteadyProfiles",
    "g_function",
    "steady_profiles",
    "TaylorOrderStudy",
    "displacement_linear",
    "displacement_quadrature",
    "displacement_slope",
    "displacement_taylor",
    "present_position",
    "taylor_order_study",
    "example1_scenario",
    "steady_solution",
]
