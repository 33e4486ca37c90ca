from src.core.families.enums import BesselBranch, ConcentrationMode, FunctionKind
from src.core.families.solution import (
    Domain,
    FieldSolution,
    SmoothFunction,
    ZeroMode,
    make_jet,
    strip_derivatives,
)
from src.core.families.family68 import Family68Params, family68_build
from src.core.families.family72 import (
    BesselCaseParams,
    Family72Params,
    bessel_phi5,
    family72_build,
    family72_modes,
)
from src.core.families.family75 import Family75Params, family75_build, family75_modes
from src.core.families.family78 import Family78Params, family78_build, family78_modes
from src.core.families.example2 import EXAMPLE2_SPAN, Fig4Params, example2_solution

__all__ = [
    "BesselBranch",
    "ConcentrationMode",
    "FunctionKind",
    "Domain",
    "FieldSolution",
    "SmoothFunction",
    "ZeroMode",
    "make_jet",
    "strip_derivatives",
    "Family68Params",
    "family68_build",
    "BesselCaseParams",
    "Family72Params",
    "bessel_phi5",
    "family72_build",
    "family72_modes",
    "Family75Params",
    "family75_build",
    "family75_modes",
    "Family78Params",
    "family78_build",
    "family78_modes",
    "EXAMPLE2_SPAN",
    "Fig4Params",
    "example2_solution",
]
