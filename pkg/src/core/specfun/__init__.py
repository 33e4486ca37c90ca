from src.core.specfun.enums import BesselTag, RootCase
from src.core.specfun.bessel import BesselKind, bessel, bessel_array, bessel_derivative
from src.core.specfun.quadrature import integrate_adaptive
from src.core.specfun.roots import root_bracketed
from src.core.specfun.ode import (
    CharacteristicRoots,
    FundamentalPair,
    Mode,
    constant_coeff_fundamental,
    fundamental_system,
)

__all__ = [
    "BesselTag",
    "RootCase",
    "BesselKind",
    "bessel",
    "bessel_array",
    "bessel_derivative",
    "integrate_adaptive",
    "root_bracketed",
    "CharacteristicRoots",
    "FundamentalPair",
    "Mode",
    "constant_coeff_fundamental",
    "fundamental_system",
]
