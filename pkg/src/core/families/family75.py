"""
상수 θ_F 에서 상수계수 모드를 갖는 family

    u = u₀t + (p₁/2λ*)x² + U₁x + U₀,  ρ = ρ⁰,  θ_F = θ_F⁰,  p* = p₁x + p₀(t)
    cᵢ = e^{−vᵢt}(Aᵢ₁fᵢ₁(x) + Aᵢ₂fᵢ₂(x)),  Dᵢf″ + (kp₁Sᵢ − u₀θ_F⁰)f′ + vᵢθ_F⁰f = 0
"""

import logging

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from src.core.families.solution import FieldSolution, SmoothFunction, ZeroMode, make_jet
from src.core.model import ModelParams, PressureKind
from src.core.model.enums import Variant
from src.core.specfun import CharacteristicRoots, FundamentalPair, constant_coeff_fundamental

logger = logging.getLogger(__name__)


class Family75Params(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    u0: float = 0.0
    thetaF0: float = Field(1.0, gt=0, le=1)
    rho0: float = 1.0
    p1: float = 0.0
    p0: SmoothFunction = Field(default_factory=lambda: SmoothFunction.constant(0.0))
    U0: float = 0.0
    U1: float = 0.0
    v1: float = 0.0
    v2: float = 0.0
    A11: float = 1.0
    A12: float = 0.0
    A21: float = 1.0
    A22: float = 0.0


def family75_modes(
    mp: ModelParams, fp: Family75Params, solute: int
) -> tuple[FundamentalPair, CharacteristicRoots]:
    """solute i 의 상수계수 기본해와 특성근"""
    D, S = mp.transport(solute)
    v = fp.v1 if solute == 1 else fp.v2
    return constant_coeff_fundamental(
        D, mp.k * fp.p1 * S - fp.u0 * fp.thetaF0, v * fp.thetaF0
    )


def family75_build(
    mp: ModelParams, fp: Family75Params, variant: Variant = Variant.CORRECTED
) -> FieldSolution:
    """상수계수 family 의 FieldSolution 을 만듭니다.

    Args:
        mp: 모델 파라미터
        fp: family 파라미터
        variant: corrected 는 c₂ 에 e^{−v₂t}, as_printed 는 e^{−v₁t}

    Returns:
        해석적 미분을 갖는 FieldSolution
    """
    if not (mp.restricted() and mp.linear_stress()):
        logger.info("family75 is exact only under the γ-restrictions with κ = 0")

    modes = []
    for solute, (A_first, A_second) in ((1, (fp.A11, fp.A12)), (2, (fp.A21, fp.A22))):
        if A_first == 0.0 and A_second == 0.0:
            modes.append(ZeroMode())
            continue
        pair, roots = family75_modes(mp, fp, solute)
        logger.debug("family75 solute %d: %s roots %s", solute, roots.case.value, roots.roots)
        modes.append(pair.combine(A_first, A_second))

    rates = (fp.v1, fp.v2 if variant == Variant.CORRECTED else fp.v1)
    curvature = fp.p1 / mp.lambda_star

    def jet_fn(t: np.ndarray, x: np.ndarray):
        conc = []
        for phi, v in zip(modes, rates):
            decay = np.exp(-v * t)
            c = decay * phi(x)
            conc.append((c, -v * c, decay * phi(x, 1), decay * phi(x, 2)))
        (c1, c1_t, c1_x, c1_xx), (c2, c2_t, c2_x, c2_xx) = conc
        return make_jet(
            PressureKind.EFFECTIVE,
            np.shape(x),
            u=fp.u0 * t + 0.5 * curvature * x**2 + fp.U1 * x + fp.U0,
            rho=fp.rho0,
            theta_F=fp.thetaF0,
            c1=c1,
            c2=c2,
            pressure=fp.p1 * x + fp.p0(t),
            u_t=fp.u0,
            u_x=curvature * x + fp.U1,
            u_xx=curvature,
            c1_t=c1_t,
            c1_x=c1_x,
            c1_xx=c1_xx,
            c2_t=c2_t,
            c2_x=c2_x,
            c2_xx=c2_xx,
            pressure_x=fp.p1,
        )

    return FieldSolution(label=f"family75[{variant.value}]", params=mp, jet_fn=jet_fn)
