"""
진행파 family (ω = x − vt)

    u  = u₂x² + u₁x + u₀ + vt
    ρ  = ρ₀ + s·ω,   θ_F = Θ(ω),   p* = p₁ω + p₀(t)
    cᵢ = e^{−vᵢt}(Aᵢ₁fᵢ₁(ω) + Aᵢ₂fᵢ₂(ω)),  Dᵢf″ + kp₁Sᵢf′ + vᵢΘ(ω)f = 0

운동량 식이 s = (p₁ − 2λ*u₂)/v² 를 강제한다.
as_printed 는 s = p₁/v₂, 모드를 x 의 함수로, c₂ 에 e^{−v₁t} 를 쓴다.
"""

import logging

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from src.core.exceptions import BranchError
from src.core.families.solution import Domain, FieldSolution, SmoothFunction, ZeroMode, make_jet
from src.core.model import ModelParams, PressureKind
from src.core.model.enums import Variant
from src.core.specfun import FundamentalPair, fundamental_system

logger = logging.getLogger(__name__)


class Family78Params(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    v: float = 1.0
    u0: float = 0.0
    u1: float = 0.0
    u2: float = 0.0
    rho0: float = 1.0
    p0: SmoothFunction = Field(default_factory=lambda: SmoothFunction.constant(0.0))
    p1: float = 0.0
    v1: float = 0.0
    v2: float = 0.0
    thetaF_profile: SmoothFunction = Field(default_factory=lambda: SmoothFunction.constant(0.5))
    A11: float = 1.0
    A12: float = 0.0
    A21: float = 1.0
    A22: float = 0.0

    def density_slope(self, mp: ModelParams, variant: Variant = Variant.CORRECTED) -> float:
        if self.v == 0.0:
            raise BranchError("family78 needs a nonzero wave speed v; use family75 or the steady path")
        if variant == Variant.CORRECTED:
            return (self.p1 - 2.0 * mp.lambda_star * self.u2) / self.v**2
        if self.v2 == 0.0:
            raise BranchError("as-printed density slope p1/v2 needs v2 != 0")
        return self.p1 / self.v2


def family78_modes(
    mp: ModelParams, fp: Family78Params, solute: int, span: tuple[float, float]
) -> FundamentalPair:
    """Dᵢf″ + kp₁Sᵢf′ + vᵢΘ(ω)f = 0 의 수치 기본해 (span[0] 에서 정규화)"""
    D, S = mp.transport(solute)
    drift = mp.k * fp.p1 * S
    rate = fp.v1 if solute == 1 else fp.v2
    profile = fp.thetaF_profile
    return fundamental_system(
        lambda w: D,
        lambda w: drift,
        lambda w: rate * profile(w),
        span[0],
        span,
    )


def _mode_span(span: tuple[float, float], t_span: tuple[float, float], v: float) -> tuple[float, float]:
    corners = [x - v * t for x in span for t in t_span]
    return min(min(corners), span[0]), max(max(corners), span[1])


def family78_build(
    mp: ModelParams,
    fp: Family78Params,
    span: tuple[float, float] = (0.0, 1.0),
    t_span: tuple[float, float] = (0.0, 1.0),
    variant: Variant = Variant.CORRECTED,
) -> FieldSolution:
    """진행파 family 의 FieldSolution 을 만듭니다.

    모드는 (span × t_span) 의 모든 ω = x − vt 를 덮는 구간에서 수치로 만든다.

    Raises:
        BranchError: v = 0, 또는 as_printed 에서 v₂ = 0
    """
    if not (mp.restricted() and mp.linear_stress()):
        logger.info("family78 is exact only under the γ-restrictions with κ = 0")
    corrected = variant == Variant.CORRECTED
    slope = fp.density_slope(mp, variant)
    mode_span = _mode_span(span, t_span, fp.v)

    modes = []
    for solute, (A_first, A_second) in ((1, (fp.A11, fp.A12)), (2, (fp.A21, fp.A22))):
        if A_first == 0.0 and A_second == 0.0:
            modes.append(ZeroMode())
        else:
            modes.append(family78_modes(mp, fp, solute, mode_span).combine(A_first, A_second))
    rates = (fp.v1, fp.v2 if corrected else fp.v1)
    speed, profile = fp.v, fp.thetaF_profile

    def jet_fn(t: np.ndarray, x: np.ndarray):
        omega = x - speed * t
        arg = omega if corrected else x
        theta_slope = profile(omega, 1)
        conc = []
        for phi, rate in zip(modes, rates):
            decay = np.exp(-rate * t)
            c = decay * phi(arg)
            c_x = decay * phi(arg, 1)
            c_t = -rate * c - speed * c_x if corrected else -rate * c
            conc.append((c, c_t, c_x, decay * phi(arg, 2)))
        (c1, c1_t, c1_x, c1_xx), (c2, c2_t, c2_x, c2_xx) = conc
        return make_jet(
            PressureKind.EFFECTIVE,
            np.shape(x),
            u=fp.u2 * x**2 + fp.u1 * x + fp.u0 + speed * t,
            rho=fp.rho0 + slope * omega,
            theta_F=profile(omega),
            c1=c1,
            c2=c2,
            pressure=fp.p1 * omega + fp.p0(t),
            u_t=speed,
            u_x=2.0 * fp.u2 * x + fp.u1,
            u_xx=2.0 * fp.u2,
            rho_t=-speed * slope,
            rho_x=slope,
            theta_F_t=-speed * theta_slope,
            theta_F_x=theta_slope,
            c1_t=c1_t,
            c1_x=c1_x,
            c1_xx=c1_xx,
            c2_t=c2_t,
            c2_x=c2_x,
            c2_xx=c2_xx,
            pressure_x=fp.p1,
        )

    return FieldSolution(
        label=f"family78[{variant.value}]",
        params=mp,
        jet_fn=jet_fn,
        domain=Domain(x_lo=span[0], x_hi=span[1], t_lo=t_span[0], t_hi=t_span[1]),
    )
