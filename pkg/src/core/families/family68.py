"""
ω = t 로 환원되는 family

    u = u1 x + u2 x² + f(t),  ρ = ρ⁰,  θ_F = θ_F⁰,
    p* = s(t) x + p0(t),  c_i = A_i exp(w_i E_i(t, x))

as_printed: s = 2u2 − ρ⁰f″,  E_i = −x + v_i t + f + ρ⁰kS_i f′,  v_i = w_iD_i − 2k u2 S_i
corrected:  s = 2λ*u2 − ρ⁰f″, E_i = −x + f + (v_i t + ρ⁰kS_i f′)/θ_F⁰, v_i = w_iD_i − 2kλ* u2 S_i
"""

import logging

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from src.core.families.solution import FieldSolution, SmoothFunction, make_jet
from src.core.model import ModelParams, PressureKind
from src.core.model.enums import Variant

logger = logging.getLogger(__name__)


class Family68Params(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    u1: float = 0.0
    u2: float = 0.0
    w1: float = 1.0
    w2: float = 1.0
    A1: float = 1.0
    A2: float = 1.0
    rho0: float = 1.0
    thetaF0: float = Field(1.0, gt=0, le=1)
    f: SmoothFunction = Field(default_factory=lambda: SmoothFunction.constant(0.0))
    p0: SmoothFunction = Field(default_factory=lambda: SmoothFunction.constant(0.0))

    def rate(self, mp: ModelParams, solute: int, variant: Variant = Variant.CORRECTED) -> float:
        """v_i = w_i D_i − 2k(λ*)u2 S_i (as_printed 는 λ* 없음)"""
        D, S = mp.transport(solute)
        w = self.w1 if solute == 1 else self.w2
        stiffness = mp.lambda_star if variant == Variant.CORRECTED else 1.0
        return w * D - 2.0 * mp.k * stiffness * self.u2 * S


def family68_build(
    mp: ModelParams, fp: Family68Params, variant: Variant = Variant.CORRECTED
) -> FieldSolution:
    """ω = t family 의 FieldSolution 을 만듭니다.

    Args:
        mp: 모델 파라미터 (γ-restriction, κ = 0 에서 정확해)
        fp: family 파라미터
        variant: as_printed 또는 corrected

    Returns:
        해석적 미분을 갖는 FieldSolution
    """
    if not (mp.restricted() and mp.linear_stress()):
        logger.info("family68 is exact only under the γ-restrictions with κ = 0")
    corrected = variant == Variant.CORRECTED
    stiffness = mp.lambda_star if corrected else 1.0
    theta_div = fp.thetaF0 if corrected else 1.0
    k, rho0 = mp.k, fp.rho0
    solutes = []
    for solute, (w, A) in enumerate(((fp.w1, fp.A1), (fp.w2, fp.A2)), start=1):
        _, S = mp.transport(solute)
        solutes.append((w, A, S, fp.rate(mp, solute, variant)))

    def jet_fn(t: np.ndarray, x: np.ndarray):
        f, df, d2f = fp.f(t), fp.f(t, 1), fp.f(t, 2)
        slope = 2.0 * stiffness * fp.u2 - rho0 * d2f
        conc = []
        for w, A, S, v in solutes:
            exponent = w * (-x + f + (v * t + rho0 * k * S * df) / theta_div)
            c = A * np.exp(exponent)
            c_t = c * w * (df + (v + rho0 * k * S * d2f) / theta_div)
            conc.append((c, c_t, -w * c, w * w * c))
        (c1, c1_t, c1_x, c1_xx), (c2, c2_t, c2_x, c2_xx) = conc
        return make_jet(
            PressureKind.EFFECTIVE,
            np.shape(x),
            u=fp.u1 * x + fp.u2 * x**2 + f,
            rho=rho0,
            theta_F=fp.thetaF0,
            c1=c1,
            c2=c2,
            pressure=slope * x + fp.p0(t),
            u_t=df,
            u_x=fp.u1 + 2.0 * fp.u2 * x,
            u_tt=d2f,
            u_xx=2.0 * fp.u2,
            c1_t=c1_t,
            c1_x=c1_x,
            c1_xx=c1_xx,
            c2_t=c2_t,
            c2_x=c2_x,
            c2_xx=c2_xx,
            pressure_x=slope,
        )

    return FieldSolution(label=f"family68[{variant.value}]", params=mp, jet_fn=jet_fn)
