"""
무차원 Example 2: 농도 경계 조건이 no-flux 인 y = x + x₀ family 의 특수해

u₁ = v₁ = −2/(kρ_F⁰), u₀ = kp₁/2, S₁ = σ₁ = 1/2, ρ¹ = 0, U₀ = U₁ = 0 이면 φ₁ ≡ 0 이고
c₁ 은 equal-rates Bessel 분기 A₁y + A₂y^{−χ} 가 된다. A₂ = (A₁/χ)x₀^{1+χ} 가 ∂c₁/∂x(t, 0) = 0 을 준다.
"""

import logging
from dataclasses import replace

import numpy as np
from pydantic import BaseModel, ConfigDict

from src.core.families.enums import ConcentrationMode
from src.core.families.family72 import Family72Params, family72_build
from src.core.families.solution import FieldSolution, SmoothFunction
from src.core.model import ModelParams
from src.core.model.enums import Variant

logger = logging.getLogger(__name__)

EXAMPLE2_SPAN = (-0.5, 1.0)


class Fig4Params(BaseModel):
    """Example 2 의 무차원 파라미터와 유도값"""

    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    k: float = 2.0
    rhoF0: float = 2.0
    RT: float = 0.2
    P0: float = 1.0
    p1: float = -1.0
    A1: float = 1.0
    x0: float = 2.0
    L: float = 0.4
    theta1: float = 4.0
    D1: float = 1.5
    chi: float = -4.0 / 3.0

    @property
    def u1(self) -> float:
        return -2.0 / (self.k * self.rhoF0)

    @property
    def v1(self) -> float:
        return self.u1

    @property
    def u0(self) -> float:
        return self.u1 * self.x0

    @property
    def A2(self) -> float:
        return self.A1 / self.chi * self.x0 ** (1.0 + self.chi)

    def constraint_checks(self) -> dict[str, tuple[float, float]]:
        """이름 → (주어진 값, 유도한 값)"""
        return {
            "p1": (self.p1, -4.0 * self.x0 / (self.k**2 * self.rhoF0)),
            "chi": (self.chi, -2.0 * self.theta1 / (self.k * self.rhoF0 * self.D1)),
            "u0": (self.u0, 0.5 * self.k * self.p1),
        }

    def model_params(self) -> ModelParams:
        return ModelParams(
            k=self.k,
            lambda_star=1.0,
            kappa=0.0,
            alpha=0.4,
            RT=self.RT,
            sigma1=0.5,
            sigma2=0.0,
            S1=0.5,
            S2=0.5,
            D1=self.D1,
            D2=1.0,
            gamma0=0.5,
            gamma1=0.0,
            gamma2=0.0,
            rhoF0=self.rhoF0,
        )

    def family_params(self) -> Family72Params:
        return Family72Params(
            u0=self.u0,
            u1=self.u1,
            p0=SmoothFunction.constant(self.P0),
            p1=self.p1,
            rho1=0.0,
            theta1=self.theta1,
            v1=self.v1,
            v2=0.0,
            A11=self.A1,
            A12=self.A2,
            A21=0.0,
            A22=0.0,
        )


def example2_solution(
    variant: Variant = Variant.CORRECTED, fig: Fig4Params | None = None
) -> tuple[FieldSolution, Fig4Params]:
    """Example 2 의 FieldSolution

    corrected 는 u = u₁t(x + x₀), as_printed 는 u = u₁tx 이다. 나머지 다섯 필드는 같다.
    as_printed 는 u(t, 0) = 0 을 만족하지만 θ_F 식 잔차가 남는다 (x = 0 에서 1.0).
    """
    fig = fig or Fig4Params()
    for name, (given, derived) in fig.constraint_checks().items():
        if not np.isclose(given, derived, rtol=1e-12, atol=1e-12):
            logger.warning("Example 2 constraint %s: given %.12g, derived %.12g", name, given, derived)

    mp = fig.model_params()
    base = family72_build(
        mp, fig.family_params(), mode=ConcentrationMode.BESSEL, span=EXAMPLE2_SPAN
    )
    if variant == Variant.CORRECTED:
        return replace(base, label="example2[corrected]"), fig

    u1, inner = fig.u1, base.jet_fn

    def jet_fn(t: np.ndarray, x: np.ndarray):
        jet = inner(t, x)
        return replace(
            jet,
            u=u1 * t * x,
            u_t=u1 * x,
            u_x=u1 * t + 0.0 * x,
            u_xx=np.zeros_like(jet.u_xx),
        )

    return base.with_jet(jet_fn, label="example2[as_printed]"), fig
