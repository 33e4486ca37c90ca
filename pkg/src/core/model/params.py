"""
모델 물리 상수 (ModelParams)

단위 관례: 압력 mmHg, 길이 cm, 농도 mmol/L, 시간은 k, D_i 와 일관되게.
Example 2 는 무차원 값이다. 단위는 문서화된 관례일 뿐 타입으로 강제하지 않는다.
"""

import logging
from typing import Any

from pydantic import BaseModel, ConfigDict, Field

from src.config import RESTRICTION_TOL

logger = logging.getLogger(__name__)


class ModelParams(BaseModel):
    """지배 방정식계의 모든 물리 상수

    λ, μ 는 λ* = λ + 2μ 로만 등장하므로 따로 저장하지 않는다.
    ρ_F 는 비압축성 가정으로 ρ_F⁰ 로 고정된다 (ρ1, ρ2 는 개별적으로 결정되지 않음).
    """

    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    k: float = Field(1.0, gt=0, description="hydraulic conductivity")
    lambda_star: float = Field(100.0, gt=0, description="elastic modulus λ* = λ + 2μ")
    kappa: float = Field(0.0, description="quadratic stress coefficient κ")
    alpha: float = Field(0.4, ge=0, lt=1, description="large-pore fraction α (θ2 = α θ_F)")
    RT: float = Field(1.0, ge=0, description="gas constant × temperature")
    sigma1: float = Field(0.0, ge=0, le=1)
    sigma2: float = Field(0.0, ge=0, le=1)
    S1: float = Field(0.5, ge=0, le=1, description="sieving coefficient, small molecules")
    S2: float = Field(0.5, ge=0, le=1, description="sieving coefficient, large molecules")
    D1: float = Field(1.0, ge=0)
    D2: float = Field(1.0, ge=0)
    gamma0: float = Field(0.0, le=1)
    gamma1: float = Field(0.0, le=1)
    gamma2: float = Field(0.0, le=1)
    rhoF0: float = Field(1.0, gt=0, description="fluid density ρ_F⁰")

    @property
    def T1(self) -> float:
        return self.sigma1 * self.RT

    @property
    def T2(self) -> float:
        return self.sigma2 * self.RT

    @property
    def generic(self) -> bool:
        """k α ρ_F⁰ D_i S_i ≠ 0, i = 1, 2 (대칭 분류가 가정하는 일반 조건)"""
        base = self.k * self.alpha * self.rhoF0
        return base * self.D1 * self.S1 != 0 and base * self.D2 * self.S2 != 0

    @property
    def osmotic1(self) -> float:
        """(γ0 + γ1 - σ1) RT : c1 coupling left in the momentum equation"""
        return (self.gamma0 + self.gamma1 - self.sigma1) * self.RT

    @property
    def osmotic2(self) -> float:
        """(γ2 - α σ2) RT"""
        return (self.gamma2 - self.alpha * self.sigma2) * self.RT

    def c1_restricted(self, tol: float = RESTRICTION_TOL) -> bool:
        return abs(self.gamma0 + self.gamma1 - self.sigma1) <= tol

    def c2_restricted(self, tol: float = RESTRICTION_TOL) -> bool:
        return abs(self.gamma2 - self.alpha * self.sigma2) <= tol

    def linear_stress(self, tol: float = RESTRICTION_TOL) -> bool:
        return abs(self.kappa) <= tol

    def restricted(self, tol: float = RESTRICTION_TOL) -> bool:
        """γ0 + γ1 = σ1 and γ2 = α σ2 (운동량식에서 농도 결합이 사라짐)"""
        return self.c1_restricted(tol) and self.c2_restricted(tol)

    def transport(self, solute: int) -> tuple[float, float]:
        """(D_i, S_i) for solute 1 or 2"""
        if solute == 1:
            return self.D1, self.S1
        if solute == 2:
            return self.D2, self.S2
        raise ValueError(f"solute index must be 1 or 2, got {solute}")


def validate_params(p: ModelParams | dict[str, Any]) -> ModelParams:
    """파라미터를 검증하고 generic 플래그가 계산된 ModelParams 를 돌려줍니다.

    Args:
        p: ModelParams 또는 같은 필드를 가진 dict

    Returns:
        검증된 ModelParams

    Raises:
        pydantic.ValidationError: 범위를 벗어났거나 유한하지 않은 필드 (필드명 포함)
    """
    data = p.model_dump() if isinstance(p, ModelParams) else p
    params = ModelParams.model_validate(data)
    if not params.generic:
        logger.info("Parameters are not generic: k·alpha·rhoF0·Di·Si = 0 for some i")
    return params
