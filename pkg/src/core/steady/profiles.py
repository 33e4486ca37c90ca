"""
정상 상태 (u_t = 0) 프로파일

    Cᵢ(x) = A₀ᵢ + Aᵢ exp(−k Sᵢ P₁ x / Dᵢ),   P*(x) = P₀ + P₁x
    P(x)  = P*(x) + T₁C₁(x) + α T₂C₂(x)
    G(x)  = U₁ + P₁x − (γ₀+γ₁−σ₁)RT·C₁(x) − (γ₂−ασ₂)RT·C₂(x)

변위는 λ*U′ + κ(U′)² = G(x) 를 만족한다 (displacement 모듈).
"""

import logging
from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel, ConfigDict

from src.core.exceptions import BranchError
from src.core.model import ModelParams
from src.core.steady.enums import ProfileBranch

logger = logging.getLogger(__name__)


class SteadyParams(BaseModel):
    """정상 상태 적분상수

    branch1, branch2 가 None 이면 Dᵢ, k Sᵢ P₁ 로부터 분기를 고른다.
    """

    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    P0: float = 0.0
    P1: float = 0.0
    A01: float = 0.0
    A1: float = 0.0
    A02: float = 0.0
    A2: float = 0.0
    U0: float = 0.0
    U1: float = 0.0
    x0: float = 0.0
    branch1: ProfileBranch | None = None
    branch2: ProfileBranch | None = None


@dataclass(frozen=True)
class ConcentrationProfile:
    """C(x) = A0 + A·exp(−rate·x) (LINEAR 이면 A0 + A·x, CONSTANT 이면 A0)"""

    branch: ProfileBranch
    A0: float
    A: float
    rate: float = 0.0

    def __call__(self, x, order: int = 0):
        x = np.asarray(x, dtype=float)
        match self.branch:
            case ProfileBranch.EXPONENTIAL:
                value = self.A * (-self.rate) ** order * np.exp(-self.rate * x)
                if order == 0:
                    value = value + self.A0
            case ProfileBranch.LINEAR:
                value = (self.A0 + self.A * x, self.A + 0.0 * x, 0.0 * x)[order]
            case _:
                value = (self.A0 if order == 0 else 0.0) + 0.0 * x
        return value if np.ndim(value) else float(value)


def _select_branch(
    params: ModelParams, sp: SteadyParams, solute: int, requested: ProfileBranch | None
) -> ProfileBranch:
    D, S = params.transport(solute)
    drift = params.k * S * sp.P1
    if D == 0:
        detected = ProfileBranch.ARBITRARY if drift == 0 else ProfileBranch.CONSTANT
    else:
        detected = ProfileBranch.LINEAR if drift == 0 else ProfileBranch.EXPONENTIAL
    if requested is not None and requested != detected:
        raise BranchError(
            f"solute {solute}: {requested.value} profile requested but D={D:g}, "
            f"k·S·P1={drift:g} select {detected.value}"
        )
    if detected == ProfileBranch.ARBITRARY:
        raise BranchError(
            f"solute {solute}: D = k·S·P1 = 0 leaves the profile arbitrary"
        )
    return detected


def _profile(params: ModelParams, sp: SteadyParams, solute: int) -> ConcentrationProfile:
    requested = sp.branch1 if solute == 1 else sp.branch2
    A0, A = (sp.A01, sp.A1) if solute == 1 else (sp.A02, sp.A2)
    branch = _select_branch(params, sp, solute, requested)
    D, S = params.transport(solute)
    if branch == ProfileBranch.CONSTANT:
        if A != 0.0:
            logger.warning("solute %d: D = 0 forces a constant profile; A%d=%g ignored", solute, solute, A)
        return ConcentrationProfile(branch, A0, 0.0)
    if branch == ProfileBranch.LINEAR:
        return ConcentrationProfile(branch, A0, A)
    return ConcentrationProfile(branch, A0, A, params.k * S * sp.P1 / D)


@dataclass(frozen=True)
class SteadyProfiles:
    """정상 상태 평가기 묶음. 모든 메서드는 numpy 배열을 받는다."""

    params: ModelParams
    sp: SteadyParams
    c1: ConcentrationProfile
    c2: ConcentrationProfile

    @property
    def branches(self) -> tuple[ProfileBranch, ProfileBranch]:
        return self.c1.branch, self.c2.branch

    def C1(self, x, order: int = 0):
        return self.c1(x, order)

    def C2(self, x, order: int = 0):
        return self.c2(x, order)

    def Pstar(self, x, order: int = 0):
        x = np.asarray(x, dtype=float)
        value = (self.sp.P0 + self.sp.P1 * x, self.sp.P1 + 0.0 * x, 0.0 * x)[order]
        return value if np.ndim(value) else float(value)

    def P(self, x):
        """정수압 (α 를 T₂ 항에 포함)"""
        p = self.params
        return self.Pstar(x) + p.T1 * self.C1(x) + p.alpha * p.T2 * self.C2(x)

    def G(self, x, order: int = 0):
        p, sp = self.params, self.sp
        x = np.asarray(x, dtype=float)
        drive = (sp.U1 + sp.P1 * x, sp.P1 + 0.0 * x, 0.0 * x)[order]
        value = drive - p.osmotic1 * self.C1(x, order) - p.osmotic2 * self.C2(x, order)
        return value if np.ndim(value) else float(value)

    def U(self, x):
        """정확한 비선형 변위 (κ = 0 이면 U₀ + ∫G/λ*)"""
        from src.core.steady.displacement import displacement_quadrature  # circular

        return displacement_quadrature(self.params, self.sp, x)


def steady_profiles(params: ModelParams, sp: SteadyParams) -> SteadyProfiles:
    """정상 농도/압력 프로파일을 만듭니다.

    Args:
        params: 모델 파라미터
        sp: 정상 상태 적분상수

    Returns:
        SteadyProfiles

    Raises:
        BranchError: 요청한 분기가 Dᵢ, Sᵢ, P₁ 과 맞지 않거나 분기가 결정되지 않음
    """
    profiles = SteadyProfiles(params, sp, _profile(params, sp, 1), _profile(params, sp, 2))
    logger.debug("steady profiles: branches %s", [b.value for b in profiles.branches])
    return profiles


def g_function(params: ModelParams, sp: SteadyParams):
    """G(x) 평가기 (x, order=0)"""
    return steady_profiles(params, sp).G
