"""
Example 1: 포도당 농도 경계값으로부터의 정상 상태 재구성

단위: 압력 mmHg, 길이 cm, 농도 mmol/L.
RT = 19.33 mmHg/(mmol/L) (R = 62.364 L·mmHg·mol⁻¹K⁻¹, T = 310 K).
경계값 p(0) = −1, c₁(0) = 6, c₂(0) = 0.4 / p(1) = 40, c₁(1) = 170, c₂(1) = 0.

응력 경계 조건은 주어지지 않으므로 U₁ = P₀ (G = P*) 로 닫는다.
k, Sᵢ, Dᵢ 는 경계 농도를 맞추기 위한 예시값이며 γ-restriction 아래에서 변위는 이들과 무관하다.
"""

import logging
import math

from src.core.model import ModelParams
from src.core.steady.enums import Tissue
from src.core.steady.profiles import SteadyParams

logger = logging.getLogger(__name__)

RT_MMHG = 19.33
SIGMA1 = 0.0035
LENGTH = 1.0
BOUNDARY_LEFT = {"p": -1.0, "c1": 6.0, "c2": 0.4}
BOUNDARY_RIGHT = {"p": 40.0, "c1": 170.0, "c2": 0.0}
STIFFNESS = {Tissue.HEALTHY: 100.0, Tissue.TUMOUR: 700.0}

# illustrative transport constants
_TRANSPORT = {"k": 1e-3, "S1": 0.5, "D1": 1e-2, "S2": 0.1, "D2": 1e-3}


def _fit_profile(rate: float, left: float, right: float) -> tuple[float, float]:
    """A₀ + A·e^{−rate·x} 가 x = 0, L 에서 left, right 를 지나도록 (A₀, A)"""
    A = (left - right) / (1.0 - math.exp(-rate * LENGTH))
    return left - A, A


def example1_scenario(
    tissue: Tissue = Tissue.HEALTHY, kappa: float = 0.0
) -> tuple[ModelParams, SteadyParams]:
    """Example 1 의 ModelParams, SteadyParams 를 재구성합니다.

    Args:
        tissue: healthy (λ* = 100) 또는 tumour (λ* = 700)
        kappa: 비선형 응력 계수

    Returns:
        (ModelParams, SteadyParams). P₀ = −1.40593, P₁ = 29.90458, U₁ = P₀.
    """
    params = ModelParams(
        k=_TRANSPORT["k"],
        lambda_star=STIFFNESS[Tissue(tissue)],
        kappa=kappa,
        alpha=0.4,
        RT=RT_MMHG,
        sigma1=SIGMA1,
        sigma2=0.0,
        S1=_TRANSPORT["S1"],
        S2=_TRANSPORT["S2"],
        D1=_TRANSPORT["D1"],
        D2=_TRANSPORT["D2"],
        gamma0=SIGMA1,
        gamma1=0.0,
        gamma2=0.0,
        rhoF0=1.0,
    )

    def effective(side: dict[str, float]) -> float:
        return side["p"] - params.T1 * side["c1"] - params.alpha * params.T2 * side["c2"]

    P0 = effective(BOUNDARY_LEFT)
    P1 = (effective(BOUNDARY_RIGHT) - P0) / LENGTH
    profiles = []
    for solute in (1, 2):
        D, S = params.transport(solute)
        name = f"c{solute}"
        profiles.append(_fit_profile(params.k * S * P1 / D, BOUNDARY_LEFT[name], BOUNDARY_RIGHT[name]))
    (A01, A1), (A02, A2) = profiles

    sp = SteadyParams(P0=P0, P1=P1, A01=A01, A1=A1, A02=A02, A2=A2, U0=0.0, U1=P0, x0=0.0)
    logger.debug("example1 %s: P0=%.6g P1=%.6g", Tissue(tissue).value, P0, P1)
    return params, sp
