"""
응력 텐서, 플럭스, 유효압 변환, 6개 지배방정식의 잔차

원 변수계 (압력 p) 와 별표 변수계 (유효압 p*) 모두 지원한다.
모든 함수는 순수 함수이며 jet 필드가 numpy 배열이면 원소별로 계산한다.
"""

from dataclasses import dataclass, replace

import numpy as np

from src.core.exceptions import UsageError
from src.core.model.enums import PressureKind
from src.core.model.jet import Scalar, StateJet
from src.core.model.params import ModelParams


@dataclass(frozen=True)
class FluxBundle:
    """체적/용질/질량 플럭스와 Terzaghi 응력

    j_rho 는 θ_F = 1 인 점이 있으면 ρ_M 이 정의되지 않으므로 None 이고
    rho_flux_defined 가 False 가 된다.
    """

    j_VF: Scalar
    j_VM: Scalar
    j_V: Scalar
    j1: Scalar
    j2: Scalar
    j_rho: Scalar | None
    tau: Scalar
    rho_flux_defined: bool = True


@dataclass(frozen=True)
class ResidualVector:
    """각 지배방정식의 부호 있는 잔차 r1..r6"""

    r1: Scalar
    r2: Scalar
    r3: Scalar
    r4: Scalar
    r5: Scalar
    r6: Scalar

    def as_tuple(self) -> tuple[Scalar, ...]:
        return (self.r1, self.r2, self.r3, self.r4, self.r5, self.r6)

    def max_abs(self) -> float:
        return max(float(np.max(np.abs(r))) for r in self.as_tuple())


def _require(jet: StateJet, kind: PressureKind) -> None:
    if jet.pressure_kind != kind:
        raise UsageError(
            f"jet carries {jet.pressure_kind.value}, operation requires {kind.value}"
        )


def _osmotic_shift(jet: StateJet, params: ModelParams) -> tuple[Scalar, Scalar, Scalar]:
    """T1 c1 + α T2 c2 과 그 x, xx 미분"""
    a = params.alpha * params.T2
    return (
        params.T1 * jet.c1 + a * jet.c2,
        params.T1 * jet.c1_x + a * jet.c2_x,
        params.T1 * jet.c1_xx + a * jet.c2_xx,
    )


def to_effective(jet: StateJet, params: ModelParams) -> StateJet:
    """p 를 들고 있는 jet 을 p* = p - T1 c1 - α T2 c2 로 변환 (적분상수 0)"""
    _require(jet, PressureKind.HYDROSTATIC)
    shift, shift_x, shift_xx = _osmotic_shift(jet, params)
    return replace(
        jet,
        pressure_kind=PressureKind.EFFECTIVE,
        pressure=jet.pressure - shift,
        pressure_x=jet.pressure_x - shift_x,
        pressure_xx=jet.pressure_xx - shift_xx,
    )


def from_effective(jet: StateJet, params: ModelParams) -> StateJet:
    """to_effective 의 역변환: p = p* + T1 c1 + α T2 c2"""
    _require(jet, PressureKind.EFFECTIVE)
    shift, shift_x, shift_xx = _osmotic_shift(jet, params)
    return replace(
        jet,
        pressure_kind=PressureKind.HYDROSTATIC,
        pressure=jet.pressure + shift,
        pressure_x=jet.pressure_x + shift_x,
        pressure_xx=jet.pressure_xx + shift_xx,
    )


def stress_tensor(jet: StateJet, params: ModelParams) -> Scalar:
    """비선형 Terzaghi 유효응력. κ = 0 이면 선형 응력과 같다."""
    _require(jet, PressureKind.HYDROSTATIC)
    return (
        -jet.pressure
        + (params.gamma0 + params.gamma1) * params.RT * jet.c1
        + params.gamma2 * params.RT * jet.c2
        + params.lambda_star * jet.u_x
        + params.kappa * jet.u_x**2
    )


def stress_tensor_linear(jet: StateJet, params: ModelParams) -> Scalar:
    """선형 Terzaghi 유효응력, κ 를 무시한다."""
    _require(jet, PressureKind.HYDROSTATIC)
    RT = params.RT
    return (
        params.lambda_star * jet.u_x
        - jet.pressure
        + params.gamma0 * RT * jet.c1
        + (params.gamma1 * RT * jet.c1 + params.gamma2 * RT * jet.c2)
    )


def matrix_density(rho: Scalar, theta_F: Scalar, rhoF0: float) -> Scalar:
    """ρ_M = (ρ - ρ_F⁰ θ_F) / (1 - θ_F)  (ρ_F = ρ_F⁰)"""
    return (rho - rhoF0 * theta_F) / (1.0 - theta_F)


def compute_fluxes(jet: StateJet, params: ModelParams) -> FluxBundle:
    """체적, 용질, 질량 플럭스를 계산합니다.

    j_ρ 는 정의 ρ_F⁰ j_VF + ρ_M j_VM 으로 계산한다. 인쇄된 질량 플럭스 식은
    Darcy 항의 ρ_F⁰ 인자가 빠져 있다.
    """
    _require(jet, PressureKind.HYDROSTATIC)
    _, shift_x, _ = _osmotic_shift(jet, params)
    darcy = -params.k * (jet.pressure_x - shift_x)
    theta = jet.theta_F
    j_VF = darcy + theta * jet.u_t
    j_VM = (1.0 - theta) * jet.u_t
    relative = j_VF - theta * jet.u_t
    j1 = -params.D1 * jet.c1_x + params.S1 * jet.c1 * relative + theta * jet.c1 * jet.u_t
    a = params.alpha
    j2 = (
        -a * params.D2 * jet.c2_x
        + a * params.S2 * jet.c2 * relative
        + a * theta * jet.c2 * jet.u_t
    )

    defined = not bool(np.any(np.asarray(theta) == 1.0))
    j_rho = None
    if defined:
        rho_M = matrix_density(jet.rho, theta, params.rhoF0)
        j_rho = params.rhoF0 * j_VF + rho_M * j_VM

    return FluxBundle(
        j_VF=j_VF,
        j_VM=j_VM,
        j_V=j_VF + j_VM,
        j1=j1,
        j2=j2,
        j_rho=j_rho,
        tau=stress_tensor(jet, params),
        rho_flux_defined=defined,
    )


def residual_starred(jet: StateJet, params: ModelParams) -> ResidualVector:
    """별표 변수계의 잔차.

    r6 은 2κ u_x u_xx 항을 포함하며, γ0+γ1 = σ1, γ2 = α σ2 이면 농도 결합 항이 사라진다.
    """
    _require(jet, PressureKind.EFFECTIVE)
    k = params.k
    ps_x, ps_xx = jet.pressure_x, jet.pressure_xx
    th, th_t, th_x = jet.theta_F, jet.theta_F_t, jet.theta_F_x

    r1 = 2.0 * jet.u_tx - k * ps_xx
    r2 = jet.rho_t + jet.rho_x * jet.u_t - k * (params.rhoF0 - jet.rho) * ps_xx
    r3 = th_t + th_x * jet.u_t - k * (1.0 - th) * ps_xx

    def solute(c, c_t, c_x, c_xx, D, S):
        return (
            (th_t * c + th * c_t)
            + (th_x * c + th * c_x) * jet.u_t
            + 2.0 * th * c * jet.u_tx
            - D * c_xx
            - k * S * (c_x * ps_x + c * ps_xx)
        )

    r4 = solute(jet.c1, jet.c1_t, jet.c1_x, jet.c1_xx, params.D1, params.S1)
    r5 = solute(jet.c2, jet.c2_t, jet.c2_x, jet.c2_xx, params.D2, params.S2)
    r6 = (
        jet.rho * jet.u_tt
        + jet.rho_t * jet.u_t
        + jet.rho * jet.u_t * jet.u_tx
        - params.lambda_star * jet.u_xx
        - 2.0 * params.kappa * jet.u_x * jet.u_xx
        + ps_x
        - params.osmotic1 * jet.c1_x
        - params.osmotic2 * jet.c2_x
    )
    return ResidualVector(r1, r2, r3, r4, r5, r6)


def residual_original(jet: StateJet, params: ModelParams) -> ResidualVector:
    """원 변수계의 잔차 (dF/du_x = 2κ u_x)"""
    _require(jet, PressureKind.HYDROSTATIC)
    k, RT = params.k, params.RT
    aT2 = params.alpha * params.T2
    drive_x = jet.pressure_x - params.T1 * jet.c1_x - aT2 * jet.c2_x
    drive_xx = jet.pressure_xx - params.T1 * jet.c1_xx - aT2 * jet.c2_xx
    th, th_t, th_x = jet.theta_F, jet.theta_F_t, jet.theta_F_x

    r1 = 2.0 * jet.u_tx - k * drive_xx
    r2 = jet.rho_t + jet.rho_x * jet.u_t - k * (params.rhoF0 - jet.rho) * drive_xx
    r3 = th_t + th_x * jet.u_t - k * (1.0 - th) * drive_xx

    def solute(c, c_t, c_x, c_xx, D, S):
        # k S (c (p_x - T1 c1_x - α T2 c2_x))_x
        return (
            (th_t * c + th * c_t)
            + (th_x * c + th * c_x) * jet.u_t
            + 2.0 * th * c * jet.u_tx
            - D * c_xx
            - k * S * (c_x * drive_x + c * drive_xx)
        )

    r4 = solute(jet.c1, jet.c1_t, jet.c1_x, jet.c1_xx, params.D1, params.S1)
    r5 = solute(jet.c2, jet.c2_t, jet.c2_x, jet.c2_xx, params.D2, params.S2)
    r6 = (
        jet.rho * jet.u_tt
        + jet.rho_t * jet.u_t
        + jet.rho * jet.u_t * jet.u_tx
        - params.lambda_star * jet.u_xx
        - 2.0 * params.kappa * jet.u_x * jet.u_xx
        + jet.pressure_x
        - (params.gamma0 + params.gamma1) * RT * jet.c1_x
        - params.gamma2 * RT * jet.c2_x
    )
    return ResidualVector(r1, r2, r3, r4, r5, r6)
