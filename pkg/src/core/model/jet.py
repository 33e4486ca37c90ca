"""
한 점 (t, x) 에서의 상태값과 편미분 (StateJet)

필드는 float 또는 같은 shape 의 numpy 배열일 수 있다. 배열이면 격자 전체를
한 번에 평가한다 (residual_scan 이 이 방식을 사용).
"""

import logging
from dataclasses import dataclass, fields

import numpy as np

from src.core.model.enums import PressureKind

logger = logging.getLogger(__name__)

Scalar = float | np.ndarray


@dataclass(frozen=True)
class StateJet:
    """상태 u, ρ, θ_F, c1, c2 와 압력 변수 하나 (p 또는 p*) 및 그 미분들.

    압력은 `pressure_kind` 태그와 한 벌의 (값, x-미분, xx-미분)으로만 저장되므로
    "압력 변수는 정확히 하나" 라는 불변식이 구조적으로 보장된다.
    """

    pressure_kind: PressureKind
    u: Scalar
    rho: Scalar
    theta_F: Scalar
    c1: Scalar
    c2: Scalar
    pressure: Scalar
    u_t: Scalar
    u_x: Scalar
    u_tt: Scalar
    u_tx: Scalar
    u_xx: Scalar
    rho_t: Scalar
    rho_x: Scalar
    theta_F_t: Scalar
    theta_F_x: Scalar
    c1_t: Scalar
    c1_x: Scalar
    c1_xx: Scalar
    c2_t: Scalar
    c2_x: Scalar
    c2_xx: Scalar
    pressure_x: Scalar
    pressure_xx: Scalar

    @property
    def e(self) -> Scalar:
        """dilatation e = u_x"""
        return self.u_x

    def physical_warnings(self) -> list[str]:
        """θ_F ∈ (0,1), ρ > 0 위반 목록 (오류가 아닌 경고용)"""
        warnings = []
        theta = np.asarray(self.theta_F)
        rho = np.asarray(self.rho)
        bad_theta = int(np.count_nonzero((theta <= 0) | (theta >= 1)))
        bad_rho = int(np.count_nonzero(rho <= 0))
        if bad_theta:
            warnings.append(f"theta_F outside (0,1) at {bad_theta} point(s)")
        if bad_rho:
            warnings.append(f"rho <= 0 at {bad_rho} point(s)")
        return warnings

    def warn_if_unphysical(self) -> None:
        for message in self.physical_warnings():
            logger.warning(message)

    def as_dict(self) -> dict[str, Scalar]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def random_jet(
    rng: np.random.Generator,
    kind: PressureKind = PressureKind.HYDROSTATIC,
    size: int | None = None,
) -> StateJet:
    """테스트/자가진단용 무작위 jet. θ_F ∈ (0.1, 0.9), ρ > 0 으로 뽑는다."""
    def draw(lo: float = -1.0, hi: float = 1.0) -> Scalar:
        value = rng.uniform(lo, hi, size=size)
        return float(value) if size is None else value

    names = [f.name for f in fields(StateJet) if f.name != "pressure_kind"]
    values = {name: draw() for name in names}
    values["theta_F"] = draw(0.1, 0.9)
    values["rho"] = draw(0.5, 2.0)
    values["c1"] = draw(0.1, 2.0)
    values["c2"] = draw(0.1, 2.0)
    return StateJet(pressure_kind=kind, **values)
