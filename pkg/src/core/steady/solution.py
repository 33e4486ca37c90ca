"""
정상 상태 프로파일을 FieldSolution 으로 감싼다.

임의의 κ, γ 에서 정확해이다 (U′ 는 물리적 분기, U″ = G′/(λ* + 2κU′)).
"""

import logging

import numpy as np

from src.core.families.solution import FieldSolution, make_jet
from src.core.model import ModelParams, PressureKind
from src.core.steady.displacement import displacement_quadrature, displacement_slope
from src.core.steady.profiles import SteadyParams, steady_profiles

logger = logging.getLogger(__name__)


def steady_solution(
    params: ModelParams, sp: SteadyParams, rho0: float = 1.0, thetaF0: float = 0.5
) -> FieldSolution:
    """정상 상태 FieldSolution (p* 를 들고 다닌다)

    Args:
        params: 모델 파라미터
        sp: 정상 상태 적분상수
        rho0: 상수 밀도
        thetaF0: 상수 유체 분율

    Returns:
        시간에 무관한 FieldSolution
    """
    profiles = steady_profiles(params, sp)

    def jet_fn(t: np.ndarray, x: np.ndarray):
        return make_jet(
            PressureKind.EFFECTIVE,
            np.shape(x),
            u=displacement_quadrature(params, sp, x),
            rho=rho0,
            theta_F=thetaF0,
            c1=profiles.C1(x),
            c2=profiles.C2(x),
            pressure=profiles.Pstar(x),
            u_x=displacement_slope(params, sp, x, 1),
            u_xx=displacement_slope(params, sp, x, 2),
            c1_x=profiles.C1(x, 1),
            c1_xx=profiles.C1(x, 2),
            c2_x=profiles.C2(x, 1),
            c2_xx=profiles.C2(x, 2),
            pressure_x=profiles.Pstar(x, 1),
        )

    return FieldSolution(label="steady", params=params, jet_fn=jet_fn)
