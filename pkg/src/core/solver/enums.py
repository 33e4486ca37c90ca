from enum import Enum


class DerivativeSource(str, Enum):
    """
    residual_scan 이 jet 의 미분을 얻는 방법

    - ANALYTIC: FieldSolution 이 주는 해석적 미분
    - FD: 여섯 필드 값만으로 만든 2차 중심차분 (step h)
    """
    ANALYTIC = "analytic"
    FD = "fd"


class BoundaryKind(str, Enum):
    """
    경계 조건 종류

    - DIRICHLET: 값 g(t)
    - NEUMANN: x-미분 g(t)
    - FREE: 조건 없음 (ρ, θ_F 의 유출 경계)
    """
    DIRICHLET = "dirichlet"
    NEUMANN = "neumann"
    FREE = "free"
