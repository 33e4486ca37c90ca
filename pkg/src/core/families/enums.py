from enum import Enum


class FunctionKind(str, Enum):
    """
    SmoothFunction 의 형태

    - POLYNOMIAL: Σ c_k t^k
    - SINE: offset + a·sin(ωt + φ)
    - EXPONENTIAL: offset + a·exp(ωt)
    """
    POLYNOMIAL = "polynomial"
    SINE = "sine"
    EXPONENTIAL = "exponential"


class ConcentrationMode(str, Enum):
    """
    family72 의 농도 모드 구성 방식

    - NUMERIC: 변수계수 모드 ODE 의 수치 기본해
    - BESSEL: S1 = 1/2, β11 = 0 에서의 Bessel 닫힌형 (c1 만)
    """
    NUMERIC = "numeric"
    BESSEL = "bessel"


class BesselBranch(str, Enum):
    """
    c₁ 모드 Bessel 방정식의 해 분기

    - EQUAL_RATES: u1 = v1, 멱함수 해
    - OSCILLATORY: (v1 - u1)/D1 > 0, J / Y
    - MODIFIED: (u1 - v1)/D1 > 0, I / K
    """
    EQUAL_RATES = "equal_rates"
    OSCILLATORY = "oscillatory"
    MODIFIED = "modified"
