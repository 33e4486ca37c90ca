from enum import Enum


class PressureKind(str, Enum):
    """
    StateJet 이 들고 있는 압력 변수의 종류

    - HYDROSTATIC: 정수압 p (원 변수계)
    - EFFECTIVE: 유효압 p* = p - T1 c1 - α T2 c2 (별표 변수계)
    """
    HYDROSTATIC = "p"
    EFFECTIVE = "p_star"


class Variant(str, Enum):
    """
    인쇄된 식 그대로(as_printed) 또는 잔차로 보정한 식(corrected)

    - AS_PRINTED: 인쇄된 닫힌형 그대로
    - CORRECTED: 잔차 검사를 통과하도록 고친 닫힌형
    """
    AS_PRINTED = "as_printed"
    CORRECTED = "corrected"
