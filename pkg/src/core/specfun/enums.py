from enum import Enum


class BesselTag(str, Enum):
    """
    Bessel 함수 종류

    J: 제1종
    Y: 제2종
    I: 변형 제1종
    K: 변형 제2종
    """

    J = "J"
    Y = "Y"
    I = "I"  # noqa: E741
    K = "K"


class RootCase(str, Enum):
    """
    상수계수 특성방정식 근의 경우

    DISTINCT: 서로 다른 두 실근
    REPEATED: 중근
    COMPLEX: 켤레 복소근 (주기/준주기 해)
    """

    DISTINCT = "distinct"
    REPEATED = "repeated"
    COMPLEX = "complex"
