from enum import Enum


class Task(str, Enum):
    """
    시나리오 작업

    - STEADY: 정상 상태 프로파일과 κ sweep
    - FAMILY: 정확해 family 의 곡면과 해석적 잔차
    - RESIDUAL: 잔차 검사 (해석적/FD, refinement, 무작위 jet 자가진단)
    - SOLVE: IBVP 솔버 실행
    - ORBIT: 대칭 궤도 행렬
    - EXAMPLE1: Example 1 재현 (변위 곡선, Taylor 차수)
    - EXAMPLE2: Example 2 재현 (곡면, 잔차, 제약)
    - CONVERGE: manufactured-solution 수렴 연구
    """
    STEADY = "steady"
    FAMILY = "family"
    RESIDUAL = "residual"
    SOLVE = "solve"
    ORBIT = "orbit"
    EXAMPLE1 = "example1"
    EXAMPLE2 = "example2"
    CONVERGE = "converge"


class FamilyTag(str, Enum):
    """
    시나리오에서 고를 수 있는 해

    - FAMILY68, FAMILY72, FAMILY75, FAMILY78: 대칭 환원 family
    - EXAMPLE2: Example 2 (params 는 Fig4Params)
    - STEADY: 정상 상태 해 (params 는 SteadyParams)
    """
    FAMILY68 = "family68"
    FAMILY72 = "family72"
    FAMILY75 = "family75"
    FAMILY78 = "family78"
    EXAMPLE2 = "example2"
    STEADY = "steady"


class VariantChoice(str, Enum):
    """
    as_printed, corrected, 또는 둘 다
    """
    AS_PRINTED = "as_printed"
    CORRECTED = "corrected"
    BOTH = "both"
