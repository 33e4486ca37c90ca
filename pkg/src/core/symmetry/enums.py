from enum import Enum


class GeneratorTag(str, Enum):
    """
    대칭 생성자

    - X1: ∂_t (시간 이동)
    - X2: ∂_x (공간 이동)
    - X3: ∂_u (변위 이동)
    - X4: g(t)∂_p* (유효압에 시간 함수 추가)
    - X5: c₁∂_c₁ (c₁ 스케일)
    - X6: c₂∂_c₂ (c₂ 스케일)
    - X7: x∂_u (강체 신장, κ = 0 에서만)
    """
    X1 = "X1"
    X2 = "X2"
    X3 = "X3"
    X4 = "X4"
    X5 = "X5"
    X6 = "X6"
    X7 = "X7"


PRINCIPAL = (GeneratorTag.X1, GeneratorTag.X2, GeneratorTag.X3, GeneratorTag.X4)
