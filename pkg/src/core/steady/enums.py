from enum import Enum


class ProfileBranch(str, Enum):
    """
    정상 농도식 Dᵢ C″ + k Sᵢ P₁ C′ = 0 의 해 분기

    - EXPONENTIAL: Dᵢ ≠ 0, k Sᵢ P₁ ≠ 0 → A₀ᵢ + Aᵢ exp(−k Sᵢ P₁ x / Dᵢ)
    - LINEAR: Dᵢ ≠ 0, k Sᵢ P₁ = 0 → A₀ᵢ + Aᵢ x
    - CONSTANT: Dᵢ = 0, k Sᵢ P₁ ≠ 0 → A₀ᵢ
    - ARBITRARY: Dᵢ = 0, k Sᵢ P₁ = 0 → 임의 함수 (지원하지 않음)
    """
    EXPONENTIAL = "exponential"
    LINEAR = "linear"
    CONSTANT = "constant"
    ARBITRARY = "arbitrary"


class Tissue(str, Enum):
    """
    Example 1 의 조직 종류 (λ* 만 다르다)

    - HEALTHY: λ* = 100
    - TUMOUR: λ* = 700
    """
    HEALTHY = "healthy"
    TUMOUR = "tumour"
