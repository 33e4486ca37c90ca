"""
대칭 생성자의 유한 흐름 (해 → 해 변환)

κ(γ₀ + γ₁ − σ₁)(γ₂ − ασ₂) = 0 일 때 X1–X4 의 주 대수가 확장된다.
원 변수계 (p) 에서는 X4, X5, X6 이 p 에도 작용하므로 original_variable_flow 를 쓴다.
"""

import logging
import math
from dataclasses import dataclass, replace

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from src.config import RESTRICTION_TOL
from src.core.exceptions import ApplicabilityError, UsageError
from src.core.families.solution import FieldSolution, SmoothFunction
from src.core.model import ModelParams, PressureKind, StateJet
from src.core.symmetry.enums import PRINCIPAL, GeneratorTag

logger = logging.getLogger(__name__)

_PRESSURE_ACTING = (GeneratorTag.X4, GeneratorTag.X5, GeneratorTag.X6)


class SymmetryGenerator(BaseModel):
    """생성자 태그와 흐름 파라미터 ε (X4 는 g(t) 필요, 다른 태그는 g 를 무시)"""

    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    tag: GeneratorTag
    epsilon: float = 0.0
    g: SmoothFunction | None = None

    @model_validator(mode="after")
    def _needs_g(self) -> "SymmetryGenerator":
        if self.tag == GeneratorTag.X4 and self.g is None:
            raise ValueError("X4 needs the time function g(t)")
        return self


@dataclass(frozen=True)
class ApplicabilitySet:
    """허용되는 생성자 태그와 해당 분류표 행 (1–6, 확장이 없거나 표에 없는 경우 None)"""

    tags: tuple[GeneratorTag, ...]
    row: int | None = None

    def __contains__(self, tag: object) -> bool:
        return tag in self.tags


# (κ = 0, γ₀+γ₁ = σ₁, γ₂ = ασ₂) → row
_ROWS = {
    (False, True, False): 1,
    (False, False, True): 2,
    (False, True, True): 3,
    (True, True, False): 4,
    (True, False, True): 5,
    (True, True, True): 6,
}


def applicable_generators(mp: ModelParams, tol: float = RESTRICTION_TOL) -> ApplicabilitySet:
    """파라미터가 허용하는 생성자를 돌려줍니다.

    Args:
        mp: 모델 파라미터
        tol: 등식 제약 허용 오차

    Returns:
        ApplicabilitySet. X1–X4 는 항상, X5 는 γ₀+γ₁ = σ₁, X6 은 γ₂ = ασ₂, X7 은 κ = 0 일 때 포함된다.
    """
    linear, c1, c2 = mp.linear_stress(tol), mp.c1_restricted(tol), mp.c2_restricted(tol)
    if not mp.generic:
        logger.info("parameters violate k·α·ρF0·Di·Si ≠ 0; principal generators listed anyway")
    tags = list(PRINCIPAL)
    if c1:
        tags.append(GeneratorTag.X5)
    if c2:
        tags.append(GeneratorTag.X6)
    if linear:
        tags.append(GeneratorTag.X7)
    return ApplicabilitySet(tuple(tags), _ROWS.get((linear, c1, c2)))


def _check_applicable(sol: FieldSolution, gen: SymmetryGenerator, override: bool) -> None:
    if gen.tag in applicable_generators(sol.params):
        return
    if not override:
        raise ApplicabilityError(f"{gen.tag.value} is not admitted by the parameters of {sol.label}")
    logger.debug("applying inadmissible %s to %s (override)", gen.tag.value, sol.label)


def _scale(jet: StateJet, name: str, factor: float) -> StateJet:
    return replace(
        jet,
        **{field: factor * getattr(jet, field) for field in (name, f"{name}_t", f"{name}_x", f"{name}_xx")},
    )


def _point_map(jet: StateJet, gen: SymmetryGenerator, t: np.ndarray, x: np.ndarray) -> StateJet:
    eps = gen.epsilon
    match gen.tag:
        case GeneratorTag.X3:
            return replace(jet, u=jet.u + eps)
        case GeneratorTag.X4:
            return replace(jet, pressure=jet.pressure + eps * gen.g(t))
        case GeneratorTag.X5:
            return _scale(jet, "c1", math.exp(eps))
        case GeneratorTag.X6:
            return _scale(jet, "c2", math.exp(eps))
        case GeneratorTag.X7:
            return replace(jet, u=jet.u + eps * x, u_x=jet.u_x + eps)
    raise UsageError(f"{gen.tag.value} moves the independent variables")


def apply_generator(sol: FieldSolution, gen: SymmetryGenerator, override: bool = False) -> FieldSolution:
    """생성자의 유한 흐름으로 새 해를 만듭니다.

    Args:
        sol: 원래 해
        gen: 생성자와 ε
        override: 허용되지 않는 생성자도 적용 (음성 검증용)

    Returns:
        변환된 FieldSolution. 해석적 미분도 함께 변환된다.

    Raises:
        ApplicabilityError: override 없이 허용되지 않는 생성자
        UsageError: p 를 들고 있는 해에 X4, X5, X6 (original_variable_flow 를 쓸 것)
    """
    _check_applicable(sol, gen, override)
    if gen.tag in _PRESSURE_ACTING and sol.pressure_kind != PressureKind.EFFECTIVE:
        raise UsageError(f"{gen.tag.value} acts on p*; use original_variable_flow for {sol.label}")
    base, eps = sol.jet_fn, gen.epsilon
    label = f"{sol.label}|{gen.tag.value}({eps:g})"
    match gen.tag:
        case GeneratorTag.X1:
            return sol.with_jet(lambda t, x: base(t - eps, x), label, domain=sol.domain.shifted(dt=eps))
        case GeneratorTag.X2:
            return sol.with_jet(lambda t, x: base(t, x - eps), label, domain=sol.domain.shifted(dx=eps))
    return sol.with_jet(lambda t, x: _point_map(base(t, x), gen, t, x), label)


def original_variable_flow(
    sol: FieldSolution, gen: SymmetryGenerator, override: bool = False
) -> FieldSolution:
    """원 변수계 (p) 해 위의 X4, X5, X6 흐름

    X5 는 c₁ 을 e^ε 배 하면서 p 에 T₁(e^ε − 1)c₁ 을, X6 은 c₂ 와 함께 p 에 αT₂(e^ε − 1)c₂ 를 더한다.

    Raises:
        UsageError: 다른 생성자이거나 p* 를 들고 있는 해
        ApplicabilityError: override 없이 허용되지 않는 생성자
    """
    if gen.tag not in _PRESSURE_ACTING:
        raise UsageError(f"{gen.tag.value} acts identically on p and p*; use apply_generator")
    if sol.pressure_kind != PressureKind.HYDROSTATIC:
        raise UsageError(f"{sol.label} carries p*; original-variable flows need p")
    _check_applicable(sol, gen, override)
    mp, base, eps = sol.params, sol.jet_fn, gen.epsilon

    def jet_fn(t: np.ndarray, x: np.ndarray) -> StateJet:
        jet = base(t, x)
        if gen.tag == GeneratorTag.X4:
            return replace(jet, pressure=jet.pressure + eps * gen.g(t))
        name, coef = ("c1", mp.T1) if gen.tag == GeneratorTag.X5 else ("c2", mp.alpha * mp.T2)
        shift = coef * math.expm1(eps)
        moved = replace(
            jet,
            pressure=jet.pressure + shift * getattr(jet, name),
            pressure_x=jet.pressure_x + shift * getattr(jet, f"{name}_x"),
            pressure_xx=jet.pressure_xx + shift * getattr(jet, f"{name}_xx"),
        )
        return _scale(moved, name, math.exp(eps))

    return sol.with_jet(jet_fn, f"{sol.label}|{gen.tag.value}[p]({eps:g})")
