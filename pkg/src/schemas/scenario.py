"""
시나리오 문서 스키마 (JSON, schema_version 으로 버전 관리)

작업별 payload 완결성은 계산 전에 검증된다. 환경변수에서 읽는 값은 없다.
"""

from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.config import SCHEMA_VERSION
from src.core.families import (
    ConcentrationMode,
    Family68Params,
    Family72Params,
    Family75Params,
    Family78Params,
    Fig4Params,
    SmoothFunction,
)
from src.core.model import ModelParams
from src.core.model.enums import Variant
from src.core.solver import BoundaryKind, DerivativeSource, Grid
from src.core.steady import SteadyParams, Tissue
from src.schemas.enums import FamilyTag, Task, VariantChoice

PARAM_MODELS: dict[FamilyTag, type[BaseModel]] = {
    FamilyTag.FAMILY68: Family68Params,
    FamilyTag.FAMILY72: Family72Params,
    FamilyTag.FAMILY75: Family75Params,
    FamilyTag.FAMILY78: Family78Params,
    FamilyTag.EXAMPLE2: Fig4Params,
    FamilyTag.STEADY: SteadyParams,
}

BOUNDARY_FIELDS = ("u", "p_star", "c1", "c2", "rho", "theta_F")


class _Document(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)


class FamilySpec(_Document):
    """해 선택: family 태그, variant, family 파라미터"""

    tag: FamilyTag
    variant: VariantChoice = VariantChoice.CORRECTED
    params: dict[str, Any] = Field(default_factory=dict)
    mode: ConcentrationMode = ConcentrationMode.NUMERIC
    span: tuple[float, float] = (0.0, 1.0)
    t_span: tuple[float, float] = (0.0, 1.0)

    @model_validator(mode="after")
    def _family_params(self) -> "FamilySpec":
        PARAM_MODELS[self.tag].model_validate(self.params)
        return self

    def family_params(self) -> BaseModel:
        return PARAM_MODELS[self.tag].model_validate(self.params)

    def variants(self) -> list[Variant]:
        if self.variant == VariantChoice.BOTH:
            return [Variant.AS_PRINTED, Variant.CORRECTED]
        return [Variant(self.variant.value)]


class BoundarySpec(_Document):
    """한 끝의 조건: Dirichlet 값 또는 Neumann x-미분 g(t)"""

    kind: BoundaryKind = BoundaryKind.DIRICHLET
    value: SmoothFunction = Field(default_factory=lambda: SmoothFunction.constant(0.0))


class FamilyPayload(_Document):
    solution: FamilySpec
    grid: Grid = Field(default_factory=Grid)


class ResidualPayload(_Document):
    solution: FamilySpec
    grid: Grid = Field(default_factory=Grid)
    source: DerivativeSource = DerivativeSource.ANALYTIC
    h: float | None = Field(None, gt=0)
    refinement: tuple[float, ...] = ()
    random_jets: int = Field(1000, ge=0)

    @field_validator("refinement")
    @classmethod
    def _enough_steps(cls, value: tuple[float, ...]) -> tuple[float, ...]:
        if value and len(value) < 3:
            raise ValueError("refinement needs at least three step sizes")
        return value


class SolvePayload(_Document):
    """reference 해가 초기 상태와 (덮어쓰지 않은) Dirichlet 경계 자료를 준다."""

    reference: FamilySpec
    grid: Grid
    boundary: dict[str, tuple[BoundarySpec, BoundarySpec]] = Field(default_factory=dict)
    output_every: int = Field(1, ge=1)

    @field_validator("boundary")
    @classmethod
    def _known_fields(cls, value: dict) -> dict:
        unknown = sorted(set(value) - set(BOUNDARY_FIELDS))
        if unknown:
            raise ValueError(f"unknown boundary fields {unknown}; expected {list(BOUNDARY_FIELDS)}")
        return value


class ConvergePayload(_Document):
    reference: FamilySpec
    nx_list: tuple[int, ...] = (51, 101, 201)
    x_span: tuple[float, float] = (0.0, 1.0)
    t_span: tuple[float, float] = (0.0, 0.1)
    nt: int = Field(1250, ge=1)
    order_range: tuple[float, float] = (1.8, 2.2)


class SteadyPayload(_Document):
    profile: SteadyParams
    kappas: tuple[float, ...] = ()
    x_span: tuple[float, float] = (0.0, 1.0)
    points: int = Field(101, ge=2)
    taylor_x: float = 0.5


class OrbitPayload(_Document):
    epsilon: float = 0.1
    grid: Grid = Field(default_factory=lambda: Grid(nx=21, nt=20))


class Example1Payload(_Document):
    kappas: tuple[float, ...] = (-50.0, 0.0, 50.0, 100.0)
    tissues: tuple[Tissue, ...] = (Tissue.HEALTHY, Tissue.TUMOUR)
    points: int = Field(101, ge=2)
    taylor_kappas: tuple[float, ...] = (100.0, 50.0, 25.0)
    taylor_x: float = 0.5


class Example2Payload(_Document):
    variant: VariantChoice = VariantChoice.BOTH
    fig: Fig4Params = Field(default_factory=Fig4Params)
    grid: Grid = Field(default_factory=lambda: Grid(x_lo=0.0, x_hi=0.4, nx=101, t_lo=0.0, t_hi=1.0, nt=100))


_PAYLOADS: dict[Task, tuple[str, type[_Document] | None]] = {
    Task.STEADY: ("steady", None),
    Task.FAMILY: ("family", None),
    Task.RESIDUAL: ("residual", None),
    Task.SOLVE: ("solve", None),
    Task.CONVERGE: ("converge", None),
    Task.ORBIT: ("orbit", OrbitPayload),
    Task.EXAMPLE1: ("example1", Example1Payload),
    Task.EXAMPLE2: ("example2", Example2Payload),
}


class Scenario(_Document):
    """선언적 실행 기술. 작업에 맞는 payload 하나만 읽힌다."""

    schema_version: Literal[1] = SCHEMA_VERSION
    name: str = Field(pattern=r"^[A-Za-z0-9_.-]+$", max_length=128)
    task: Task
    params: ModelParams = Field(default_factory=ModelParams)
    seed: int = 0
    steady: SteadyPayload | None = None
    family: FamilyPayload | None = None
    residual: ResidualPayload | None = None
    solve: SolvePayload | None = None
    converge: ConvergePayload | None = None
    orbit: OrbitPayload | None = None
    example1: Example1Payload | None = None
    example2: Example2Payload | None = None

    @model_validator(mode="after")
    def _payload_present(self) -> "Scenario":
        field, default = _PAYLOADS[self.task]
        if getattr(self, field) is None and default is None:
            raise ValueError(f"task '{self.task.value}' needs the '{field}' payload")
        return self

    @property
    def payload(self) -> _Document:
        field, default = _PAYLOADS[self.task]
        value = getattr(self, field)
        return value if value is not None else default()
