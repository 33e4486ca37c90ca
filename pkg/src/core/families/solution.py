"""
FieldSolution: (t, x) → StateJet 평가기

정확해 family, 이산 솔버 결과, 대칭 변환 결과가 모두 이 타입으로 오간다.
평가는 numpy 배열 단위로 하며, jet 의 모든 필드는 (t, x) 를 broadcast 한 shape 을 가진다.
"""

import math
from dataclasses import dataclass, fields, replace
from typing import Callable

import numpy as np
from pydantic import BaseModel, ConfigDict

from src.core.exceptions import DomainError, UsageError
from src.core.families.enums import FunctionKind
from src.core.model import ModelParams, PressureKind, StateJet, from_effective, to_effective

JetFunction = Callable[[np.ndarray, np.ndarray], StateJet]

_DERIVATIVE_FIELDS = tuple(
    f.name
    for f in fields(StateJet)
    if f.name not in ("pressure_kind", "u", "rho", "theta_F", "c1", "c2", "pressure")
)


class SmoothFunction(BaseModel):
    """f(t) (또는 θ_F(ω)) 와 그 도함수. 호출자가 형태를 고르면 도함수는 닫힌형으로 계산된다."""

    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    kind: FunctionKind = FunctionKind.POLYNOMIAL
    coefficients: tuple[float, ...] = (0.0,)
    amplitude: float = 1.0
    frequency: float = 1.0
    phase: float = 0.0
    offset: float = 0.0

    @classmethod
    def constant(cls, value: float) -> "SmoothFunction":
        return cls(kind=FunctionKind.POLYNOMIAL, coefficients=(value,))

    @classmethod
    def sine(cls, amplitude: float, frequency: float = 1.0, phase: float = 0.0, offset: float = 0.0):
        return cls(
            kind=FunctionKind.SINE,
            amplitude=amplitude,
            frequency=frequency,
            phase=phase,
            offset=offset,
        )

    @property
    def is_constant(self) -> bool:
        if self.kind == FunctionKind.POLYNOMIAL:
            return all(c == 0.0 for c in self.coefficients[1:])
        return self.amplitude == 0.0 or self.frequency == 0.0

    def __call__(self, t, order: int = 0):
        t = np.asarray(t, dtype=float)
        match self.kind:
            case FunctionKind.POLYNOMIAL:
                coef = np.polynomial.polynomial.polyder(self.coefficients, order) if order else self.coefficients
                value = np.polynomial.polynomial.polyval(t, coef) + 0.0 * t
            case FunctionKind.SINE:
                w = self.frequency
                value = self.amplitude * w**order * np.sin(w * t + self.phase + order * math.pi / 2)
                if order == 0:
                    value = value + self.offset
            case FunctionKind.EXPONENTIAL:
                w = self.frequency
                value = self.amplitude * w**order * np.exp(w * t)
                if order == 0:
                    value = value + self.offset
        return value if np.ndim(value) else float(value)


@dataclass(frozen=True)
class Domain:
    """해가 정의된 (t, x) 직사각형 (무한 끝 허용)"""

    x_lo: float = -math.inf
    x_hi: float = math.inf
    t_lo: float = -math.inf
    t_hi: float = math.inf

    def check(self, t: np.ndarray, x: np.ndarray) -> None:
        bad_x = (x < self.x_lo) | (x > self.x_hi)
        if np.any(bad_x):
            location = float(np.asarray(x)[bad_x].flat[0])
            raise DomainError(
                f"x={location:g} outside solution domain [{self.x_lo:g}, {self.x_hi:g}]",
                location=location,
            )
        if np.any((t < self.t_lo) | (t > self.t_hi)):
            raise DomainError(f"t outside solution domain [{self.t_lo:g}, {self.t_hi:g}]")

    def shifted(self, dt: float = 0.0, dx: float = 0.0) -> "Domain":
        return Domain(self.x_lo + dx, self.x_hi + dx, self.t_lo + dt, self.t_hi + dt)


def make_jet(kind: PressureKind, shape: tuple[int, ...], **values) -> StateJet:
    """지정하지 않은 필드는 0 으로 채운 StateJet. 스칼라 값은 shape 으로 broadcast 된다."""
    data = {}
    for f in fields(StateJet):
        if f.name == "pressure_kind":
            continue
        value = values.pop(f.name, 0.0)
        data[f.name] = np.broadcast_to(np.asarray(value, dtype=float), shape).copy()
    if values:
        raise TypeError(f"unknown jet fields: {sorted(values)}")
    return StateJet(pressure_kind=kind, **data)


def strip_derivatives(jet: StateJet) -> StateJet:
    """값만 남기고 미분 필드를 NaN 으로 만든 jet (이산 해 용)"""
    nan = np.full(np.shape(jet.u), np.nan)
    return replace(jet, **{name: nan for name in _DERIVATIVE_FIELDS})


@dataclass(frozen=True)
class FieldSolution:
    """(t, x) → 상태 평가기

    analytic 이 False 이면 jet 의 미분 필드는 NaN 이며, residual_scan 은 FD 모드만 허용한다.
    """

    label: str
    params: ModelParams
    jet_fn: JetFunction
    domain: Domain = Domain()
    pressure_kind: PressureKind = PressureKind.EFFECTIVE
    analytic: bool = True
    notes: tuple[str, ...] = ()

    def jet(self, t, x) -> StateJet:
        t, x = np.broadcast_arrays(np.asarray(t, dtype=float), np.asarray(x, dtype=float))
        self.domain.check(t, x)
        jet = self.jet_fn(t, x)
        if jet.pressure_kind != self.pressure_kind:
            raise UsageError(
                f"{self.label}: jet carries {jet.pressure_kind.value}, "
                f"solution declares {self.pressure_kind.value}"
            )
        return jet

    def values(self, t, x) -> dict[str, np.ndarray]:
        jet = self.jet(t, x)
        return {
            "u": jet.u,
            "rho": jet.rho,
            "theta_F": jet.theta_F,
            "c1": jet.c1,
            "c2": jet.c2,
            "pressure": jet.pressure,
        }

    def pressure(self, t, x) -> np.ndarray:
        """정수압 p = p* + T1 c1 + α T2 c2"""
        return self.as_hydrostatic().jet(t, x).pressure

    def effective_pressure(self, t, x) -> np.ndarray:
        return self.as_effective().jet(t, x).pressure

    def with_jet(self, jet_fn: JetFunction, label: str | None = None, **changes) -> "FieldSolution":
        return replace(self, jet_fn=jet_fn, label=label or self.label, **changes)

    def as_effective(self) -> "FieldSolution":
        if self.pressure_kind == PressureKind.EFFECTIVE:
            return self
        params, base = self.params, self.jet_fn
        return self.with_jet(
            lambda t, x: to_effective(base(t, x), params),
            pressure_kind=PressureKind.EFFECTIVE,
        )

    def as_hydrostatic(self) -> "FieldSolution":
        if self.pressure_kind == PressureKind.HYDROSTATIC:
            return self
        params, base = self.params, self.jet_fn
        return self.with_jet(
            lambda t, x: from_effective(base(t, x), params),
            pressure_kind=PressureKind.HYDROSTATIC,
        )


class ZeroMode:
    """항상 0 인 농도 모드 (진폭이 모두 0 인 경우)"""

    def __call__(self, x, order: int = 0):
        return np.zeros_like(np.asarray(x, dtype=float))

