"""
IBVP 경계 조건

u 는 양 끝 Dirichlet, c₁·c₂·p* 는 끝마다 Dirichlet 또는 Neumann (x-미분),
ρ·θ_F 는 유입(inflow) 경계에서만 Dirichlet 값을 쓴다.
"""

from dataclasses import dataclass, field
from typing import Callable

from src.core.exceptions import ConfigurationError
from src.core.families.solution import FieldSolution
from src.core.solver.enums import BoundaryKind

TimeFunction = Callable[[float], float]

_RATE_STEP = 1e-6


@dataclass(frozen=True)
class BoundaryCondition:
    """한 끝의 조건. rate 는 Dirichlet 값의 시간미분 (u 에서 w = u_t 경계값으로 쓴다)."""

    kind: BoundaryKind = BoundaryKind.FREE
    value: TimeFunction | None = None
    rate: TimeFunction | None = None

    @classmethod
    def dirichlet(cls, value: TimeFunction, rate: TimeFunction | None = None) -> "BoundaryCondition":
        return cls(BoundaryKind.DIRICHLET, value, rate)

    @classmethod
    def neumann(cls, gradient: TimeFunction) -> "BoundaryCondition":
        return cls(BoundaryKind.NEUMANN, gradient)

    @classmethod
    def constant(cls, value: float) -> "BoundaryCondition":
        return cls(BoundaryKind.DIRICHLET, lambda t: value, lambda t: 0.0)

    def at(self, t: float) -> float:
        if self.value is None:
            raise ConfigurationError(f"{self.kind.value} boundary condition carries no data")
        return float(self.value(t))

    def rate_at(self, t: float) -> float:
        if self.rate is not None:
            return float(self.rate(t))
        step = _RATE_STEP * max(1.0, abs(t))
        return (self.at(t + step) - self.at(t - step)) / (2.0 * step)


Pair = tuple[BoundaryCondition, BoundaryCondition]


def _free() -> Pair:
    return BoundaryCondition(), BoundaryCondition()


@dataclass(frozen=True)
class BoundaryConditions:
    """필드별 (왼쪽, 오른쪽) 조건"""

    u: Pair
    p_star: Pair
    c1: Pair
    c2: Pair
    rho: Pair = field(default_factory=_free)
    theta_F: Pair = field(default_factory=_free)

    def validate(self) -> None:
        """
        Raises:
            ConfigurationError: 지원하지 않는 조합
        """
        if any(bc.kind != BoundaryKind.DIRICHLET for bc in self.u):
            raise ConfigurationError("the solver needs Dirichlet displacement data at both ends")
        if all(bc.kind != BoundaryKind.DIRICHLET for bc in self.p_star):
            raise ConfigurationError("p* needs a Dirichlet value at one end at least")
        for name in ("p_star", "c1", "c2"):
            if any(bc.kind == BoundaryKind.FREE for bc in getattr(self, name)):
                raise ConfigurationError(f"{name} needs one condition at each end")
        for name in ("rho", "theta_F"):
            if any(bc.kind == BoundaryKind.NEUMANN for bc in getattr(self, name)):
                raise ConfigurationError(f"{name} carries inflow (Dirichlet) data only")

    @classmethod
    def from_solution(cls, sol: FieldSolution, x_lo: float, x_hi: float) -> "BoundaryConditions":
        """정확해에서 읽은 Dirichlet 자료 (manufactured 검증용)"""
        effective = sol.as_effective()

        def end_jet(x: float):
            last: dict = {}

            def get(t: float):
                # one evaluation per (stage time, end) shared by all fields
                if last.get("t") != t:
                    last.update(t=t, jet=effective.jet(t, x))
                return last["jet"]

            return get

        ends = (end_jet(x_lo), end_jet(x_hi))

        def read(name: str, get) -> BoundaryCondition:
            def value(t: float) -> float:
                return float(getattr(get(t), name))

            rate = None
            if name == "u" and sol.analytic:
                def rate(t: float) -> float:
                    return float(get(t).u_t)

            return BoundaryCondition.dirichlet(value, rate)

        def pair(name: str) -> Pair:
            return read(name, ends[0]), read(name, ends[1])

        return cls(
            u=pair("u"),
            p_star=pair("pressure"),
            c1=pair("c1"),
            c2=pair("c2"),
            rho=pair("rho"),
            theta_F=pair("theta_F"),
        )
