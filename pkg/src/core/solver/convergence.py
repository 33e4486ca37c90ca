"""
관측 수렴 차수와 manufactured-solution 수렴 연구
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from src.core.exceptions import OrderUndefinedError, UsageError
from src.core.families.solution import FieldSolution
from src.core.model import ModelParams
from src.core.solver.boundary import BoundaryConditions
from src.core.solver.grid import Grid
from src.core.solver.ibvp import solve_ibvp

logger = logging.getLogger(__name__)

_STUDY_FIELDS = ("u", "c1", "c2", "pressure")
_EXACT_FLOOR = 1e-12


def convergence_order(errors: list[tuple[float, float]]) -> list[float]:
    """인접한 (h, error) 쌍마다 log(e₁/e₂)/log(h₁/h₂) 를 계산합니다.

    Args:
        errors: h 가 엄격히 감소하는 (h, error) 목록, 2개 이상

    Returns:
        쌍별 관측 차수 (길이 len(errors) − 1)

    Raises:
        UsageError: 항목이 2개 미만이거나 h 가 감소하지 않음
        OrderUndefinedError: error 가 0 (또는 음수) 인 항목
    """
    if len(errors) < 2:
        raise UsageError("convergence_order needs at least two (h, error) entries")
    orders = []
    for (h1, e1), (h2, e2) in zip(errors, errors[1:]):
        if not h2 < h1:
            raise UsageError(f"step sizes must strictly decrease, got {h1} then {h2}")
        if e1 <= 0 or e2 <= 0:
            raise OrderUndefinedError(f"order undefined for zero error (h={h1}: {e1}, h={h2}: {e2})")
        orders.append(math.log(e1 / e2) / math.log(h1 / h2))
    logger.debug("observed orders %s", orders)
    return orders


@dataclass(frozen=True)
class ManufacturedStudy:
    """정확해 대비 이산해의 마지막 시각 L∞ 오차와 필드별 관측 차수"""

    label: str
    steps: tuple[float, ...]
    errors: dict[str, tuple[float, ...]]
    orders: dict[str, tuple[float, ...] | None]

    def rows(self) -> list[dict[str, object]]:
        rows = []
        for name, errors in self.errors.items():
            orders = self.orders[name]
            for i, (h, error) in enumerate(zip(self.steps, errors)):
                order = orders[i - 1] if orders and i > 0 else float("nan")
                rows.append({"field": name, "h": h, "linf": error, "order": order})
        return rows


def manufactured_study(
    exact: FieldSolution,
    mp: ModelParams,
    nx_list: tuple[int, ...] = (51, 101, 201),
    x_span: tuple[float, float] = (0.0, 1.0),
    t_span: tuple[float, float] = (0.0, 0.1),
    nt: int = 1250,
) -> ManufacturedStudy:
    """정확해의 초기·경계 자료로 solve_ibvp 를 돌려 공간 수렴 차수를 잽니다.

    Δt 는 모든 해상도에서 같게 (nt 고정) 두어 공간 오차만 비교한다.

    Args:
        exact: 정확해 (해석적)
        mp: 모델 파라미터
        nx_list: 증가하는 노드 수 (2개 이상)
        x_span: 공간 구간
        t_span: 시간 구간
        nt: 시간 스텝 수 (가장 조밀한 격자의 안정성 상한을 만족해야 함)

    Returns:
        ManufacturedStudy (반올림 수준으로 정확한 필드의 orders 는 None)

    Raises:
        UsageError: nx_list 가 2개 미만
        ConfigurationError: Δt 가 안정성 상한 초과
    """
    if len(nx_list) < 2:
        raise UsageError("a manufactured study needs at least two resolutions")
    bc = BoundaryConditions.from_solution(exact, *x_span)
    steps, errors = [], {name: [] for name in _STUDY_FIELDS}
    for nx in nx_list:
        grid = Grid(x_lo=x_span[0], x_hi=x_span[1], nx=nx, t_lo=t_span[0], t_hi=t_span[1], nt=nt)
        discrete = solve_ibvp(mp, exact, bc, grid)
        t = np.full(grid.nx, grid.t_hi)
        got = discrete.values(t, grid.x)
        want = exact.as_effective().values(t, grid.x)
        steps.append(grid.h)
        for name in _STUDY_FIELDS:
            errors[name].append(float(np.max(np.abs(got[name] - want[name]))))

    orders: dict[str, tuple[float, ...] | None] = {}
    for name, values in errors.items():
        if max(values) <= _EXACT_FLOOR:
            orders[name] = None
            continue
        try:
            orders[name] = tuple(convergence_order(list(zip(steps, values))))
        except OrderUndefinedError:
            orders[name] = None
    logger.info("manufactured study %s: orders %s", exact.label, orders)
    return ManufacturedStudy(exact.label, tuple(steps), {k: tuple(v) for k, v in errors.items()}, orders)
