"""
격자 위에서 FieldSolution 의 지배방정식 잔차를 계산한다.

미분은 해석적 jet 을 쓰거나 (ANALYTIC), 여섯 필드 값만으로 2차 중심차분을 만든다 (FD).
FD 스텐실은 격자 밖으로 h 만큼 나가므로 해의 영역은 격자보다 넓어야 한다.
"""

import logging
from dataclasses import dataclass

import numpy as np

from src.core.exceptions import OrderUndefinedError, UsageError
from src.core.families.solution import FieldSolution, make_jet
from src.core.model import ModelParams, PressureKind, StateJet, residual_starred
from src.core.solver.convergence import convergence_order
from src.core.solver.enums import DerivativeSource
from src.core.solver.grid import Grid

logger = logging.getLogger(__name__)

EQUATIONS = ("r1", "r2", "r3", "r4", "r5", "r6")
_FIELDS = ("u", "rho", "theta_F", "c1", "c2", "pressure")
_EXACT_FLOOR = 1e-8  # FD exact up to rounding


@dataclass(frozen=True)
class ResidualReport:
    """방정식별 L∞, RMS(L2) 노름과 최대 위치

    orders 는 3개 이상의 step 으로 refinement 를 돌렸을 때만 채워진다.
    """

    label: str
    source: DerivativeSource
    h: float | None
    linf: tuple[float, ...]
    l2: tuple[float, ...]
    argmax: tuple[tuple[float, float], ...]
    orders: tuple[tuple[float, ...] | None, ...] | None = None

    @property
    def max_linf(self) -> float:
        return max(self.linf)

    def rows(self) -> list[dict[str, object]]:
        rows = []
        for i, name in enumerate(EQUATIONS):
            t, x = self.argmax[i]
            order = self.orders[i] if self.orders else None
            rows.append(
                {
                    "equation": name,
                    "linf": self.linf[i],
                    "l2": self.l2[i],
                    "t_max": t,
                    "x_max": x,
                    "order": min(order) if order else float("nan"),
                }
            )
        return rows

    def summary(self) -> str:
        step = f" h={self.h:g}" if self.h is not None else ""
        lines = [f"{self.label} [{self.source.value}{step}] max |r| = {self.max_linf:.3e}"]
        for row in self.rows():
            lines.append(
                f"  {row['equation']}: linf={row['linf']:.3e} l2={row['l2']:.3e} "
                f"at (t={row['t_max']:.4g}, x={row['x_max']:.4g})"
            )
        return "\n".join(lines)


def fd_jet(sol: FieldSolution, T: np.ndarray, X: np.ndarray, h: float) -> StateJet:
    """값만으로 만든 jet (중심차분, 시간/공간 모두 step h)"""
    effective = sol.as_effective()
    cache: dict[tuple[int, int], dict[str, np.ndarray]] = {}

    def at(i: int, j: int) -> dict[str, np.ndarray]:
        if (i, j) not in cache:
            cache[(i, j)] = effective.values(T + i * h, X + j * h)
        return cache[(i, j)]

    centre = at(0, 0)

    def d_t(name):
        return (at(1, 0)[name] - at(-1, 0)[name]) / (2.0 * h)

    def d_x(name):
        return (at(0, 1)[name] - at(0, -1)[name]) / (2.0 * h)

    def d_xx(name):
        return (at(0, 1)[name] - 2.0 * centre[name] + at(0, -1)[name]) / h**2

    u_tt = (at(1, 0)["u"] - 2.0 * centre["u"] + at(-1, 0)["u"]) / h**2
    u_tx = (at(1, 1)["u"] - at(1, -1)["u"] - at(-1, 1)["u"] + at(-1, -1)["u"]) / (4.0 * h * h)
    return make_jet(
        PressureKind.EFFECTIVE,
        np.shape(centre["u"]),
        **{name: centre[name] for name in _FIELDS},
        u_t=d_t("u"),
        u_x=d_x("u"),
        u_tt=u_tt,
        u_tx=u_tx,
        u_xx=d_xx("u"),
        rho_t=d_t("rho"),
        rho_x=d_x("rho"),
        theta_F_t=d_t("theta_F"),
        theta_F_x=d_x("theta_F"),
        c1_t=d_t("c1"),
        c1_x=d_x("c1"),
        c1_xx=d_xx("c1"),
        c2_t=d_t("c2"),
        c2_x=d_x("c2"),
        c2_xx=d_xx("c2"),
        pressure_x=d_x("pressure"),
        pressure_xx=d_xx("pressure"),
    )


def _residual_arrays(
    sol: FieldSolution, grid: Grid, mp: ModelParams, source: DerivativeSource, h: float | None
) -> tuple[list[np.ndarray], StateJet]:
    T, X = grid.mesh()
    if source == DerivativeSource.ANALYTIC:
        if not sol.analytic:
            raise UsageError(f"{sol.label} has no analytic derivatives; use the FD source")
        jet = sol.as_effective().jet(T, X)
    else:
        jet = fd_jet(sol, T, X, h)
    residual = residual_starred(jet, mp)
    return [np.broadcast_to(np.asarray(r, dtype=float), T.shape) for r in residual.as_tuple()], jet


def residual_scan(
    sol: FieldSolution,
    grid: Grid,
    mp: ModelParams,
    source: DerivativeSource = DerivativeSource.ANALYTIC,
    h: float | None = None,
) -> ResidualReport:
    """격자 모든 노드에서 별표 변수계 잔차를 계산합니다.

    Args:
        sol: 검사할 해
        grid: 평가 격자
        mp: 모델 파라미터
        source: 해석적 미분 또는 FD
        h: FD step (기본값 grid.h)

    Returns:
        ResidualReport

    Raises:
        DomainError: 격자 (FD 는 ±h 여유 포함) 가 해의 영역을 벗어남
        UsageError: 해석적 미분이 없는 해에 ANALYTIC 을 요청
    """
    step = None
    if source == DerivativeSource.FD:
        step = float(h) if h is not None else grid.h
    arrays, jet = _residual_arrays(sol, grid, mp, source, step)
    jet.warn_if_unphysical()

    T, X = grid.mesh()
    linf, l2, argmax = [], [], []
    for r in arrays:
        magnitude = np.abs(r)
        bad = ~np.isfinite(magnitude)
        if bad.all():
            raise UsageError(f"{sol.label}: residual is non-finite on the whole grid")
        if bad.any():
            logger.warning("%s: non-finite residual at %d node(s)", sol.label, int(np.count_nonzero(bad)))
        index = np.unravel_index(int(np.nanargmax(magnitude)), magnitude.shape)
        linf.append(float(magnitude[index]))
        l2.append(float(np.sqrt(np.nanmean(magnitude**2))))
        argmax.append((float(T[index]), float(X[index])))
    report = ResidualReport(sol.label, source, step, tuple(linf), tuple(l2), tuple(argmax))
    logger.debug("residual scan %s: max %.3e", sol.label, report.max_linf)
    return report


def residual_refinement(
    sol: FieldSolution,
    grid: Grid,
    mp: ModelParams,
    steps: tuple[float, ...] = (1e-2, 5e-3, 2.5e-3),
) -> ResidualReport:
    """FD 잔차가 해석적 잔차로 수렴하는 차수를 방정식별로 측정합니다.

    Returns:
        가장 작은 step 의 FD ResidualReport (orders 포함). FD 가 반올림 수준에서 이미 정확한 방정식의 order 는 None.

    Raises:
        UsageError: step 이 3개 미만이거나 해석적 미분이 없음
    """
    if len(steps) < 3:
        raise UsageError("refinement order estimates need at least three step sizes")
    exact, _ = _residual_arrays(sol, grid, mp, DerivativeSource.ANALYTIC, None)
    errors: list[list[tuple[float, float]]] = [[] for _ in EQUATIONS]
    for h in steps:
        approx, _ = _residual_arrays(sol, grid, mp, DerivativeSource.FD, h)
        for i, (a, e) in enumerate(zip(approx, exact)):
            errors[i].append((h, float(np.max(np.abs(a - e)))))

    orders = []
    for pairs in errors:
        if max(e for _, e in pairs) <= _EXACT_FLOOR:
            orders.append(None)
            continue
        try:
            orders.append(tuple(convergence_order(pairs)))
        except OrderUndefinedError:
            orders.append(None)
    finest = residual_scan(sol, grid, mp, DerivativeSource.FD, steps[-1])
    return ResidualReport(
        finest.label, finest.source, finest.h, finest.linf, finest.l2, finest.argmax, tuple(orders)
    )
