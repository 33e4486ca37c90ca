"""
method-of-lines 유한차분 IBVP 솔버

상태 (u, w = u_t, ρ, θ_F, c₁, c₂) 를 고전 RK4 로 전진한다. p* 는 따로 진화시키지 않고
p*_xx = 2w_x/k 를 매 단계 x 방향으로 적분해 얻는다 (p*_x = 2w/k + a(t), a 는 경계 자료로 결정).

    w_t  = (λ*u_xx − p*_x + osm₁c₁_x + osm₂c₂_x − ρ_t w − ρ w w_x) / ρ
    ρ_t  = −ρ_x w + 2(ρ_F⁰ − ρ) w_x
    θ_t  = −θ_x w + 2(1 − θ) w_x
    θc_t = D c_xx + kS(c_x p*_x + c p*_xx) − c θ_t − w(θ_x c + θ c_x) − 2θ c w_x

공간은 2차 중심차분, ρ·θ_F 의 이류항은 w 부호에 따른 1차 upwind.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from src.core.exceptions import ConfigurationError, DivergenceError
from src.core.families.solution import Domain, FieldSolution, make_jet, strip_derivatives
from src.core.model import ModelParams, PressureKind
from src.core.solver.boundary import BoundaryConditions
from src.core.solver.enums import BoundaryKind
from src.core.solver.grid import Grid

logger = logging.getLogger(__name__)

U, W, RHO, THETA, C1, C2 = range(6)
_COURANT = 0.4


def stability_limit(mp: ModelParams, h: float, rho_min: float) -> float:
    """Δt 상한 0.4·min(h²/max(D₁, D₂, kλ*), h/√(λ*/ρ_min), kρ_min)

    kρ_min 항은 w_t 의 −p*_x/ρ 에 들어 있는 감쇠 −2w/(kρ) 의 상한이다 (k 가 작을 때 지배).
    """
    diffusive = h * h / max(mp.D1, mp.D2, mp.k * mp.lambda_star)
    wave = h / math.sqrt(mp.lambda_star / rho_min)
    damping = mp.k * rho_min
    return _COURANT * min(diffusive, wave, damping)


@dataclass(frozen=True)
class _Operator:
    mp: ModelParams
    bc: BoundaryConditions
    x: np.ndarray
    h: float

    def impose(self, t: float, state: np.ndarray) -> np.ndarray:
        """Dirichlet 경계값을 state 에 덮어쓴다 (ρ, θ_F 는 유입 경계에서만)."""
        left, right = self.bc.u
        state[U, 0], state[U, -1] = left.at(t), right.at(t)
        state[W, 0], state[W, -1] = left.rate_at(t), right.rate_at(t)
        for row, pair in ((C1, self.bc.c1), (C2, self.bc.c2)):
            for end, bc in zip((0, -1), pair):
                if bc.kind == BoundaryKind.DIRICHLET:
                    state[row, end] = bc.at(t)
        inflow = (state[W, 0] > 0, state[W, -1] < 0)
        for row, pair in ((RHO, self.bc.rho), (THETA, self.bc.theta_F)):
            for end, bc, entering in zip((0, -1), pair, inflow):
                if entering and bc.kind == BoundaryKind.DIRICHLET:
                    state[row, end] = bc.at(t)
        return state

    def pressure(self, t: float, w: np.ndarray, w_x: np.ndarray):
        """(p*, p*_x, p*_xx)"""
        k, x, h = self.mp.k, self.x, self.h
        base = 2.0 * w / k
        integral = np.concatenate(([0.0], np.cumsum(0.5 * h * (base[1:] + base[:-1]))))
        left, right = self.bc.p_star
        if left.kind == BoundaryKind.DIRICHLET and right.kind == BoundaryKind.DIRICHLET:
            a = (right.at(t) - left.at(t) - integral[-1]) / (x[-1] - x[0])
            p = left.at(t) + integral + a * (x - x[0])
        elif left.kind == BoundaryKind.DIRICHLET:
            a = right.at(t) - base[-1]
            p = left.at(t) + integral + a * (x - x[0])
        else:
            a = left.at(t) - base[0]
            p = right.at(t) - (integral[-1] - integral) - a * (x[-1] - x)
        return p, base + a, 2.0 * w_x / k

    def _upwind(self, f: np.ndarray, w: np.ndarray) -> np.ndarray:
        diff = np.diff(f) / self.h
        backward = np.concatenate(([diff[0]], diff))
        forward = np.concatenate((diff, [diff[-1]]))
        return np.where(w > 0, backward, forward)

    def _concentration_derivatives(self, c: np.ndarray, t: float, pair) -> tuple[np.ndarray, np.ndarray]:
        h = self.h
        c_x = np.gradient(c, h, edge_order=2)
        c_xx = np.zeros_like(c)
        c_xx[1:-1] = (c[2:] - 2.0 * c[1:-1] + c[:-2]) / (h * h)
        left, right = pair
        if left.kind == BoundaryKind.NEUMANN:
            g = left.at(t)
            c_x[0] = g
            c_xx[0] = (2.0 * c[1] - 2.0 * c[0] - 2.0 * h * g) / (h * h)
        if right.kind == BoundaryKind.NEUMANN:
            g = right.at(t)
            c_x[-1] = g
            c_xx[-1] = (2.0 * c[-2] - 2.0 * c[-1] + 2.0 * h * g) / (h * h)
        return c_x, c_xx

    def rhs(self, t: float, state: np.ndarray) -> np.ndarray:
        mp, h = self.mp, self.h
        state = self.impose(t, state.copy())
        u, w, rho, theta = state[U], state[W], state[RHO], state[THETA]
        w_x = np.gradient(w, h, edge_order=2)
        u_xx = np.zeros_like(u)
        u_xx[1:-1] = (u[2:] - 2.0 * u[1:-1] + u[:-2]) / (h * h)

        rho_t = -self._upwind(rho, w) * w + 2.0 * (mp.rhoF0 - rho) * w_x
        theta_t = -self._upwind(theta, w) * w + 2.0 * (1.0 - theta) * w_x
        theta_x = np.gradient(theta, h, edge_order=2)
        _, p_x, p_xx = self.pressure(t, w, w_x)

        out = np.zeros_like(state)
        concentration_gradients = []
        for row, pair, (D, S) in (
            (C1, self.bc.c1, mp.transport(1)),
            (C2, self.bc.c2, mp.transport(2)),
        ):
            c = state[row]
            c_x, c_xx = self._concentration_derivatives(c, t, pair)
            concentration_gradients.append(c_x)
            out[row] = (
                D * c_xx
                + mp.k * S * (c_x * p_x + c * p_xx)
                - c * theta_t
                - w * (theta_x * c + theta * c_x)
                - 2.0 * theta * c * w_x
            ) / theta
            for end, bc in zip((0, -1), pair):
                if bc.kind == BoundaryKind.DIRICHLET:
                    out[row, end] = 0.0

        out[U] = w
        out[W] = (
            mp.lambda_star * u_xx
            - p_x
            + mp.osmotic1 * concentration_gradients[0]
            + mp.osmotic2 * concentration_gradients[1]
            - rho_t * w
            - rho * w * w_x
        ) / rho
        out[W, 0] = out[W, -1] = 0.0
        out[RHO] = rho_t
        out[THETA] = theta_t
        return out


def _initial_state(initial: FieldSolution, grid: Grid) -> np.ndarray:
    t = np.full(grid.nx, grid.t_lo)
    values = initial.as_effective().values(t, grid.x)
    if initial.analytic:
        w = initial.jet(t, grid.x).u_t
    else:
        logger.info("initial state has no u_t; starting from rest")
        w = np.zeros(grid.nx)
    state = np.array([values["u"], w, values["rho"], values["theta_F"], values["c1"], values["c2"]], dtype=float)
    return state


def _interpolating_jet(times: np.ndarray, x: np.ndarray, snapshots: dict[str, np.ndarray]):
    """저장된 격자값의 쌍선형 보간 (격자 노드에서는 저장값 그대로)"""

    def jet_fn(t: np.ndarray, xs: np.ndarray):
        i = np.clip(np.searchsorted(times, t, side="right") - 1, 0, len(times) - 2)
        j = np.clip(np.searchsorted(x, xs, side="right") - 1, 0, len(x) - 2)
        a = (t - times[i]) / (times[i + 1] - times[i])
        b = (xs - x[j]) / (x[j + 1] - x[j])

        def blend(f):
            return (
                (1 - a) * (1 - b) * f[i, j]
                + (1 - a) * b * f[i, j + 1]
                + a * (1 - b) * f[i + 1, j]
                + a * b * f[i + 1, j + 1]
            )

        values = {name: blend(f) for name, f in snapshots.items()}
        return strip_derivatives(make_jet(PressureKind.EFFECTIVE, np.shape(xs), **values))

    return jet_fn


def solve_ibvp(
    mp: ModelParams, initial: FieldSolution, bc: BoundaryConditions, grid: Grid
) -> FieldSolution:
    """초기·경계값 문제를 풉니다.

    Args:
        mp: 모델 파라미터 (κ = 0)
        initial: t = grid.t_lo 에서의 초기 상태 (해석적이면 u_t 도 쓴다)
        bc: 경계 조건
        grid: 격자 (Δt = grid.dt 고정)

    Returns:
        격자값을 보간하는 이산 FieldSolution (analytic=False)

    Raises:
        ConfigurationError: κ ≠ 0, 경계 조건 조합 오류, ρ·θ_F ≤ 0, 또는 Δt 가 안정성 상한 초과
        DivergenceError: 스텝 중 NaN/Inf 발생 (스텝 번호 포함)
    """
    if not mp.linear_stress():
        raise ConfigurationError(f"time stepping supports kappa = 0 only, got {mp.kappa}")
    bc.validate()
    h, dt = grid.h, grid.dt
    state = _initial_state(initial, grid)
    rho_min, theta_min = float(state[RHO].min()), float(state[THETA].min())
    if rho_min <= 0 or theta_min <= 0:
        raise ConfigurationError(f"initial rho and theta_F must be positive (min rho={rho_min}, theta_F={theta_min})")
    limit = stability_limit(mp, h, rho_min)
    if dt > limit:
        raise ConfigurationError(
            f"time step {dt:.3e} exceeds the stability bound {limit:.3e} (h={h:.3e}); raise nt"
        )
    if not mp.restricted():
        logger.info("solver keeps the osmotic momentum terms (parameters are not γ-restricted)")

    op = _Operator(mp, bc, grid.x, h)
    times = grid.t
    state = op.impose(times[0], state)
    names = ("u", "rho", "theta_F", "c1", "c2", "pressure")
    snapshots = {name: np.empty((grid.nt + 1, grid.nx)) for name in names}

    def record(n: int, t: float, y: np.ndarray) -> None:
        w_x = np.gradient(y[W], h, edge_order=2)
        p, _, _ = op.pressure(t, y[W], w_x)
        for name, row in zip(names, (y[U], y[RHO], y[THETA], y[C1], y[C2], p)):
            snapshots[name][n] = row

    record(0, times[0], state)
    for n in range(grid.nt):
        t = times[n]
        k1 = op.rhs(t, state)
        k2 = op.rhs(t + 0.5 * dt, state + 0.5 * dt * k1)
        k3 = op.rhs(t + 0.5 * dt, state + 0.5 * dt * k2)
        k4 = op.rhs(t + dt, state + dt * k3)
        state = op.impose(times[n + 1], state + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4))
        if not np.all(np.isfinite(state)):
            raise DivergenceError(f"non-finite state after step {n + 1} (t={times[n + 1]:.6g})", step=n + 1)
        record(n + 1, times[n + 1], state)

    logger.info("ibvp: %d steps of %.3e on %d nodes", grid.nt, dt, grid.nx)
    return FieldSolution(
        label=f"ibvp[nx={grid.nx},nt={grid.nt}]",
        params=mp,
        jet_fn=_interpolating_jet(times, grid.x, snapshots),
        domain=Domain(grid.x_lo, grid.x_hi, grid.t_lo, grid.t_hi),
        analytic=False,
        notes=("bilinear interpolation between stored nodes",),
    )
