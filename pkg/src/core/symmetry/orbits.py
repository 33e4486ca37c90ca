"""
궤도 잔차 검사

생성자가 해를 해로 보내는지 잔차로 확인한다. 변환된 해는 원래 격자를 (ε_t, ε_x) 만큼 옮긴
격자에서 평가하므로, X1·X2 에 대해서도 같은 물리적 점끼리 비교된다.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from src.core.families import Family68Params, SmoothFunction, family68_build
from src.core.families.solution import FieldSolution
from src.core.model import ModelParams, residual_starred
from src.core.solver import DerivativeSource, Grid, ResidualReport, fd_jet, residual_scan
from src.core.steady import SteadyParams, steady_solution
from src.core.symmetry.enums import GeneratorTag
from src.core.symmetry.generators import SymmetryGenerator, apply_generator, applicable_generators

logger = logging.getLogger(__name__)

_ABSOLUTE_SLACK = 1e-9


@dataclass(frozen=True)
class OrbitResult:
    """원래 해와 변환된 해의 잔차 비교 (delta 는 방정식별 max |r′ − r|)"""

    tag: GeneratorTag
    epsilon: float
    passed: bool
    original_max: float
    transformed_max: float
    delta: tuple[float, ...]
    report: ResidualReport

    @property
    def max_delta(self) -> float:
        return max(self.delta)


def _image_grid(grid: Grid, gen: SymmetryGenerator) -> Grid:
    shift_t = gen.epsilon if gen.tag == GeneratorTag.X1 else 0.0
    shift_x = gen.epsilon if gen.tag == GeneratorTag.X2 else 0.0
    return grid.model_copy(
        update={
            "t_lo": grid.t_lo + shift_t,
            "t_hi": grid.t_hi + shift_t,
            "x_lo": grid.x_lo + shift_x,
            "x_hi": grid.x_hi + shift_x,
        }
    )


def _residual_stack(sol: FieldSolution, grid: Grid, mp: ModelParams, source: DerivativeSource) -> np.ndarray:
    T, X = grid.mesh()
    effective = sol.as_effective()
    jet = effective.jet(T, X) if source == DerivativeSource.ANALYTIC else fd_jet(effective, T, X, grid.h)
    return np.array([np.broadcast_to(np.asarray(r, dtype=float), T.shape) for r in residual_starred(jet, mp).as_tuple()])


def orbit_residual_test(
    sol: FieldSolution, gen: SymmetryGenerator, grid: Grid, mp: ModelParams
) -> OrbitResult:
    """변환된 해의 잔차가 원래 해 잔차의 2배 + 1e−9 이하인지 검사합니다.

    생성자의 허용 여부는 따지지 않는다 (허용되지 않는 생성자는 실패로 드러나야 한다).

    Args:
        sol: 원래 해 (p 를 들고 있으면 p* 보기로 바꿔 검사한다)
        gen: 생성자와 ε
        grid: 원래 해의 평가 격자
        mp: 잔차에 쓸 모델 파라미터

    Returns:
        OrbitResult
    """
    base = sol.as_effective()
    source = DerivativeSource.ANALYTIC if sol.analytic else DerivativeSource.FD
    image = apply_generator(base, gen, override=True)
    image_grid = _image_grid(grid, gen)

    before = _residual_stack(base, grid, mp, source)
    after = _residual_stack(image, image_grid, mp, source)
    original_max = float(np.nanmax(np.abs(before)))
    transformed_max = float(np.nanmax(np.abs(after)))
    delta = tuple(float(np.nanmax(np.abs(a - b))) for a, b in zip(after, before))
    passed = transformed_max <= 2.0 * original_max + _ABSOLUTE_SLACK
    report = residual_scan(image, image_grid, mp, source)
    logger.debug(
        "orbit %s(%g) on %s: %.3e -> %.3e (%s)",
        gen.tag.value, gen.epsilon, sol.label, original_max, transformed_max, "pass" if passed else "fail",
    )
    return OrbitResult(gen.tag, gen.epsilon, passed, original_max, transformed_max, delta, report)


@dataclass(frozen=True)
class OrbitCase:
    """궤도 행렬의 한 칸: 분류표 행, 생성자, 기대 결과와 (음성 검사의) 예측 delta"""

    row: int
    result: OrbitResult
    expected_pass: bool
    predicted_delta: float | None = None

    @property
    def agrees(self) -> bool:
        return self.result.passed == self.expected_pass

    def as_row(self) -> dict[str, object]:
        return {
            "row": self.row,
            "generator": self.result.tag.value,
            "epsilon": self.result.epsilon,
            "expected": "pass" if self.expected_pass else "fail",
            "observed": "pass" if self.result.passed else "fail",
            "original_max": self.result.original_max,
            "transformed_max": self.result.transformed_max,
            "max_delta": self.result.max_delta,
            "predicted_delta": self.predicted_delta if self.predicted_delta is not None else float("nan"),
        }


# (κ, γ₀+γ₁ = σ₁, γ₂ = ασ₂) per classification row
_ROW_SETTINGS = {
    1: (0.5, True, False),
    2: (0.5, False, True),
    3: (0.5, True, True),
    4: (0.0, True, False),
    5: (0.0, False, True),
    6: (0.0, True, True),
}


def row_params(row: int) -> ModelParams:
    """분류표 행의 제약을 만족하는 무차원 파라미터 (σ₁ = σ₂ = 0.5, α = 0.4)"""
    kappa, c1, c2 = _ROW_SETTINGS[row]
    return ModelParams(
        k=1.0,
        lambda_star=1.0,
        kappa=kappa,
        alpha=0.4,
        RT=1.0,
        sigma1=0.5,
        sigma2=0.5,
        S1=0.5,
        S2=0.5,
        D1=1.0,
        D2=1.0,
        gamma0=0.5 if c1 else 0.2,
        gamma1=0.0,
        gamma2=0.2 if c2 else 0.0,
        rhoF0=1.0,
    )


ORBIT_STEADY = SteadyParams(P0=0.0, P1=0.2, A01=1.0, A1=0.5, A02=1.0, A2=0.5, U0=0.0, U1=0.1)
ORBIT_FAMILY68 = Family68Params(
    u1=0.1, u2=0.05, w1=1.0, w2=0.5, thetaF0=1.0, f=SmoothFunction.sine(0.1)
)


def row_solution(row: int, mp: ModelParams | None = None) -> FieldSolution:
    """행 6 은 family68, 나머지 행은 (임의 κ, γ 에서 정확한) 정상 상태 해"""
    mp = mp or row_params(row)
    if row == 6:
        return family68_build(mp, ORBIT_FAMILY68)
    return steady_solution(mp, ORBIT_STEADY)


def orbit_matrix(epsilon: float = 0.1, grid: Grid | None = None) -> list[OrbitCase]:
    """분류표 1–6 행 전체에 대한 궤도 검사와 두 음성 검사

    음성 검사: κ ≠ 0 (행 3) 에서 X7 은 r₆ 를 2κεu_xx 만큼, γ₀+γ₁ ≠ σ₁ (행 5) 에서 X5 는
    (γ₀+γ₁−σ₁)RT(e^ε−1)c₁_x 만큼 바꾼다.

    Args:
        epsilon: 흐름 파라미터 (X4 는 g(t) = sin t)
        grid: 평가 격자 (기본 [0, 1]² 의 21×21)

    Returns:
        OrbitCase 목록 (행, 생성자 순)
    """
    grid = grid or Grid(x_lo=0.0, x_hi=1.0, nx=21, t_lo=0.0, t_hi=1.0, nt=20)
    g = SmoothFunction.sine(1.0)
    cases = []
    for row in sorted(_ROW_SETTINGS):
        mp = row_params(row)
        sol = row_solution(row, mp)
        for tag in applicable_generators(mp).tags:
            gen = SymmetryGenerator(tag=tag, epsilon=epsilon, g=g if tag == GeneratorTag.X4 else None)
            cases.append(OrbitCase(row, orbit_residual_test(sol, gen, grid, mp), expected_pass=True))

    T, X = grid.mesh()
    for row, tag in ((3, GeneratorTag.X7), (5, GeneratorTag.X5)):
        mp = row_params(row)
        sol = row_solution(row, mp)
        jet = sol.jet(T, X)
        if tag == GeneratorTag.X7:
            predicted = float(np.max(np.abs(2.0 * mp.kappa * epsilon * jet.u_xx)))
        else:
            predicted = float(np.max(np.abs(mp.osmotic1 * math.expm1(epsilon) * jet.c1_x)))
        gen = SymmetryGenerator(tag=tag, epsilon=epsilon)
        cases.append(OrbitCase(row, orbit_residual_test(sol, gen, grid, mp), False, predicted))

    failures = [case for case in cases if not case.agrees]
    if failures:
        logger.warning("orbit matrix: %d case(s) disagree with the classification", len(failures))
    logger.info("orbit matrix: %d cases", len(cases))
    return cases
