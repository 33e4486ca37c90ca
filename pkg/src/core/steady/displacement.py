"""
정상 변위 U(x): λ*U′ + κ(U′)² = G(x)

- displacement_linear: κ 를 무시한 닫힌형
- displacement_quadrature: 물리적 (+) 분기 U′ = (λ*/2κ)(√(1 + 4κG/λ*²) − 1) 의 적응 구적
- displacement_taylor: √(1+z) 전개를 κ 에 대해 자른 근사
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from src.config import DEFAULT_TOL
from src.core.exceptions import BranchError, BracketError, DomainError, InversionError, UsageError
from src.core.model import ModelParams
from src.core.model.enums import Variant
from src.core.specfun import integrate_adaptive, root_bracketed
from src.core.steady.enums import ProfileBranch
from src.core.steady.profiles import SteadyParams, SteadyProfiles, steady_profiles

logger = logging.getLogger(__name__)

_SERIES_Z = 1e-6
_RADICAND_GRID = 1025
_TAYLOR_WARN_Z = 0.5
_MONOTONE_GRID = 257


def _as_output(values: np.ndarray, x):
    return values.reshape(np.shape(x)) if np.ndim(x) else float(values.reshape(-1)[0])


def _cumulative(f: Callable[[np.ndarray], np.ndarray], x0: float, x, tol: float) -> np.ndarray:
    """∫ₓ₀ˣ f 를 x 의 모든 원소에 대해 계산 (정렬된 점 사이 구간을 이어 붙인다)"""
    flat = np.asarray(x, dtype=float).reshape(-1)
    unique, inverse = np.unique(flat, return_inverse=True)
    result = np.empty_like(unique)
    upper = unique >= x0
    for mask, order in ((upper, slice(None)), (~upper, slice(None, None, -1))):
        points = unique[mask][order]
        total, start = 0.0, x0
        values = np.empty_like(points)
        for i, point in enumerate(points):
            total += integrate_adaptive(f, start, point, tol=tol)
            values[i] = total
            start = point
        result[mask] = values[order]
    return result[inverse]


def _slope_integrand(params: ModelParams, profiles: SteadyProfiles) -> Callable[[np.ndarray], np.ndarray]:
    """U′(ξ) (물리적 분기). |z| < 1e-6 에서는 3차 급수를 쓴다."""
    lam, kappa = params.lambda_star, params.kappa

    def slope(xi):
        g = profiles.G(xi)
        if kappa == 0.0:
            return g / lam
        z = 4.0 * kappa * g / lam**2
        series = g / lam - kappa * g**2 / lam**3 + 2.0 * kappa**2 * g**3 / lam**5
        root = np.sqrt(np.maximum(1.0 + z, 0.0))
        exact = 2.0 * g / (lam * (root + 1.0))
        return np.where(np.abs(z) < _SERIES_Z, series, exact)

    return slope


def displacement_slope(params: ModelParams, sp: SteadyParams, x, order: int = 1):
    """U′ (order=1) 또는 U″ = G′/(λ* + 2κU′) (order=2)

    Raises:
        DomainError: 평가점에서 1 + 4κG/λ*² < 0 (처음 해당하는 점 포함)
    """
    profiles = steady_profiles(params, sp)
    if params.kappa != 0.0:
        points = np.asarray(x, dtype=float).reshape(-1)
        radicand = 1.0 + 4.0 * params.kappa * profiles.G(points) / params.lambda_star**2
        bad = np.flatnonzero(radicand < 0)
        if bad.size:
            location = float(points[bad[0]])
            raise DomainError(
                f"1 + 4κG/λ*² = {radicand[bad[0]]:.6g} < 0 at ξ={location:.6g} (κ={params.kappa:g}); no real slope",
                location=location,
            )
    slope = _slope_integrand(params, profiles)(np.asarray(x, dtype=float))
    if order == 1:
        return slope if np.ndim(slope) else float(slope)
    curvature = profiles.G(x, 1) / (params.lambda_star + 2.0 * params.kappa * slope)
    return curvature if np.ndim(curvature) else float(curvature)


def displacement_linear(params: ModelParams, sp: SteadyParams) -> Callable:
    """κ 를 무시한 변위의 닫힌형 평가기

    U = U₀ + (U₁/λ*)x + U₂x² + U₃e^{−a₁x} + U₄e^{−a₂x},
    U₂ = P₁/(2λ*), Uᵢ₊₂ = (osmoticᵢ)AᵢDᵢ/(λ*kSᵢP₁)

    A₀ᵢ 상수는 U₁ 에 흡수된 것으로 본다 (G 에 남아 있으면 quadrature 경로와 일차항이 다르다).

    Raises:
        BranchError: 지수항 계수가 있는데 kSᵢP₁ = 0
    """
    lam = params.lambda_star
    profiles = steady_profiles(params, sp)
    U2 = sp.P1 / (2.0 * lam)
    terms = []
    for solute, osmotic, profile in ((1, params.osmotic1, profiles.c1), (2, params.osmotic2, profiles.c2)):
        if osmotic == 0.0 or profile.A == 0.0:
            continue
        if profile.branch != ProfileBranch.EXPONENTIAL:
            raise BranchError(
                f"closed-form linear displacement needs the exponential profile for solute {solute}"
            )
        D, S = params.transport(solute)
        terms.append((osmotic * profile.A * D / (lam * params.k * S * sp.P1), profile.rate))
    if params.kappa != 0.0:
        logger.info("displacement_linear ignores kappa=%g", params.kappa)

    def U(x):
        x = np.asarray(x, dtype=float)
        value = sp.U0 + sp.U1 / lam * x + U2 * x**2
        for coefficient, rate in terms:
            value = value + coefficient * np.exp(-rate * x)
        return value if np.ndim(value) else float(value)

    return U


def _check_radicand(params: ModelParams, profiles: SteadyProfiles, a: float, b: float) -> None:
    lam, kappa = params.lambda_star, params.kappa

    def radicand(xi):
        return 1.0 + 4.0 * kappa * profiles.G(xi) / lam**2

    grid = np.linspace(a, b, _RADICAND_GRID)
    values = radicand(grid)
    bad = np.flatnonzero(values < 0)
    if bad.size == 0:
        return
    first = int(bad[0])
    location = float(grid[0])
    if first > 0:
        location = root_bracketed(radicand, float(grid[first - 1]), float(grid[first]))
    raise DomainError(
        f"1 + 4κG/λ*² < 0 starting at ξ={location:.6g} (κ={kappa:g}); no real displacement",
        location=location,
    )


def displacement_quadrature(params: ModelParams, sp: SteadyParams, x, tol: float = DEFAULT_TOL):
    """비선형 변위의 정확해 U(x) = U₀ + ∫ₓ₀ˣ U′(ξ)dξ

    Args:
        params: 모델 파라미터 (κ = 0 이면 U₀ + ∫G/λ*)
        sp: 정상 상태 적분상수 (적분 하한 x0)
        x: 평가점 (스칼라 또는 배열)
        tol: 구간별 구적 허용오차

    Returns:
        U(x)

    Raises:
        DomainError: [x0, x] 안에서 1 + 4κG/λ*² < 0 (처음 음수가 되는 ξ 포함)
    """
    profiles = steady_profiles(params, sp)
    flat = np.asarray(x, dtype=float).reshape(-1)
    if params.kappa != 0.0:
        for end in (float(flat.min()), float(flat.max())):
            if end != sp.x0:
                _check_radicand(params, profiles, sp.x0, end)
    values = sp.U0 + _cumulative(_slope_integrand(params, profiles), sp.x0, flat, tol)
    return _as_output(values, x)


def _taylor_coefficient(n: int, kappa: float, lam: float) -> float:
    """binom(1/2, n)·4ⁿ·κⁿ⁻¹ / (2λ*²ⁿ⁻¹)"""
    return math.prod(0.5 - j for j in range(n)) / math.factorial(n) * 4.0**n * kappa ** (n - 1) / (
        2.0 * lam ** (2 * n - 1)
    )


def displacement_taylor(
    params: ModelParams,
    sp: SteadyParams,
    x,
    variant: Variant = Variant.CORRECTED,
    order: int = 2,
    tol: float = DEFAULT_TOL,
):
    """κ 에 대해 전개한 근사 변위

    corrected: U₀ + (1/λ*)∫G − (κ/λ*³)∫G² + (2κ²/λ*⁵)∫G³ − … (order 항까지)
    as_printed: U₀ + (1/λ*)∫G + (κ/λ*³)∫G² (order = 2 만)

    Raises:
        UsageError: as_printed 에서 order ≠ 2, 또는 order < 1
    """
    if order < 1:
        raise UsageError(f"Taylor order must be >= 1, got {order}")
    if variant == Variant.AS_PRINTED and order != 2:
        raise UsageError("the as-printed Taylor form exists only at order 2")
    profiles = steady_profiles(params, sp)
    lam, kappa = params.lambda_star, params.kappa
    flat = np.asarray(x, dtype=float).reshape(-1)

    grid = np.linspace(min(sp.x0, flat.min()), max(sp.x0, flat.max()), _RADICAND_GRID)
    z_max = float(np.max(np.abs(4.0 * kappa * profiles.G(grid) / lam**2)))
    if z_max > _TAYLOR_WARN_Z:
        logger.warning("Taylor displacement: |4κG/λ*²| reaches %.3g (> %.1f), expansion unreliable", z_max, _TAYLOR_WARN_Z)

    values = np.full(flat.shape, sp.U0)
    for n in range(1, order + 1):
        coefficient = _taylor_coefficient(n, kappa, lam)
        if variant == Variant.AS_PRINTED and n == 2:
            coefficient = -coefficient
        if coefficient == 0.0:
            continue
        values = values + coefficient * _cumulative(lambda xi, n=n: profiles.G(xi) ** n, sp.x0, flat, tol)
    return _as_output(values, x)


def present_position(
    U: Callable,
    X: float,
    bracket: tuple[float, float] | None = None,
    tol: float = 1e-12,
) -> float:
    """x − U(x) = X 를 풀어 현재 위치 x 를 구합니다.

    Args:
        U: 변위 평가기 (배열 입력 지원)
        X: 초기 위치
        bracket: 탐색 구간, 기본값 (X − 1, X + 1)
        tol: 근 허용오차

    Returns:
        현재 위치 x

    Raises:
        InversionError: 구간에서 x − U(x) 가 단조증가가 아니거나 부호 변화가 없음
    """
    lo, hi = bracket if bracket is not None else (X - 1.0, X + 1.0)
    grid = np.linspace(lo, hi, _MONOTONE_GRID)
    mapped = grid - np.asarray(U(grid), dtype=float)
    if not np.all(np.diff(mapped) > 0):
        bad = int(np.flatnonzero(np.diff(mapped) <= 0)[0])
        raise InversionError(f"x - U(x) is not increasing near x={grid[bad]:.6g}; position is not unique")
    try:
        return root_bracketed(lambda x: x - float(U(x)) - X, lo, hi, tol=tol)
    except BracketError as exc:
        raise InversionError(f"X={X} is not reached on [{lo}, {hi}]: {exc}") from exc


@dataclass(frozen=True)
class TaylorOrderStudy:
    """κ 목록에 대한 Taylor 오차와 log–log 기울기"""

    x: float
    kappas: tuple[float, ...]
    exact: tuple[float, ...]
    error_corrected: tuple[float, ...]
    error_as_printed: tuple[float, ...]
    slope_corrected: float
    slope_as_printed: float

    @property
    def ratios_corrected(self) -> tuple[float, ...]:
        e = self.error_corrected
        return tuple(e[i + 1] / e[i] for i in range(len(e) - 1))


def taylor_order_study(
    params: ModelParams,
    sp: SteadyParams,
    kappas: tuple[float, ...] = (100.0, 50.0, 25.0),
    x: float = 0.5,
) -> TaylorOrderStudy:
    """|U_quadrature − U_taylor| 의 κ 에 대한 차수를 두 variant 에 대해 측정합니다."""
    exact, corrected, printed = [], [], []
    for kappa in kappas:
        mp = params.model_copy(update={"kappa": kappa})
        u = displacement_quadrature(mp, sp, x)
        exact.append(u)
        corrected.append(abs(u - displacement_taylor(mp, sp, x, Variant.CORRECTED)))
        printed.append(abs(u - displacement_taylor(mp, sp, x, Variant.AS_PRINTED)))
    log_k = np.log(np.abs(kappas))
    slope_c = float(np.polyfit(log_k, np.log(corrected), 1)[0])
    slope_p = float(np.polyfit(log_k, np.log(printed), 1)[0])
    logger.info("Taylor order at x=%g: corrected %.3f, as_printed %.3f", x, slope_c, slope_p)
    return TaylorOrderStudy(
        x=x,
        kappas=tuple(kappas),
        exact=tuple(exact),
        error_corrected=tuple(corrected),
        error_as_printed=tuple(printed),
        slope_corrected=slope_c,
        slope_as_printed=slope_p,
    )
