"""
실수 차수 Bessel 함수 J, Y, I, K

지원 범위 (envelope): 0 ≤ ν ≤ 10, 0 ≤ x ≤ 50.

- J: x ≤ 12 에서는 상승급수 (math.fsum 으로 누적), 그 위에서는 Schläfli 적분
- I: 상승급수 (모든 항이 양수라 상쇄가 없다)
- Y, K: 적분 표현. 연결공식을 쓰지 않으므로 정수 차수 근처에서 1/sin(νπ) 발산이 없다.
- 미분은 점화식 (J′ = (ν/x)J − J_{ν+1} 등) 으로 계산한다.

정확도: |f| ≤ 1 이면 절대오차 1e-10, 그보다 크면 상대오차 1e-10.
"""

import math
from dataclasses import dataclass

import numpy as np

from src.core.exceptions import RangeError, SingularityError
from src.core.specfun.enums import BesselTag
from src.core.specfun.quadrature import integrate_adaptive

NU_MAX = 10.0
X_MAX = 50.0

_SERIES_X_MAX = 12.0
_QUAD_TOL = 1e-13
_QUAD_RTOL = 1e-13
_QUAD_BUDGET = 4000
_TAIL_DROP = 40.0  # e^-40 relative to the integrand peak


@dataclass(frozen=True)
class BesselKind:
    """Bessel 함수 종류와 차수 ν"""

    tag: BesselTag
    nu: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.nu) or self.nu < 0:
            raise RangeError(f"Bessel order must be finite and >= 0, got {self.nu}")


def _quad(f, a: float, b: float) -> float:
    return integrate_adaptive(
        f, a, b, tol=_QUAD_TOL, rtol=_QUAD_RTOL, max_subdivisions=_QUAD_BUDGET
    )


def _tail_end(g, t_peak: float) -> float:
    """g(T) ≤ g(t_peak) - 40 이 되는 적분 상한 T (g 는 t_peak 이후 감소)"""
    floor = g(t_peak) - _TAIL_DROP
    end = t_peak + 1.0
    while g(end) > floor:
        end *= 2.0
    return end


def _ascending_series(nu: float, x: float, sign: float) -> float:
    """Σ sign^m (x/2)^{2m+ν} / (m! Γ(m+ν+1)); sign=-1 → J, +1 → I"""
    if x == 0.0:
        return 1.0 if nu == 0.0 else 0.0
    half = 0.5 * x
    term = math.exp(nu * math.log(half) - math.lgamma(nu + 1.0))
    ratio = sign * half * half
    terms = [term]
    largest = abs(term)
    m = 0
    while True:
        m += 1
        term *= ratio / (m * (m + nu))
        terms.append(term)
        largest = max(largest, abs(term))
        if m > half and abs(term) <= 1e-17 * largest:
            break
    return math.fsum(terms)


def _is_integer(nu: float) -> bool:
    return nu == math.floor(nu)


def _j_integral(nu: float, x: float) -> float:
    """Schläfli: J = (1/π)∫₀^π cos(νθ − x sinθ) − (sin νπ/π)∫₀^∞ e^{−x sinh t − νt}"""
    value = _quad(lambda th: np.cos(nu * th - x * np.sin(th)), 0.0, math.pi) / math.pi
    if not _is_integer(nu):
        g = lambda t: -x * np.sinh(t) - nu * t  # noqa: E731
        end = _tail_end(g, 0.0)
        value -= math.sin(nu * math.pi) / math.pi * _quad(lambda t: np.exp(g(t)), 0.0, end)
    return value


def _y_integral(nu: float, x: float) -> float:
    """Y = (1/π)∫₀^π sin(x sinθ − νθ) − (1/π)∫₀^∞ (e^{νt} + e^{−νt} cos νπ) e^{−x sinh t}"""
    first = _quad(lambda th: np.sin(x * np.sin(th) - nu * th), 0.0, math.pi)
    g = lambda t: nu * t - x * np.sinh(t)  # noqa: E731
    t_peak = math.acosh(nu / x) if nu > x else 0.0
    shift = max(float(g(t_peak)), 0.0)
    end = _tail_end(g, t_peak)
    cos_nu_pi = math.cos(nu * math.pi)

    def integrand(t):
        decay = x * np.sinh(t) + shift
        return np.exp(nu * t - decay) + cos_nu_pi * np.exp(-nu * t - decay)

    second = math.exp(shift) * _quad(integrand, 0.0, end)
    return (first - second) / math.pi


def _k_integral(nu: float, x: float) -> float:
    """K = ∫₀^∞ e^{−x cosh t} cosh(νt), e^{x} 로 스케일링해서 적분"""
    g = lambda t: nu * t - x * (np.cosh(t) - 1.0)  # noqa: E731
    t_peak = math.asinh(nu / x)
    shift = max(float(g(t_peak)), 0.0)
    end = _tail_end(g, t_peak)

    def integrand(t):
        decay = x * (np.cosh(t) - 1.0) + shift
        return 0.5 * (np.exp(nu * t - decay) + np.exp(-nu * t - decay))

    return math.exp(shift - x) * _quad(integrand, 0.0, end)


def _evaluate(tag: BesselTag, nu: float, x: float) -> float:
    match tag:
        case BesselTag.J:
            if x <= _SERIES_X_MAX:
                return _ascending_series(nu, x, -1.0)
            return _j_integral(nu, x)
        case BesselTag.I:
            return _ascending_series(nu, x, 1.0)
        case BesselTag.Y:
            return _y_integral(nu, x)
        case BesselTag.K:
            return _k_integral(nu, x)
    raise RangeError(f"unknown Bessel kind {tag!r}")


def _check_envelope(kind: BesselKind, x: float) -> None:
    if kind.nu > NU_MAX:
        raise RangeError(f"order ν={kind.nu} outside supported range [0, {NU_MAX:g}]")
    if not math.isfinite(x) or x < 0 or x > X_MAX:
        raise RangeError(f"argument x={x} outside supported range [0, {X_MAX:g}]")
    if x == 0.0 and kind.tag in (BesselTag.Y, BesselTag.K):
        raise SingularityError(f"{kind.tag.value}_ν is singular at x = 0", location=0.0)


def bessel(kind: BesselKind, x: float) -> float:
    """Bessel 함수값

    Args:
        kind: 종류와 차수
        x: 인자 (Y, K 는 x > 0)

    Returns:
        함수값

    Raises:
        RangeError: 지원 범위 밖
        SingularityError: Y, K 에서 x = 0
    """
    x = float(x)
    _check_envelope(kind, x)
    return _evaluate(kind.tag, kind.nu, x)


def bessel_derivative(kind: BesselKind, x: float) -> float:
    """d/dx 값. x = 0 에서는 J, I 의 ν ∈ {0} ∪ [1, ∞) 만 정의된다."""
    x = float(x)
    _check_envelope(kind, x)
    nu, tag = kind.nu, kind.tag
    if x == 0.0:
        if nu == 0.0 or nu > 1.0:
            return 0.0
        if nu == 1.0:
            return 0.5
        raise SingularityError(f"derivative of {tag.value}_{nu:g} is unbounded at x = 0", location=0.0)

    value = _evaluate(tag, nu, x)
    upper = _evaluate(tag, nu + 1.0, x)
    match tag:
        case BesselTag.J | BesselTag.Y:
            return nu / x * value - upper
        case BesselTag.I:
            return upper + nu / x * value
        case _:
            return nu / x * value - upper


def bessel_array(kind: BesselKind, x: np.ndarray, derivative: bool = False) -> np.ndarray:
    """배열 인자 평가. 중복 인자는 한 번만 계산한다."""
    x = np.asarray(x, dtype=float)
    unique, inverse = np.unique(x, return_inverse=True)
    func = bessel_derivative if derivative else bessel
    values = np.array([func(kind, xi) for xi in unique])
    return values[inverse].reshape(x.shape)
