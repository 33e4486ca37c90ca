"""
적응형 Gauss–Legendre 구적법

구간마다 10점 / 21점 Gauss–Legendre 값을 비교해 오차를 추정하고,
오차가 가장 큰 구간부터 이분한다 (전역 heap).
"""

import heapq
import logging
from typing import Callable

import numpy as np

from src.config import DEFAULT_TOL
from src.core.exceptions import AccuracyError

logger = logging.getLogger(__name__)

_LOW_NODES, _LOW_WEIGHTS = np.polynomial.legendre.leggauss(10)
_HIGH_NODES, _HIGH_WEIGHTS = np.polynomial.legendre.leggauss(21)
_EPS = np.finfo(float).eps


def _evaluate(f: Callable[[np.ndarray], np.ndarray], nodes: np.ndarray) -> np.ndarray:
    values = np.asarray(f(nodes), dtype=float)
    return np.broadcast_to(values, nodes.shape)


def _gauss_pair(
    f: Callable[[np.ndarray], np.ndarray], a: float, b: float
) -> tuple[float, float]:
    """(21점 적분값, |21점 - 10점|)"""
    half = 0.5 * (b - a)
    mid = 0.5 * (b + a)
    high = half * float(np.dot(_HIGH_WEIGHTS, _evaluate(f, mid + half * _HIGH_NODES)))
    low = half * float(np.dot(_LOW_WEIGHTS, _evaluate(f, mid + half * _LOW_NODES)))
    return high, abs(high - low)


def integrate_adaptive(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    tol: float = DEFAULT_TOL,
    rtol: float = 0.0,
    max_subdivisions: int = 200,
) -> float:
    """∫ₐᵇ f(x) dx 를 추정 오차 ≤ max(tol, rtol·|I|) 가 될 때까지 계산합니다.

    Args:
        f: numpy 배열을 받아 같은 shape 의 배열을 돌려주는 피적분함수
        a: 하한
        b: 상한 (a > b 이면 부호가 바뀐다)
        tol: 절대 허용오차
        rtol: 상대 허용오차
        max_subdivisions: 이분 횟수 상한

    Returns:
        적분값

    Raises:
        AccuracyError: 이분 예산을 다 쓰거나 구간이 부동소수점 해상도 아래로 좁아진 경우
    """
    if a == b:
        return 0.0
    if a > b:
        return -integrate_adaptive(f, b, a, tol, rtol, max_subdivisions)

    value, error = _gauss_pair(f, a, b)
    # heap entries: (-error, lo, hi, value)
    heap = [(-error, a, b, value)]
    total, total_error = value, error
    subdivisions = 0

    while total_error > max(tol, rtol * abs(total)):
        if subdivisions >= max_subdivisions:
            raise AccuracyError(
                f"quadrature on [{a}, {b}] did not reach tol={tol:g} within "
                f"{max_subdivisions} subdivisions (error estimate {total_error:.3e})"
            )
        neg_error, lo, hi, value = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        if hi - lo <= 64.0 * _EPS * max(1.0, abs(mid)):
            raise AccuracyError(
                f"quadrature interval around x={mid:g} narrowed below float resolution"
            )
        left, left_error = _gauss_pair(f, lo, mid)
        right, right_error = _gauss_pair(f, mid, hi)
        heapq.heappush(heap, (-left_error, lo, mid, left))
        heapq.heappush(heap, (-right_error, mid, hi, right))
        total += left + right - value
        total_error += left_error + right_error + neg_error
        subdivisions += 1

    # 누적 합의 반올림 오차 제거
    total = float(np.sum([entry[3] for entry in heap]))
    logger.debug("quadrature on [%g, %g]: %d subdivisions", a, b, subdivisions)
    return total
