"""
구간 근 찾기 (Brent 방법: 이분법 + 할선법 + 역 2차 보간)
"""

from typing import Callable

from src.core.exceptions import AccuracyError, BracketError

_EPS = 2.220446049250313e-16


def root_bracketed(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-12,
    maxiter: int = 200,
) -> float:
    """[lo, hi] 안에서 f 의 근을 찾습니다.

    Args:
        f: 연속 함수
        lo: 구간 하한
        hi: 구간 상한
        tol: |f| ≤ tol 또는 구간폭 ≤ tol 이면 종료
        maxiter: 최대 반복 횟수

    Returns:
        근

    Raises:
        BracketError: f(lo)·f(hi) > 0
        AccuracyError: maxiter 안에 수렴하지 못함
    """
    a, b = float(lo), float(hi)
    fa, fb = f(a), f(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if fa * fb > 0:
        raise BracketError(
            f"no sign change on [{lo}, {hi}]: f(lo)={fa:.6g}, f(hi)={fb:.6g}"
        )

    c, fc = a, fa
    d = e = b - a
    for _ in range(maxiter):
        if fb * fc > 0:
            c, fc = a, fa
            d = e = b - a
        # b is always the best estimate, [b, c] the bracket
        if abs(fc) < abs(fb):
            a, b, c = b, c, b
            fa, fb, fc = fb, fc, fb

        step_tol = 2.0 * _EPS * abs(b) + 0.5 * tol
        m = 0.5 * (c - b)
        if abs(fb) <= tol or abs(m) <= step_tol:
            return b

        if abs(e) >= step_tol and abs(fa) > abs(fb):
            s = fb / fa
            if a == c:
                p = 2.0 * m * s
                q = 1.0 - s
            else:
                q = fa / fc
                r = fb / fc
                p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0))
                q = (q - 1.0) * (r - 1.0) * (s - 1.0)
            if p > 0:
                q = -q
            else:
                p = -p
            if 2.0 * p < min(3.0 * m * q - abs(step_tol * q), abs(e * q)):
                e, d = d, p / q
            else:
                d = e = m
        else:
            d = e = m

        a, fa = b, fb
        if abs(d) > step_tol:
            b += d
        else:
            b += step_tol if m > 0 else -step_tol
        fb = f(b)

    raise AccuracyError(f"root search on [{lo}, {hi}] did not converge in {maxiter} iterations")
