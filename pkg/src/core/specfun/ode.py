"""
선형 2계 ODE  a(x) f″ + b(x) f′ + c(x) f = 0  의 기본해 (fundamental system)

수치 기본해는 Dormand–Prince 5(4) 적응 적분으로 만들고, 채택된 스텝마다
(f, f′, f″) 를 저장해 5차 Hermite 보간으로 dense output 을 제공한다.
f″ 는 ODE 자체에서 얻으므로 추가 비용이 없다.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Protocol

import numpy as np

from src.config import DEFAULT_TOL, SINGULAR_MARGIN
from src.core.exceptions import AccuracyError, BranchError, DomainError, SingularityError
from src.core.specfun.enums import RootCase
from src.core.specfun.roots import root_bracketed

logger = logging.getLogger(__name__)

Coefficient = Callable[[float], float]


class Mode(Protocol):
    """mode(x, order) → d^order f / dx^order, order ∈ {0, 1, 2}"""

    def __call__(self, x: np.ndarray | float, order: int = 0) -> np.ndarray: ...


@dataclass(frozen=True)
class FundamentalPair:
    """두 독립해와 기준점

    수치 기본해는 anchor 에서 f₁=1, f₁′=0, f₂=0, f₂′=1 로 정규화된다.
    상수계수 닫힌형 기본해는 자연 기저 (e^{rx} 등) 이며 anchor 가 None 이다.
    """

    first: Mode
    second: Mode
    anchor: float | None = None

    def wronskian(self, x: np.ndarray | float) -> np.ndarray:
        return self.first(x) * self.second(x, 1) - self.first(x, 1) * self.second(x)

    def combine(self, A1: float, A2: float) -> Mode:
        """A1 f₁ + A2 f₂"""
        def mode(x, order=0):
            return A1 * self.first(x, order) + A2 * self.second(x, order)

        return mode


@dataclass(frozen=True)
class CharacteristicRoots:
    """D r² + b r + c = 0 의 근. COMPLEX 이면 roots = (α+iβ, α−iβ)"""

    case: RootCase
    roots: tuple[complex, complex]
    discriminant: float


# == Dormand–Prince 5(4) tableau ==
_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_A = [
    [],
    [1 / 5],
    [3 / 40, 9 / 40],
    [44 / 45, -56 / 15, 32 / 9],
    [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729],
    [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656],
    [35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84],
]
_B = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_E = np.array(
    [71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40]
)

# Quintic Hermite basis on s ∈ [0, 1]; columns are coefficients of s^0..s^5.
# rows: value0, slope0, curvature0, value1, slope1, curvature1
_HERMITE = np.array(
    [
        [1, 0, 0, -10, 15, -6],
        [0, 1, 0, -6, 8, -3],
        [0, 0, 0.5, -1.5, 1.5, -0.5],
        [0, 0, 0, 10, -15, 6],
        [0, 0, 0, -4, 7, -3],
        [0, 0, 0, 0.5, -1, 0.5],
    ],
    dtype=float,
)
_HERMITE_D1 = _HERMITE[:, 1:] * np.arange(1, 6)

_MAX_STEPS = 200_000
_SCAN_POINTS = 257


def _minimize_abs(a: Coefficient, lo: float, hi: float) -> tuple[float, float]:
    """[lo, hi] 에서 |a| 의 황금분할 최소 (위치, 값)"""
    ratio = 0.5 * (math.sqrt(5.0) - 1.0)
    x1, x2 = hi - ratio * (hi - lo), lo + ratio * (hi - lo)
    f1, f2 = abs(a(x1)), abs(a(x2))
    while hi - lo > 1e-12 * max(1.0, abs(lo), abs(hi)):
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - ratio * (hi - lo)
            f1 = abs(a(x1))
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + ratio * (hi - lo)
            f2 = abs(a(x2))
    x = 0.5 * (lo + hi)
    return x, abs(a(x))


def _scan_leading(a: Coefficient, lo: float, hi: float) -> None:
    """a(x) 가 [lo, hi] 에서 0 이 되거나 0 에 닿으면 위치와 함께 SingularityError

    부호 변화가 없는 접하는 영점 ((x − c)² 등) 은 |a| 의 표본 국소 최소를 황금분할로
    좁혀 SINGULAR_MARGIN·max|a| 아래로 내려가는지 본다.
    """
    xs = np.linspace(lo, hi, _SCAN_POINTS)
    values = np.array([a(float(x)) for x in xs])
    zeros = np.flatnonzero(values == 0.0)
    if zeros.size:
        location = float(xs[zeros[0]])
        raise SingularityError(f"leading coefficient vanishes at x={location:g}", location)
    flips = np.flatnonzero(np.sign(values[:-1]) != np.sign(values[1:]))
    if flips.size:
        i = int(flips[0])
        location = root_bracketed(a, float(xs[i]), float(xs[i + 1]))
        raise SingularityError(f"leading coefficient vanishes at x={location:g}", location)

    size = np.abs(values)
    floor = SINGULAR_MARGIN * float(size.max())
    small = np.flatnonzero(size < floor)
    if small.size:
        location = float(xs[small[0]])
        raise SingularityError(f"leading coefficient nearly vanishes at x={location:g}", location)
    dips = np.flatnonzero((size[1:-1] < size[:-2]) & (size[1:-1] <= size[2:])) + 1
    for i in dips:
        location, value = _minimize_abs(a, float(xs[i - 1]), float(xs[i + 1]))
        if value < floor:
            raise SingularityError(f"leading coefficient touches zero at x={location:g}", location)


class _DenseSolution:
    """채택 스텝 노드 위의 (f, f′, f″) 와 5차 Hermite 보간"""

    def __init__(self, nodes, values, slopes, curvatures, a, b, c):
        self.nodes = nodes
        self.values = values
        self.slopes = slopes
        self.curvatures = curvatures
        self._a, self._b, self._c = a, b, c

    def _interpolate(self, x: np.ndarray, order: int) -> np.ndarray:
        nodes = self.nodes
        idx = np.clip(np.searchsorted(nodes, x, side="right") - 1, 0, len(nodes) - 2)
        x0, x1 = nodes[idx], nodes[idx + 1]
        h = x1 - x0
        s = (x - x0) / h
        data = np.stack(
            [
                self.values[idx],
                h * self.slopes[idx],
                h * h * self.curvatures[idx],
                self.values[idx + 1],
                h * self.slopes[idx + 1],
                h * h * self.curvatures[idx + 1],
            ]
        )
        if order == 0:
            basis = _HERMITE
            scale = 1.0
        else:
            basis = _HERMITE_D1
            scale = 1.0 / h
        powers = np.stack([s**p for p in range(basis.shape[1])])
        return np.einsum("rp,pn,rn->n", basis, powers, data) * scale

    def __call__(self, x, order: int = 0):
        arr = np.atleast_1d(np.asarray(x, dtype=float))
        lo, hi = self.nodes[0], self.nodes[-1]
        slack = 1e-12 * max(1.0, abs(lo), abs(hi))
        if np.any(arr < lo - slack) or np.any(arr > hi + slack):
            raise DomainError(f"evaluation outside integrated span [{lo:g}, {hi:g}]")
        flat = arr.ravel()
        if order == 2:
            f = self._interpolate(flat, 0)
            df = self._interpolate(flat, 1)
            coeff = np.array([[self._a(v), self._b(v), self._c(v)] for v in flat])
            out = -(coeff[:, 1] * df + coeff[:, 2] * f) / coeff[:, 0]
        elif order in (0, 1):
            out = self._interpolate(flat, order)
        else:
            raise ValueError(f"derivative order must be 0, 1 or 2, got {order}")
        out = out.reshape(arr.shape)
        return out if np.ndim(x) else float(out[0])


def _dormand_prince(rhs, x_start, y_start, x_end, tol, h_max):
    """x_start → x_end 적분. 채택된 노드와 상태를 x_start 부터 순서대로 돌려준다."""
    xs = [x_start]
    ys = [np.asarray(y_start, dtype=float)]
    direction = 1.0 if x_end > x_start else -1.0
    x = x_start
    y = ys[0]
    h = direction * min(h_max, abs(x_end - x_start))
    k1 = rhs(x, y)
    steps = 0
    while direction * (x_end - x) > 0:
        if steps >= _MAX_STEPS:
            raise AccuracyError(f"ODE integration exceeded {_MAX_STEPS} steps near x={x:g}")
        # stretch the step by up to 1% rather than leave a sliver before x_end
        if direction * (x + 1.01 * h - x_end) > 0:
            h = x_end - x
        ks = [k1]
        for i in range(1, 7):
            yi = y + h * sum(aij * kj for aij, kj in zip(_A[i], ks))
            ks.append(rhs(x + _C[i] * h, yi))
        y_new = y + h * sum(bi * ki for bi, ki in zip(_B, ks))
        err_vec = h * sum(ei * ki for ei, ki in zip(_E, ks))
        scale = tol + tol * np.maximum(np.abs(y), np.abs(y_new))
        err = float(np.max(np.abs(err_vec) / scale))
        steps += 1
        if err <= 1.0:
            x = x + h
            y = y_new
            k1 = ks[6]
            xs.append(x)
            ys.append(y)
        factor = 5.0 if err == 0.0 else min(5.0, max(0.2, 0.9 * err ** -0.2))
        h = direction * min(h_max, abs(h) * factor)
        if err > 1.0 and abs(h) < 1e-14 * max(1.0, abs(x)):
            raise AccuracyError(f"ODE step size underflow near x={x:g}")
    return xs, ys


def fundamental_system(
    a: Coefficient,
    b: Coefficient,
    c: Coefficient,
    x0: float,
    span: tuple[float, float],
    tol: float = DEFAULT_TOL,
) -> FundamentalPair:
    """a f″ + b f′ + c f = 0 의 정규화된 기본해를 수치적으로 구성합니다.

    Args:
        a, b, c: 계수 함수 (float → float)
        x0: 기준점 (span 안)
        span: (lo, hi) 평가 구간
        tol: 지역 허용오차. 내부 적분은 0.01·tol 로 돈다.

    Returns:
        f₁(x0)=1, f₁′(x0)=0, f₂(x0)=0, f₂′(x0)=1 인 FundamentalPair

    Raises:
        SingularityError: a(x) 가 span 에서 0 이 되는 경우 (위치 포함)
        DomainError: x0 가 span 밖인 경우
    """
    lo, hi = float(span[0]), float(span[1])
    if not lo < hi:
        raise DomainError(f"span must satisfy lo < hi, got ({lo}, {hi})")
    if not lo <= x0 <= hi:
        raise DomainError(f"anchor x0={x0} outside span [{lo}, {hi}]", location=x0)
    _scan_leading(a, lo, hi)

    def rhs(x, y):
        ax = a(x)
        if ax == 0.0:
            raise SingularityError(f"leading coefficient vanishes at x={x:g}", x)
        bx, cx = b(x), c(x)
        return np.array(
            [y[1], -(bx * y[1] + cx * y[0]) / ax, y[3], -(bx * y[3] + cx * y[2]) / ax]
        )

    inner_tol = 0.01 * tol
    h_max = (hi - lo) / 64.0
    start = np.array([1.0, 0.0, 0.0, 1.0])
    xs, ys = [x0], [start]
    if hi > x0:
        xs, ys = _dormand_prince(rhs, x0, start, hi, inner_tol, h_max)
    if lo < x0:
        back_x, back_y = _dormand_prince(rhs, x0, start, lo, inner_tol, h_max)
        xs = back_x[:0:-1] + xs
        ys = back_y[:0:-1] + ys

    nodes = np.array(xs)
    states = np.array(ys)
    derivs = np.array([rhs(x, y) for x, y in zip(xs, ys)])
    logger.debug("fundamental system on [%g, %g]: %d nodes", lo, hi, len(nodes))

    first = _DenseSolution(nodes, states[:, 0], states[:, 1], derivs[:, 1], a, b, c)
    second = _DenseSolution(nodes, states[:, 2], states[:, 3], derivs[:, 3], a, b, c)
    return FundamentalPair(first=first, second=second, anchor=float(x0))


def _exponential_mode(rate: complex, part: str, polynomial: bool = False) -> Mode:
    """Re/Im of e^{rate·x} (polynomial=True 이면 x e^{rate·x})"""
    def mode(x, order=0):
        arr = np.asarray(x, dtype=float)
        growth = np.exp(rate * arr)
        if polynomial:
            # d^k/dx^k (x e^{rx}) = (k r^{k-1} + r^k x) e^{rx}
            factor = order * rate ** (order - 1) if order else 0.0
            value = (factor + rate**order * arr) * growth
        else:
            value = rate**order * growth
        value = np.imag(value) if part == "imag" else np.real(value)
        return value if np.ndim(x) else float(value)

    return mode


def constant_coeff_fundamental(
    D: float, b: float, c: float
) -> tuple[FundamentalPair, CharacteristicRoots]:
    """D f″ + b f′ + c f = 0 의 닫힌형 기본해

    판별식 b² − 4Dc 의 부호에 따라 {e^{r₁x}, e^{r₂x}}, {e^{rx}, x e^{rx}},
    {e^{αx} cos βx, e^{αx} sin βx} 를 돌려준다.
    """
    if D == 0:
        raise BranchError("constant-coefficient modes need a nonzero second-order coefficient")
    disc = b * b - 4.0 * D * c
    scale = max(b * b, abs(4.0 * D * c))
    if abs(disc) <= 1e-14 * scale or disc == 0.0:
        r = -b / (2.0 * D)
        pair = FundamentalPair(
            first=_exponential_mode(complex(r), "real"),
            second=_exponential_mode(complex(r), "real", polynomial=True),
        )
        return pair, CharacteristicRoots(RootCase.REPEATED, (complex(r), complex(r)), disc)
    if disc > 0:
        root = math.sqrt(disc)
        r1 = (-b + root) / (2.0 * D)
        r2 = (-b - root) / (2.0 * D)
        pair = FundamentalPair(
            first=_exponential_mode(complex(r1), "real"),
            second=_exponential_mode(complex(r2), "real"),
        )
        return pair, CharacteristicRoots(RootCase.DISTINCT, (complex(r1), complex(r2)), disc)
    alpha = -b / (2.0 * D)
    beta = math.sqrt(-disc) / (2.0 * abs(D))
    rate = complex(alpha, beta)
    pair = FundamentalPair(
        first=_exponential_mode(rate, "real"),
        second=_exponential_mode(rate, "imag"),
    )
    return pair, CharacteristicRoots(RootCase.COMPLEX, (rate, rate.conjugate()), disc)
