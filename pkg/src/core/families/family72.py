"""
y = x + x₀ 축 family 와 c₁ 의 Bessel 특수해

y = x + x₀, x₀ = u₀/u₁ 로 두면

    u  = u₁ y t + φ₁(x)
    ρ  = ρ_F⁰ + ρ¹/y²,   θ_F = 1 − θ¹/y²
    p* = u₁x²/k + p₁x + p₀(t)
    cᵢ = e^{−vᵢt} φᵢ(x),  Dᵢφ″ + bᵢ(x)φ′ + cᵢ(x)φ = 0

bᵢ = u₁θ¹/y + u₁(2Sᵢ−1)x + βᵢ₁,  cᵢ = −vᵢθ¹/y² + βᵢ₂.
x = −x₀ 는 로그/음의 거듭제곱 특이점이므로 평가 영역은 y > SINGULAR_MARGIN 이어야 한다.
"""

import logging
import math

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from src.config import RESTRICTION_TOL, SINGULAR_MARGIN
from src.core.exceptions import BranchError, ComplexOrderError, DomainError
from src.core.families.enums import BesselBranch, ConcentrationMode
from src.core.families.solution import Domain, FieldSolution, SmoothFunction, ZeroMode, make_jet
from src.core.model import ModelParams, PressureKind
from src.core.model.enums import Variant
from src.core.specfun import (
    BesselKind,
    BesselTag,
    FundamentalPair,
    Mode,
    bessel_array,
    fundamental_system,
)

logger = logging.getLogger(__name__)


class Family72Params(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    u0: float = 1.0
    u1: float = 1.0
    p0: SmoothFunction = Field(default_factory=lambda: SmoothFunction.constant(0.0))
    p1: float = 0.0
    rho1: float = 0.0
    theta1: float = 0.0
    U0: float = 0.0
    U1: float = 0.0
    v1: float = 0.0
    v2: float = 0.0
    A11: float = 1.0
    A12: float = 0.0
    A21: float = 1.0
    A22: float = 0.0

    @field_validator("u1")
    @classmethod
    def _nonzero_u1(cls, value: float) -> float:
        if value == 0.0:
            raise ValueError("u1 must be nonzero (x0 = u0/u1)")
        return value

    @property
    def x0(self) -> float:
        return self.u0 / self.u1

    def rate(self, solute: int) -> float:
        return self.v1 if solute == 1 else self.v2

    def amplitudes(self, solute: int) -> tuple[float, float]:
        return (self.A11, self.A12) if solute == 1 else (self.A21, self.A22)

    def beta1(self, mp: ModelParams, solute: int) -> float:
        """βᵢ₁ = k p₁ Sᵢ − u₀"""
        _, S = mp.transport(solute)
        return mp.k * self.p1 * S - self.u0

    def beta2(self, mp: ModelParams, solute: int) -> float:
        """βᵢ₂ = 2u₁(Sᵢ − 1) + vᵢ"""
        _, S = mp.transport(solute)
        return 2.0 * self.u1 * (S - 1.0) + self.rate(solute)


class BesselCaseParams(BaseModel):
    """S₁ = 1/2, β₁₁ = 0 에서 c₁ 모드의 Bessel 닫힌형 파라미터

    y²φ″ + χyφ′ + (B²y² − q)φ = 0 (B² = (v₁−u₁)/D₁, q = v₁θ¹/D₁)
    """

    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    x0: float
    chi: float
    q: float
    B_squared: float
    branch: BesselBranch

    @property
    def nu(self) -> float:
        radicand = (self.chi - 1.0) ** 2 + 4.0 * self.q
        if radicand < 0:
            raise ComplexOrderError(
                f"Bessel order is complex: (χ−1)² + 4q = {radicand:.6g} < 0"
            )
        return 0.5 * math.sqrt(radicand)

    @property
    def B(self) -> float:
        return math.sqrt(abs(self.B_squared))

    @classmethod
    def from_family(
        cls,
        mp: ModelParams,
        fp: Family72Params,
        branch: BesselBranch | None = None,
        tol: float = RESTRICTION_TOL,
    ) -> "BesselCaseParams":
        """family72 파라미터에서 Bessel 케이스를 만듭니다.

        Raises:
            BranchError: S₁ ≠ 1/2, u₀ ≠ kp₁/2, D₁ = 0, 또는 지정한 branch 가 부호와 맞지 않음
            ComplexOrderError: ν 가 복소수
        """
        if abs(mp.S1 - 0.5) > tol:
            raise BranchError(f"Bessel case needs S1 = 1/2, got {mp.S1}")
        if abs(fp.u0 - 0.5 * mp.k * fp.p1) > tol * max(1.0, abs(fp.u0)):
            raise BranchError(f"Bessel case needs u0 = k·p1/2, got u0={fp.u0}, k·p1/2={0.5 * mp.k * fp.p1}")
        if mp.D1 == 0:
            raise BranchError("Bessel case needs D1 > 0")
        gap = (fp.v1 - fp.u1) / mp.D1
        if abs(fp.v1 - fp.u1) <= tol * max(1.0, abs(fp.u1)):
            detected = BesselBranch.EQUAL_RATES
            gap = 0.0
        elif gap > 0:
            detected = BesselBranch.OSCILLATORY
        else:
            detected = BesselBranch.MODIFIED
        if branch is not None and branch != detected:
            raise BranchError(f"requested {branch.value} branch but (v1-u1)/D1 selects {detected.value}")
        bp = cls(
            x0=fp.x0,
            chi=fp.u1 * fp.theta1 / mp.D1,
            q=fp.v1 * fp.theta1 / mp.D1,
            B_squared=gap,
            branch=detected,
        )
        _ = bp.nu  # raises on complex order
        return bp


def bessel_phi5(
    bp: BesselCaseParams, A1: float, A2: float, variant: Variant = Variant.CORRECTED
) -> Mode:
    """c₁ 의 공간 모드 φ(x)

    equal_rates: A₁y + A₂y^{−χ}
    oscillatory: y^m (A₁J_ν(By) + A₂Y_ν(By))
    modified:    y^m (A₁I_ν(By) + A₂K_ν(By))

    corrected 는 m = (1−χ)/2, as_printed 는 m = 0 (χ = 1 일 때만 정확).

    Args:
        bp: Bessel 케이스 파라미터
        A1: 첫째 해의 진폭
        A2: 둘째 해의 진폭
        variant: as_printed 또는 corrected

    Returns:
        mode(x, order) 평가기, order ∈ {0, 1, 2}
    """
    x0, chi = bp.x0, bp.chi

    if bp.branch == BesselBranch.EQUAL_RATES:
        def power_mode(x, order=0):
            y = np.asarray(x, dtype=float) + x0
            if order == 0:
                value = A1 * y + A2 * y ** (-chi)
            elif order == 1:
                value = A1 + A2 * (-chi) * y ** (-chi - 1.0)
            else:
                value = A2 * chi * (chi + 1.0) * y ** (-chi - 2.0) + 0.0 * y
            return value if np.ndim(value) else float(value)

        return power_mode

    nu, B = bp.nu, bp.B
    if bp.branch == BesselBranch.OSCILLATORY:
        kinds, sign = (BesselKind(BesselTag.J, nu), BesselKind(BesselTag.Y, nu)), -1.0
    else:
        kinds, sign = (BesselKind(BesselTag.I, nu), BesselKind(BesselTag.K, nu)), 1.0
    m = 0.5 * (1.0 - chi) if variant == Variant.CORRECTED else 0.0
    terms = [(A, kind) for A, kind in zip((A1, A2), kinds) if A != 0.0]

    def bessel_mode(x, order=0):
        y = np.asarray(x, dtype=float) + x0
        z = B * y
        Z = np.zeros_like(z)
        dZ = np.zeros_like(z)
        for A, kind in terms:
            Z = Z + A * bessel_array(kind, z)
            if order:
                dZ = dZ + A * bessel_array(kind, z, derivative=True)
        weight = y**m
        if order == 0:
            value = weight * Z
        elif order == 1:
            value = m * y ** (m - 1.0) * Z + B * weight * dZ
        else:
            # J/Y: Z″ = −Z′/z − (1 − ν²/z²)Z,  I/K: Z″ = −Z′/z + (1 + ν²/z²)Z
            d2Z = -dZ / z + (sign + nu * nu / (z * z)) * Z
            value = (
                m * (m - 1.0) * y ** (m - 2.0) * Z
                + 2.0 * m * B * y ** (m - 1.0) * dZ
                + B * B * weight * d2Z
            )
        return value if np.ndim(value) else float(value)

    return bessel_mode


def family72_modes(
    mp: ModelParams,
    fp: Family72Params,
    solute: int,
    span: tuple[float, float],
    printed_flux: bool = False,
) -> FundamentalPair:
    """Dᵢφ″ + bᵢφ′ + cᵢφ = 0 의 수치 기본해 (x_lo 에서 정규화)

    printed_flux 이면 농도 플럭스 항을 kSᵢ(φφ₃′)′ 대신 인쇄된 kSᵢ(φφ₃)′ 로 넣는다.
    φ₃ = u₁x²/k + p₁x + p₀(0) 이므로 bᵢ 에 kS(φ₃ − φ₃′), cᵢ 에 kS(φ₃′ − φ₃″) 가 더해진다.
    """
    D, S = mp.transport(solute)
    x0, u1, theta1 = fp.x0, fp.u1, fp.theta1
    v = fp.rate(solute)
    beta1, beta2 = fp.beta1(mp, solute), fp.beta2(mp, solute)
    k, p1, p0 = mp.k, fp.p1, float(fp.p0(0.0))
    flux = 1.0 if printed_flux else 0.0

    def a(x):
        return D

    def b(x):
        shift = S * (u1 * x * x + k * p1 * x + k * p0) - S * (2.0 * u1 * x + k * p1)
        return u1 * theta1 / (x + x0) + u1 * (2.0 * S - 1.0) * x + beta1 + flux * shift

    def c(x):
        shift = S * (2.0 * u1 * x + k * p1) - 2.0 * u1 * S
        return -v * theta1 / (x + x0) ** 2 + beta2 + flux * shift

    return fundamental_system(a, b, c, span[0], span)


def family72_build(
    mp: ModelParams,
    fp: Family72Params,
    mode: ConcentrationMode = ConcentrationMode.NUMERIC,
    span: tuple[float, float] = (0.0, 1.0),
    variant: Variant = Variant.CORRECTED,
    printed_flux: bool = False,
) -> FieldSolution:
    """y = x + x₀ family 의 FieldSolution 을 만듭니다.

    Args:
        mp: 모델 파라미터
        fp: family 파라미터
        mode: numeric (수치 기본해) 또는 bessel (c₁ 을 Bessel 닫힌형으로)
        span: x 평가 구간. 수치 기본해는 span[0] 에서 정규화된다.
        variant: corrected 는 c₂ 에 e^{−v₂t}, as_printed 는 e^{−v₁t}.
            bessel 모드에서는 y^{(1−χ)/2} 인자의 유무도 결정한다.
        printed_flux: 두 농도 모드를 인쇄된 플럭스 연산자 kSᵢ(φφ₃)′ 로 만든 수치 기본해로 대체
            (bessel 모드 무시). 정확해가 아니며 불일치 근거용이다.

    Returns:
        해석적 미분을 갖는 FieldSolution (domain 은 span)

    Raises:
        DomainError: span 이 특이점 x = −x₀ 를 포함하거나 너무 가까움
        BranchError: bessel 모드인데 S₁ = 1/2, u₀ = kp₁/2 가 성립하지 않음
    """
    x0 = fp.x0
    lo, hi = float(span[0]), float(span[1])
    if lo + x0 <= SINGULAR_MARGIN:
        raise DomainError(
            f"family72 is singular at x = {-x0:g}; span [{lo:g}, {hi:g}] reaches it",
            location=-x0,
        )
    if not (mp.restricted() and mp.linear_stress()):
        logger.info("family72 is exact only under the γ-restrictions with κ = 0")

    modes: list[Mode] = []
    for solute in (1, 2):
        A_first, A_second = fp.amplitudes(solute)
        if solute == 1 and mode == ConcentrationMode.BESSEL and not printed_flux:
            bp = BesselCaseParams.from_family(mp, fp)
            modes.append(bessel_phi5(bp, A_first, A_second, variant))
        elif A_first == 0.0 and A_second == 0.0:
            modes.append(ZeroMode())
        else:
            pair = family72_modes(mp, fp, solute, (lo, hi), printed_flux)
            modes.append(pair.combine(A_first, A_second))

    rates = (fp.v1, fp.v2 if variant == Variant.CORRECTED else fp.v1)
    k, u1, lam = mp.k, fp.u1, mp.lambda_star
    drive = (2.0 + u1 * k * mp.rhoF0) * u1 / k
    linear = (k * fp.p1 - 2.0 * fp.u0) / k
    log_coef = u1 * u1 * fp.rho1

    def jet_fn(t: np.ndarray, x: np.ndarray):
        y = x + x0
        phi1 = (log_coef * y * np.log(y) + drive * y**3 / 6.0 + linear * y**2 / 2.0) / lam
        dphi1 = (log_coef * (np.log(y) + 1.0) + drive * y**2 / 2.0 + linear * y) / lam
        d2phi1 = (log_coef / y + drive * y + linear) / lam
        conc = []
        for phi, v in zip(modes, rates):
            decay = np.exp(-v * t)
            c = decay * phi(x)
            conc.append((c, -v * c, decay * phi(x, 1), decay * phi(x, 2)))
        (c1, c1_t, c1_x, c1_xx), (c2, c2_t, c2_x, c2_xx) = conc
        return make_jet(
            PressureKind.EFFECTIVE,
            np.shape(x),
            u=u1 * y * t + phi1 + fp.U1 * x + fp.U0,
            rho=mp.rhoF0 + fp.rho1 / y**2,
            theta_F=1.0 - fp.theta1 / y**2,
            c1=c1,
            c2=c2,
            pressure=u1 * x**2 / k + fp.p1 * x + fp.p0(t),
            u_t=u1 * y,
            u_x=u1 * t + dphi1 + fp.U1,
            u_tx=u1,
            u_xx=d2phi1,
            rho_x=-2.0 * fp.rho1 / y**3,
            theta_F_x=2.0 * fp.theta1 / y**3,
            c1_t=c1_t,
            c1_x=c1_x,
            c1_xx=c1_xx,
            c2_t=c2_t,
            c2_x=c2_x,
            c2_xx=c2_xx,
            pressure_x=2.0 * u1 * x / k + fp.p1,
            pressure_xx=2.0 * u1 / k,
        )

    source = "printed-flux" if printed_flux else mode.value
    return FieldSolution(
        label=f"family72[{source},{variant.value}]",
        params=mp,
        jet_fn=jet_fn,
        domain=Domain(x_lo=lo, x_hi=hi),
    )
