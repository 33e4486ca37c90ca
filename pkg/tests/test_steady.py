import numpy as np
import pytest

from src.core.exceptions import BranchError, DomainError, InversionError, UsageError
from src.core.model import ModelParams
from src.core.model.enums import Variant
from src.core.solver import Grid, residual_scan
from src.core.steady import (
    ProfileBranch,
    SteadyParams,
    Tissue,
    displacement_linear,
    displacement_quadrature,
    displacement_slope,
    displacement_taylor,
    example1_scenario,
    present_position,
    steady_profiles,
    steady_solution,
    taylor_order_study,
)


def test_example1_reconstruction(example1_healthy):
    mp, sp = example1_healthy

    assert sp.P0 == pytest.approx(-1.40593, abs=1e-5)
    assert sp.P1 == pytest.approx(29.90458, abs=1e-5)
    profiles = steady_profiles(mp, sp)
    assert profiles.P(0.0) == pytest.approx(-1.0)
    assert profiles.P(1.0) == pytest.approx(40.0)
    assert profiles.C1(0.0) == pytest.approx(6.0)
    assert profiles.C1(1.0) == pytest.approx(170.0)
    assert profiles.C2(0.0) == pytest.approx(0.4)
    assert profiles.C2(1.0) == pytest.approx(0.0, abs=1e-12)
    assert profiles.branches == (ProfileBranch.EXPONENTIAL, ProfileBranch.EXPONENTIAL)


def test_example1_linear_displacement(example1_healthy):
    mp, sp = example1_healthy

    assert displacement_quadrature(mp, sp, 1.0) == pytest.approx(0.135464, abs=1e-6)


@pytest.mark.parametrize("kappa, expected", [(0.0, 0.135464), (100.0, 0.161267), (-50.0, 0.12256)])
def test_example1_as_printed_taylor_values(kappa, expected):
    mp, sp = example1_scenario(Tissue.HEALTHY, kappa)

    assert displacement_taylor(mp, sp, 1.0, Variant.AS_PRINTED) == pytest.approx(expected, abs=5e-6)


def test_example1_tumour_is_insensitive_to_kappa():
    base = displacement_taylor(*example1_scenario(Tissue.TUMOUR, 0.0), 1.0, Variant.AS_PRINTED)
    stiff = displacement_taylor(*example1_scenario(Tissue.TUMOUR, 100.0), 1.0, Variant.AS_PRINTED)

    assert abs(stiff - base) <= 1e-4


def test_corrected_taylor_converges_faster_than_printed(example1_healthy):
    mp, sp = example1_healthy

    study = taylor_order_study(mp, sp, (100.0, 50.0, 25.0), 0.5)

    assert 1.8 <= study.slope_corrected <= 2.2
    assert 0.8 <= study.slope_as_printed <= 1.2
    assert all(0.2 <= r <= 0.35 for r in study.ratios_corrected)


def test_higher_taylor_orders_approach_quadrature(example1_healthy):
    mp, sp = example1_healthy
    mp = mp.model_copy(update={"kappa": 50.0})
    exact = displacement_quadrature(mp, sp, 0.8)

    errors = [abs(exact - displacement_taylor(mp, sp, 0.8, Variant.CORRECTED, order=n)) for n in (1, 2, 3)]

    assert errors[0] > errors[1] > errors[2]


def test_as_printed_taylor_exists_only_at_second_order(example1_healthy):
    mp, sp = example1_healthy

    with pytest.raises(UsageError):
        displacement_taylor(mp, sp, 0.5, Variant.AS_PRINTED, order=3)
    with pytest.raises(UsageError):
        displacement_taylor(mp, sp, 0.5, order=0)


def test_material_coordinate_is_increasing():
    x = np.linspace(0.0, 1.0, 101)
    for kappa in (-50.0, 0.0, 50.0, 100.0):
        mp, sp = example1_scenario(Tissue.HEALTHY, kappa)

        X = x - displacement_quadrature(mp, sp, x)

        assert np.all(np.diff(X) > 0)


def test_present_position_inverts_the_displacement(example1_healthy):
    mp, sp = example1_healthy

    def U(x):
        return displacement_quadrature(mp, sp, x)

    x = present_position(U, 0.5, bracket=(0.0, 1.0))

    assert x - U(x) == pytest.approx(0.5, abs=1e-10)


def test_present_position_out_of_reach(example1_healthy):
    mp, sp = example1_healthy

    with pytest.raises(InversionError):
        present_position(lambda x: displacement_quadrature(mp, sp, x), 5.0, bracket=(0.0, 1.0))


def test_negative_radicand_is_located():
    mp, sp = example1_scenario(Tissue.HEALTHY, -200.0)

    with pytest.raises(DomainError) as exc:
        displacement_quadrature(mp, sp, 1.0)

    # 1 − 800 G / 10⁴ = 0 at G = P* = 12.5
    assert exc.value.location == pytest.approx((12.5 - sp.P0) / sp.P1, abs=1e-6)


def test_slope_refuses_a_negative_radicand():
    mp, sp = example1_scenario(Tissue.HEALTHY, -200.0)

    assert displacement_slope(mp, sp, 0.2) > 0
    with pytest.raises(DomainError) as exc:
        displacement_slope(mp, sp, np.array([0.2, 0.8, 0.9]))

    assert exc.value.location == pytest.approx(0.8)


COUPLED = ModelParams(k=1.0, lambda_star=2.0, sigma1=0.5, gamma0=0.2, RT=1.0, D1=1.0, S1=0.5, D2=1.0, S2=0.5)
PROFILE = SteadyParams(P1=0.4, A1=0.5, A2=0.3, U1=0.1)


def test_linear_closed_form_matches_quadrature_up_to_a_constant():
    x = np.linspace(0.0, 1.0, 11)

    closed = np.asarray(displacement_linear(COUPLED, PROFILE)(x))
    quadrature = displacement_quadrature(COUPLED, PROFILE, x)

    np.testing.assert_allclose(closed - closed[0], quadrature - quadrature[0], atol=1e-9)


def test_slope_solves_the_stress_balance():
    mp = COUPLED.model_copy(update={"kappa": 0.3})
    x = np.linspace(0.0, 1.0, 7)

    slope = displacement_slope(mp, PROFILE, x)

    balance = mp.lambda_star * slope + mp.kappa * slope**2
    np.testing.assert_allclose(balance, steady_profiles(mp, PROFILE).G(x), atol=1e-12)


def test_profile_branches():
    linear = steady_profiles(ModelParams(), SteadyParams(P1=0.0, A01=1.0, A1=2.0))
    constant = steady_profiles(ModelParams(D1=0.0), SteadyParams(P1=1.0, A01=3.0))

    assert linear.branches[0] == ProfileBranch.LINEAR
    assert linear.C1(0.5) == pytest.approx(2.0)
    assert constant.branches[0] == ProfileBranch.CONSTANT
    assert constant.C1(0.5) == pytest.approx(3.0)


def test_requested_branch_must_match():
    with pytest.raises(BranchError):
        steady_profiles(ModelParams(), SteadyParams(P1=1.0, branch1=ProfileBranch.LINEAR))
    with pytest.raises(BranchError):
        steady_profiles(ModelParams(D1=0.0), SteadyParams(P1=0.0))


@pytest.mark.parametrize("kappa", [0.0, 0.5, -0.5])
def test_steady_solution_is_exact_for_any_kappa(kappa):
    mp = COUPLED.model_copy(update={"kappa": kappa})
    grid = Grid(x_lo=0.0, x_hi=1.0, nx=11, t_lo=0.0, t_hi=1.0, nt=2)

    report = residual_scan(steady_solution(mp, PROFILE), grid, mp)

    assert report.max_linf <= 1e-8
