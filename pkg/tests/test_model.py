from dataclasses import replace

import numpy as np
import pytest
from pydantic import ValidationError

from src.core.exceptions import UsageError
from src.core.families import make_jet
from src.core.model import (
    ModelParams,
    PressureKind,
    compute_fluxes,
    from_effective,
    random_jet,
    residual_original,
    residual_starred,
    stress_tensor,
    stress_tensor_linear,
    to_effective,
    validate_params,
)


def test_pressure_round_trip_on_random_jets(rng, coupled_params):
    jet = random_jet(rng, PressureKind.HYDROSTATIC, size=1000)

    back = from_effective(to_effective(jet, coupled_params), coupled_params)

    assert back.pressure_kind == PressureKind.HYDROSTATIC
    np.testing.assert_allclose(back.pressure, jet.pressure, rtol=0, atol=1e-12)
    np.testing.assert_allclose(back.pressure_x, jet.pressure_x, rtol=0, atol=1e-12)
    np.testing.assert_allclose(back.pressure_xx, jet.pressure_xx, rtol=0, atol=1e-12)


def test_effective_pressure_subtracts_osmotic_terms(rng, coupled_params):
    jet = random_jet(rng, PressureKind.HYDROSTATIC, size=10)
    mp = coupled_params

    effective = to_effective(jet, mp)

    expected = jet.pressure - mp.T1 * jet.c1 - mp.alpha * mp.T2 * jet.c2
    np.testing.assert_allclose(effective.pressure, expected, atol=1e-14)


def test_original_residual_equals_starred_after_conversion(rng, coupled_params):
    jet = random_jet(rng, PressureKind.HYDROSTATIC, size=1000)

    original = residual_original(jet, coupled_params).as_tuple()
    starred = residual_starred(to_effective(jet, coupled_params), coupled_params).as_tuple()

    for a, b in zip(original, starred):
        np.testing.assert_allclose(a, b, rtol=0, atol=1e-10)


def test_residuals_reject_the_wrong_pressure_variable(rng, coupled_params):
    jet = random_jet(rng, PressureKind.HYDROSTATIC)

    with pytest.raises(UsageError):
        residual_starred(jet, coupled_params)
    with pytest.raises(UsageError):
        from_effective(jet, coupled_params)
    with pytest.raises(UsageError):
        residual_original(to_effective(jet, coupled_params), coupled_params)


def test_stress_tensor_is_linear_when_kappa_vanishes(rng, coupled_params):
    jet = random_jet(rng, PressureKind.HYDROSTATIC, size=50)
    linear = coupled_params.model_copy(update={"kappa": 0.0})

    np.testing.assert_allclose(stress_tensor(jet, linear), stress_tensor_linear(jet, linear), atol=1e-14)
    gap = stress_tensor(jet, coupled_params) - stress_tensor_linear(jet, coupled_params)
    np.testing.assert_allclose(gap, coupled_params.kappa * jet.u_x**2, atol=1e-13)


def test_mass_flux_undefined_when_fluid_fills_the_pores(coupled_params):
    jet = make_jet(PressureKind.HYDROSTATIC, (3,), rho=1.0, theta_F=[0.5, 1.0, 0.2], c1=1.0, c2=1.0, u_t=0.3)

    fluxes = compute_fluxes(jet, coupled_params)

    assert fluxes.rho_flux_defined is False
    assert fluxes.j_rho is None
    np.testing.assert_allclose(fluxes.j_V, fluxes.j_VF + fluxes.j_VM)


def test_random_jets_are_physical(rng):
    jet = random_jet(rng, size=200)

    assert jet.physical_warnings() == []


def test_unphysical_jet_is_reported():
    jet = make_jet(PressureKind.EFFECTIVE, (2,), rho=[1.0, -1.0], theta_F=[0.5, 1.5])

    warnings = jet.physical_warnings()

    assert len(warnings) == 2


@pytest.mark.parametrize(
    "field, value",
    [("alpha", 1.2), ("k", 0.0), ("S1", 1.5), ("lambda_star", -1.0), ("k", float("inf"))],
)
def test_invalid_parameters_name_the_field(field, value):
    with pytest.raises(ValidationError) as exc:
        ModelParams(**{field: value})

    assert field in str(exc.value)


def test_unknown_parameter_is_rejected():
    with pytest.raises(ValidationError):
        validate_params({"k": 1.0, "viscosity": 2.0})


def test_restriction_flags():
    mp = ModelParams(sigma1=0.5, gamma0=0.3, gamma1=0.2, sigma2=0.5, gamma2=0.1, alpha=0.4, kappa=0.0)

    assert mp.c1_restricted()
    assert not mp.c2_restricted()
    assert mp.linear_stress()
    assert not mp.restricted()
    assert mp.osmotic1 == pytest.approx(0.0)
    assert mp.osmotic2 == pytest.approx(-0.1)


def test_generic_flag_and_transport():
    assert ModelParams().generic
    assert not ModelParams(D2=0.0).generic
    assert ModelParams(D1=0.3, S1=0.2).transport(1) == (0.3, 0.2)
    with pytest.raises(ValueError):
        ModelParams().transport(3)


def test_stress_tensor_hand_values():
    mp = ModelParams(lambda_star=2.0, kappa=1.0)
    jet = make_jet(PressureKind.HYDROSTATIC, (), pressure=1.0, u_x=3.0)

    # −1 + 2·3 + 1·3²
    assert float(stress_tensor(jet, mp)) == pytest.approx(14.0)
    assert float(stress_tensor(make_jet(PressureKind.HYDROSTATIC, ()), mp)) == 0.0


def test_effective_pressure_gradient_hand_value():
    mp = ModelParams(RT=4.0, sigma1=0.75, sigma2=1.0, alpha=0.5)
    jet = make_jet(PressureKind.HYDROSTATIC, (), pressure_x=10.0, c1_x=2.0, c2_x=1.0)

    # 10 − 3·2 − 0.5·4·1
    assert float(to_effective(jet, mp).pressure_x) == pytest.approx(2.0)


def test_darcy_flux_hand_values():
    jet = make_jet(PressureKind.HYDROSTATIC, (), pressure_x=1.0, theta_F=0.5)

    fluxes = compute_fluxes(jet, ModelParams(k=2.0))

    assert float(fluxes.j_VF) == pytest.approx(-2.0)
    assert float(fluxes.j_VM) == 0.0
    assert float(fluxes.j_V) == pytest.approx(-2.0)


def test_no_driving_force_means_no_flux():
    jet = make_jet(PressureKind.HYDROSTATIC, (), rho=1.0, theta_F=0.5, c1=1.0, c2=2.0)

    fluxes = compute_fluxes(jet, ModelParams())

    for value in (fluxes.j_VF, fluxes.j_VM, fluxes.j_V, fluxes.j1, fluxes.j2, fluxes.j_rho):
        assert float(value) == 0.0


def test_unsieved_solutes_lose_the_convective_terms(rng):
    mp = ModelParams(S1=0.0, S2=0.0, D1=0.7, D2=0.3, alpha=0.4)
    jet = random_jet(rng, PressureKind.HYDROSTATIC, size=100)

    fluxes = compute_fluxes(jet, mp)

    np.testing.assert_allclose(fluxes.j1, -0.7 * jet.c1_x + jet.theta_F * jet.c1 * jet.u_t, atol=1e-14)
    np.testing.assert_allclose(
        fluxes.j2, 0.4 * (-0.3 * jet.c2_x + jet.theta_F * jet.c2 * jet.u_t), atol=1e-14
    )
    np.testing.assert_allclose(fluxes.j_V, fluxes.j_VF + fluxes.j_VM, rtol=0, atol=0)


def test_momentum_residual_ignores_concentrations_under_the_restrictions(rng):
    mp = ModelParams(sigma1=0.5, gamma0=0.3, gamma1=0.2, sigma2=0.5, gamma2=0.2, alpha=0.4, RT=2.0)
    jet = random_jet(rng, PressureKind.EFFECTIVE, size=100)
    other = random_jet(rng, PressureKind.EFFECTIVE, size=100)
    swapped = replace(jet, c1=other.c1, c1_x=other.c1_x, c2=other.c2, c2_x=other.c2_x)

    assert mp.restricted()
    np.testing.assert_allclose(residual_starred(swapped, mp).r6, residual_starred(jet, mp).r6, rtol=0, atol=1e-12)
