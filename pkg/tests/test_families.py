import numpy as np
import pytest
from pydantic import ValidationError

from src.core.exceptions import ComplexOrderError, DomainError, UsageError
from src.core.families import (
    BesselBranch,
    BesselCaseParams,
    ConcentrationMode,
    Domain,
    Family68Params,
    Family72Params,
    Family75Params,
    Family78Params,
    FieldSolution,
    SmoothFunction,
    family68_build,
    family72_build,
    family75_build,
    family78_build,
    make_jet,
)
from src.core.model import ModelParams, PressureKind
from src.core.model.enums import Variant
from src.core.solver import Grid, residual_scan

GRID = Grid(x_lo=0.0, x_hi=1.0, nx=21, t_lo=0.0, t_hi=1.0, nt=10)
EXACT = 1e-8


def test_smooth_function_derivatives():
    f = SmoothFunction.sine(0.1, frequency=2.0, offset=1.0)
    poly = SmoothFunction(coefficients=(1.0, 2.0, 3.0))

    assert f(0.5) == pytest.approx(1.0 + 0.1 * np.sin(1.0))
    assert f(0.5, 1) == pytest.approx(0.2 * np.cos(1.0))
    assert f(0.5, 2) == pytest.approx(-0.4 * np.sin(1.0))
    assert poly(2.0) == pytest.approx(17.0)
    assert poly(2.0, 1) == pytest.approx(14.0)
    assert SmoothFunction.constant(3.0).is_constant
    assert not f.is_constant


def test_field_solution_checks_its_domain():
    sol = FieldSolution(
        label="constant",
        params=ModelParams(),
        jet_fn=lambda t, x: make_jet(PressureKind.EFFECTIVE, np.shape(x), rho=1.0, theta_F=0.5),
        domain=Domain(x_lo=0.0, x_hi=1.0),
    )

    with pytest.raises(DomainError) as exc:
        sol.jet(0.0, 1.5)

    assert exc.value.location == 1.5


def test_field_solution_rejects_a_mislabelled_pressure():
    sol = FieldSolution(
        label="wrong",
        params=ModelParams(),
        jet_fn=lambda t, x: make_jet(PressureKind.HYDROSTATIC, np.shape(x)),
    )

    with pytest.raises(UsageError):
        sol.jet(0.0, 0.0)


def test_hydrostatic_view_adds_osmotic_pressure(coupled_params, manufactured_family68):
    sol = family68_build(coupled_params, manufactured_family68)
    t, x = 0.3, np.linspace(0.0, 1.0, 5)

    values = sol.values(t, x)
    p = sol.pressure(t, x)

    expected = values["pressure"] + coupled_params.T1 * values["c1"] + coupled_params.alpha * coupled_params.T2 * values["c2"]
    np.testing.assert_allclose(p, expected, atol=1e-14)
    np.testing.assert_allclose(sol.as_hydrostatic().effective_pressure(t, x), values["pressure"], atol=1e-14)


def test_family68_corrected_is_exact(manufactured_params, manufactured_family68):
    sol = family68_build(manufactured_params, manufactured_family68)

    report = residual_scan(sol, GRID, manufactured_params)

    assert report.max_linf <= EXACT


def test_family68_variants_coincide_at_unit_fraction_and_stiffness(manufactured_params, manufactured_family68):
    corrected = family68_build(manufactured_params, manufactured_family68, Variant.CORRECTED)
    printed = family68_build(manufactured_params, manufactured_family68, Variant.AS_PRINTED)
    T, X = GRID.mesh()

    a, b = corrected.values(T, X), printed.values(T, X)

    for name in a:
        np.testing.assert_allclose(a[name], b[name], atol=1e-14)


def test_family68_as_printed_fails_with_stiffness(manufactured_family68):
    mp = ModelParams(k=0.1, lambda_star=2.0, D1=0.1, D2=0.1)

    printed = residual_scan(family68_build(mp, manufactured_family68, Variant.AS_PRINTED), GRID, mp)
    corrected = residual_scan(family68_build(mp, manufactured_family68, Variant.CORRECTED), GRID, mp)

    assert corrected.max_linf <= EXACT
    assert printed.max_linf > 1e-3


def test_family68_rate_uses_stiffness_only_when_corrected():
    mp = ModelParams(k=0.5, lambda_star=4.0, D1=2.0, S1=0.5)
    fp = Family68Params(u2=1.0, w1=3.0)

    assert fp.rate(mp, 1, Variant.CORRECTED) == pytest.approx(3.0 * 2.0 - 2.0 * 0.5 * 4.0 * 0.5)
    assert fp.rate(mp, 1, Variant.AS_PRINTED) == pytest.approx(3.0 * 2.0 - 2.0 * 0.5 * 0.5)


FAMILY72 = Family72Params(
    u0=1.0, u1=1.0, theta1=0.2, p1=0.1, rho1=0.1, v1=0.3, v2=0.5, A11=1.0, A12=0.5, A21=1.0, A22=0.0
)


def test_family72_numeric_modes_are_exact(manufactured_params):
    for variant in Variant:
        sol = family72_build(manufactured_params, FAMILY72, span=(0.0, 1.0), variant=variant)
        report = residual_scan(sol, GRID, manufactured_params)
        if variant == Variant.CORRECTED:
            assert report.max_linf <= EXACT
        else:
            # c₂ decays with v₁ instead of v₂
            assert report.linf[4] > 1e-3


def test_family72_printed_flux_operator_breaks_only_the_solute_balances(manufactured_params):
    sol = family72_build(manufactured_params, FAMILY72, printed_flux=True)

    report = residual_scan(sol, GRID, manufactured_params)

    assert sol.label == "family72[printed-flux,corrected]"
    assert report.linf[3] > 1e-3
    assert report.linf[4] > 1e-3
    assert max(report.linf[:3]) <= EXACT
    assert report.linf[5] <= EXACT


def test_family72_refuses_the_singular_point(manufactured_params):
    with pytest.raises(DomainError) as exc:
        family72_build(manufactured_params, FAMILY72, span=(-1.5, 1.0))

    assert exc.value.location == pytest.approx(-1.0)


def test_family72_needs_nonzero_u1():
    with pytest.raises(ValidationError):
        Family72Params(u1=0.0)


BESSEL_PARAMS = ModelParams(k=1.0, lambda_star=1.0, S1=0.5, D1=1.0, D2=1.0)
OSCILLATORY = Family72Params(u0=1.0, u1=1.0, p1=2.0, theta1=0.2, v1=2.0, A11=1.0, A12=0.5, A21=0.0, A22=0.0)


def test_bessel_case_parameters():
    bp = BesselCaseParams.from_family(BESSEL_PARAMS, OSCILLATORY)

    assert bp.branch == BesselBranch.OSCILLATORY
    assert bp.chi == pytest.approx(0.2)
    assert bp.q == pytest.approx(0.4)
    assert bp.nu == pytest.approx(np.sqrt(0.56))
    assert bp.B == pytest.approx(1.0)


def test_oscillatory_bessel_mode_needs_the_power_factor():
    grid = Grid(x_lo=0.0, x_hi=1.0, nx=11, t_lo=0.0, t_hi=1.0, nt=4)
    reports = {}
    for variant in Variant:
        sol = family72_build(BESSEL_PARAMS, OSCILLATORY, mode=ConcentrationMode.BESSEL, variant=variant)
        reports[variant] = residual_scan(sol, grid, BESSEL_PARAMS)

    assert reports[Variant.CORRECTED].max_linf <= EXACT
    assert reports[Variant.AS_PRINTED].linf[3] > 1e-3


def test_bessel_mode_with_complex_order():
    fp = Family72Params(u0=1.0, u1=1.0, p1=2.0, theta1=1.0, v1=-2.0)

    with pytest.raises(ComplexOrderError):
        BesselCaseParams.from_family(BESSEL_PARAMS, fp)


FAMILY75 = Family75Params(u0=0.3, thetaF0=0.6, p1=0.5, v1=0.4, v2=0.7, A11=1.0, A12=0.5, A21=0.2, A22=1.0)


def test_family75_constant_coefficient_modes(manufactured_params):
    corrected = residual_scan(family75_build(manufactured_params, FAMILY75), GRID, manufactured_params)
    printed = residual_scan(family75_build(manufactured_params, FAMILY75, Variant.AS_PRINTED), GRID, manufactured_params)

    assert corrected.max_linf <= EXACT
    assert printed.linf[4] > 1e-3
    assert printed.linf[3] <= EXACT


FAMILY78 = Family78Params(
    v=0.5, u2=0.1, p1=0.4, v1=0.3, v2=0.6, rho0=1.0, thetaF_profile=SmoothFunction.sine(0.1, offset=0.5)
)


def test_family78_travelling_wave(manufactured_params):
    sol = family78_build(manufactured_params, FAMILY78)

    report = residual_scan(sol, GRID, manufactured_params)

    assert report.max_linf <= EXACT
    assert FAMILY78.density_slope(manufactured_params) == pytest.approx((0.4 - 0.2) / 0.25)


def test_family78_as_printed_is_flagged(manufactured_params):
    sol = family78_build(manufactured_params, FAMILY78, variant=Variant.AS_PRINTED)

    report = residual_scan(sol, GRID, manufactured_params)

    assert report.max_linf > 1e-3


def test_example2_constraints(example2_pair):
    _, _, fig = example2_pair

    for name, (given, derived) in fig.constraint_checks().items():
        assert given == pytest.approx(derived, abs=1e-12), name
    assert fig.u1 == pytest.approx(-0.5)
    assert fig.A2 == pytest.approx(fig.A1 / fig.chi * fig.x0 ** (1.0 + fig.chi))


def test_example2_displacement_at_the_outer_edge(example2_pair):
    corrected, printed, fig = example2_pair

    assert float(corrected.jet(1.0, fig.L).u) == pytest.approx(-1.2, abs=1e-12)
    assert float(printed.jet(1.0, fig.L).u) == pytest.approx(-0.2, abs=1e-12)
    assert float(printed.jet(0.7, 0.0).u) == 0.0


def test_example2_no_flux_at_the_inner_edge(example2_pair):
    corrected, _, _ = example2_pair
    t = np.linspace(0.0, 1.0, 11)

    c1_x = corrected.jet(t, np.zeros_like(t)).c1_x

    np.testing.assert_allclose(c1_x, 0.0, atol=1e-12)


def test_example2_residuals(example2_pair):
    corrected, printed, fig = example2_pair
    grid = Grid(x_lo=0.0, x_hi=fig.L, nx=41, t_lo=0.0, t_hi=1.0, nt=10)

    good = residual_scan(corrected, grid, corrected.params)
    bad = residual_scan(printed, grid, printed.params)

    assert good.max_linf <= EXACT
    assert bad.linf[2] == pytest.approx(1.0, abs=1e-3)
    assert bad.argmax[2][1] == 0.0
