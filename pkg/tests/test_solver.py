import numpy as np
import pytest

from src.core.exceptions import ConfigurationError, OrderUndefinedError, UsageError
from src.core.families import Family68Params, FieldSolution, family68_build, make_jet
from src.core.model import ModelParams, PressureKind
from src.core.solver import (
    BoundaryCondition,
    BoundaryConditions,
    BoundaryKind,
    DerivativeSource,
    Grid,
    convergence_order,
    manufactured_study,
    residual_refinement,
    residual_scan,
    solve_ibvp,
    stability_limit,
)

C1, C2 = 3, 4


def test_convergence_order_of_a_second_order_sequence():
    orders = convergence_order([(0.1, 1e-2), (0.05, 2.5e-3), (0.025, 6.25e-4)])

    assert orders == pytest.approx([2.0, 2.0])


def test_convergence_order_usage():
    with pytest.raises(UsageError):
        convergence_order([(0.1, 1e-2)])
    with pytest.raises(UsageError):
        convergence_order([(0.05, 1e-2), (0.1, 2e-2)])
    with pytest.raises(OrderUndefinedError):
        convergence_order([(0.1, 1e-2), (0.05, 0.0)])


def test_stability_limit(manufactured_params):
    # min(0.05²/0.1, 0.05/1, 0.1·1) = 0.025
    assert stability_limit(manufactured_params, 0.05, 1.0) == pytest.approx(0.01)


def test_stability_limit_bounds_the_darcy_damping(manufactured_params):
    mp = manufactured_params.model_copy(update={"k": 0.01})

    # min(0.05²/0.1, 0.05/1, 0.01·1) = 0.01
    assert stability_limit(mp, 0.05, 1.0) == pytest.approx(0.004)


def test_grid_geometry():
    grid = Grid(x_lo=0.0, x_hi=2.0, nx=5, t_lo=0.0, t_hi=1.0, nt=4)
    T, X = grid.mesh()

    assert grid.h == pytest.approx(0.5)
    assert grid.dt == pytest.approx(0.25)
    assert T.shape == X.shape == (5, 5)


def test_grid_must_be_ordered():
    with pytest.raises(ValueError):
        Grid(x_lo=1.0, x_hi=0.0)


def _constant_state() -> FieldSolution:
    return FieldSolution(
        label="rest",
        params=ModelParams(),
        jet_fn=lambda t, x: make_jet(PressureKind.EFFECTIVE, np.shape(x), rho=1.0, theta_F=0.5, c1=2.0),
    )


@pytest.mark.parametrize("source", list(DerivativeSource))
def test_residual_of_a_constant_state_vanishes(source):
    grid = Grid(nx=11, nt=5)

    report = residual_scan(_constant_state(), grid, ModelParams(), source=source)

    assert report.max_linf == 0.0
    assert len(report.rows()) == 6


def test_fd_residual_converges_at_second_order(manufactured_params, manufactured_family68):
    sol = family68_build(manufactured_params, manufactured_family68)
    grid = Grid(nx=11, nt=5)

    report = residual_refinement(sol, grid, manufactured_params)

    assert report.source == DerivativeSource.FD
    assert report.h == pytest.approx(2.5e-3)
    for i in (C1, C2):
        assert report.orders[i] is not None
        assert all(1.8 <= order <= 2.2 for order in report.orders[i])


def test_refinement_needs_three_steps(manufactured_params, manufactured_family68):
    sol = family68_build(manufactured_params, manufactured_family68)

    with pytest.raises(UsageError):
        residual_refinement(sol, Grid(nx=5, nt=2), manufactured_params, steps=(1e-2, 5e-3))


def test_discrete_solution_has_no_analytic_residual(manufactured_params):
    rest = family68_build(manufactured_params, Family68Params(w1=0.0, w2=0.0, thetaF0=0.5))
    grid = Grid(nx=11, nt=5, t_hi=0.05)
    discrete = solve_ibvp(manufactured_params, rest, BoundaryConditions.from_solution(rest, 0.0, 1.0), grid)

    with pytest.raises(UsageError):
        residual_scan(discrete, grid, manufactured_params)


def test_equilibrium_is_preserved(manufactured_params):
    rest = family68_build(manufactured_params, Family68Params(w1=0.0, w2=0.0, thetaF0=0.5))
    grid = Grid(nx=21, nt=1000, t_lo=0.0, t_hi=1.0)
    bc = BoundaryConditions.from_solution(rest, 0.0, 1.0)

    discrete = solve_ibvp(manufactured_params, rest, bc, grid)

    assert discrete.analytic is False
    assert discrete.label == "ibvp[nx=21,nt=1000]"
    values = discrete.values(np.full(grid.nx, 1.0), grid.x)
    np.testing.assert_allclose(values["u"], 0.0, atol=1e-12)
    np.testing.assert_allclose(values["rho"], 1.0, atol=1e-12)
    np.testing.assert_allclose(values["theta_F"], 0.5, atol=1e-12)
    np.testing.assert_allclose(values["c1"], 1.0, atol=1e-12)
    np.testing.assert_allclose(values["pressure"], 0.0, atol=1e-12)


def test_time_step_above_the_stability_bound(manufactured_params):
    rest = family68_build(manufactured_params, Family68Params(w1=0.0, w2=0.0))
    grid = Grid(nx=21, nt=10)

    with pytest.raises(ConfigurationError, match="stability"):
        solve_ibvp(manufactured_params, rest, BoundaryConditions.from_solution(rest, 0.0, 1.0), grid)


def test_solver_needs_linear_stress(manufactured_params):
    mp = manufactured_params.model_copy(update={"kappa": 0.5})
    rest = family68_build(mp, Family68Params(w1=0.0, w2=0.0))

    with pytest.raises(ConfigurationError, match="kappa"):
        solve_ibvp(mp, rest, BoundaryConditions.from_solution(rest, 0.0, 1.0), Grid(nx=11, nt=100))


def test_displacement_needs_dirichlet_data(manufactured_params):
    rest = family68_build(manufactured_params, Family68Params(w1=0.0, w2=0.0))
    bc = BoundaryConditions.from_solution(rest, 0.0, 1.0)
    loose = BoundaryConditions(
        u=(BoundaryCondition.neumann(lambda t: 0.0), bc.u[1]), p_star=bc.p_star, c1=bc.c1, c2=bc.c2
    )

    with pytest.raises(ConfigurationError):
        solve_ibvp(manufactured_params, rest, loose, Grid(nx=11, nt=100))


def test_boundary_combinations():
    zero = BoundaryCondition.constant(0.0)
    flux = BoundaryCondition.neumann(lambda t: 0.0)

    BoundaryConditions(u=(zero, zero), p_star=(zero, flux), c1=(flux, zero), c2=(zero, zero)).validate()
    with pytest.raises(ConfigurationError):
        BoundaryConditions(u=(zero, zero), p_star=(flux, flux), c1=(zero, zero), c2=(zero, zero)).validate()
    with pytest.raises(ConfigurationError):
        BoundaryConditions(u=(zero, zero), p_star=(zero, zero), c1=(zero, BoundaryCondition()), c2=(zero, zero)).validate()
    with pytest.raises(ConfigurationError):
        BoundaryConditions(
            u=(zero, zero), p_star=(zero, zero), c1=(zero, zero), c2=(zero, zero), rho=(flux, zero)
        ).validate()


def test_boundary_data_read_from_an_exact_solution(manufactured_params, manufactured_family68):
    sol = family68_build(manufactured_params, manufactured_family68)

    bc = BoundaryConditions.from_solution(sol, 0.0, 1.0)

    values = sol.values(np.array([0.3, 0.3]), np.array([0.0, 1.0]))
    jet = sol.jet(0.3, 1.0)
    assert all(pair[0].kind == BoundaryKind.DIRICHLET for pair in (bc.u, bc.p_star, bc.c1, bc.c2))
    assert bc.u[0].at(0.3) == pytest.approx(values["u"][0])
    assert bc.c2[1].at(0.3) == pytest.approx(values["c2"][1])
    assert bc.u[1].rate_at(0.3) == pytest.approx(float(jet.u_t))


def test_manufactured_solution_converges_in_space(manufactured_params, manufactured_family68):
    exact = family68_build(manufactured_params, manufactured_family68)

    study = manufactured_study(exact, manufactured_params)

    assert len(study.steps) == 3
    for name in ("c1", "c2"):
        assert study.orders[name] is not None
    for name in ("u", "c1", "c2", "pressure"):
        orders = study.orders[name]
        assert orders is None or all(1.8 <= order <= 2.2 for order in orders), (name, orders)
    assert len(study.rows()) == 12
