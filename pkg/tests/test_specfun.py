import math

import numpy as np
import pytest

from src.core.exceptions import AccuracyError, BracketError, BranchError, DomainError, RangeError, SingularityError
from src.core.specfun import (
    BesselKind,
    BesselTag,
    RootCase,
    bessel,
    bessel_array,
    bessel_derivative,
    constant_coeff_fundamental,
    fundamental_system,
    integrate_adaptive,
    root_bracketed,
)


def J(nu):
    return BesselKind(BesselTag.J, nu)


def Y(nu):
    return BesselKind(BesselTag.Y, nu)


def I(nu):  # noqa: E743
    return BesselKind(BesselTag.I, nu)


def K(nu):
    return BesselKind(BesselTag.K, nu)


@pytest.mark.parametrize("x", [0.3, 1.0, 5.0, 20.0, 45.0])
def test_half_order_closed_forms(x):
    scale = math.sqrt(2.0 / (math.pi * x))

    assert bessel(J(0.5), x) == pytest.approx(scale * math.sin(x), rel=1e-9, abs=1e-10)
    assert bessel(Y(0.5), x) == pytest.approx(-scale * math.cos(x), rel=1e-9, abs=1e-10)
    assert bessel(K(0.5), x) == pytest.approx(math.sqrt(math.pi / (2.0 * x)) * math.exp(-x), rel=1e-9)
    assert bessel(I(0.5), x) == pytest.approx(scale * math.sinh(x), rel=1e-9)


WRONSKIAN_ORDERS = [0.0, 1.0 / 3.0, 1.0, 2.5]
WRONSKIAN_POINTS = [0.5, 2.0, 10.0, 20.0]


@pytest.mark.parametrize("nu", WRONSKIAN_ORDERS)
@pytest.mark.parametrize("x", WRONSKIAN_POINTS)
def test_wronskian_of_first_and_second_kind(nu, x):
    w = bessel(J(nu), x) * bessel_derivative(Y(nu), x) - bessel_derivative(J(nu), x) * bessel(Y(nu), x)

    assert w == pytest.approx(2.0 / (math.pi * x), rel=1e-9)


@pytest.mark.parametrize("nu", WRONSKIAN_ORDERS)
@pytest.mark.parametrize("x", WRONSKIAN_POINTS)
def test_wronskian_of_modified_kinds(nu, x):
    w = bessel(I(nu), x) * bessel_derivative(K(nu), x) - bessel_derivative(I(nu), x) * bessel(K(nu), x)

    assert w == pytest.approx(-1.0 / x, rel=1e-9)


def test_j_one_third_wronskian_at_two():
    nu, x = 1.0 / 3.0, 2.0
    w = bessel(J(nu), x) * bessel_derivative(Y(nu), x) - bessel_derivative(J(nu), x) * bessel(Y(nu), x)

    assert abs(w - 2.0 / (math.pi * x)) <= 1e-9


def test_j_half_at_half_pi():
    assert bessel(J(0.5), math.pi / 2.0) == pytest.approx(2.0 / math.pi, rel=0, abs=1e-10)


def test_values_at_the_origin():
    assert bessel(J(0), 0.0) == 1.0
    assert bessel(J(2.5), 0.0) == 0.0
    assert bessel(I(0), 0.0) == 1.0
    assert bessel_derivative(J(1), 0.0) == 0.5
    assert bessel_derivative(J(0), 0.0) == 0.0


@pytest.mark.parametrize("kind", [Y(0), K(1.5)])
def test_second_kind_is_singular_at_the_origin(kind):
    with pytest.raises(SingularityError) as exc:
        bessel(kind, 0.0)

    assert exc.value.location == 0.0


def test_fractional_derivative_below_one_is_unbounded_at_the_origin():
    with pytest.raises(SingularityError):
        bessel_derivative(J(0.5), 0.0)


@pytest.mark.parametrize("nu, x", [(10.5, 1.0), (1.0, 51.0), (1.0, -0.1), (1.0, math.nan)])
def test_outside_the_envelope(nu, x):
    with pytest.raises(RangeError):
        bessel(J(nu), x)


def test_negative_order_is_rejected():
    with pytest.raises(RangeError):
        BesselKind(BesselTag.J, -1.0)


def test_array_evaluation_keeps_shape_and_repeats():
    x = np.array([[1.0, 2.0], [1.0, 3.0]])

    values = bessel_array(J(1.0), x)

    assert values.shape == (2, 2)
    assert values[0, 0] == values[1, 0]
    assert values[1, 1] == pytest.approx(bessel(J(1.0), 3.0))


@pytest.mark.parametrize("tag", ["jv", "yv", "iv", "kv"])
@pytest.mark.parametrize("nu", [0.0, 0.5, 1.0, 2.5, 3.7])
@pytest.mark.parametrize("x", [0.5, 3.0, 15.0, 40.0])
def test_matches_reference_library(tag, nu, x):
    special = pytest.importorskip("scipy.special")
    kinds = {"jv": J, "yv": Y, "iv": I, "kv": K}

    expected = getattr(special, tag)(nu, x)

    assert bessel(kinds[tag](nu), x) == pytest.approx(expected, rel=1e-9, abs=1e-10)


def test_quadrature_of_smooth_integrands():
    assert integrate_adaptive(np.sin, 0.0, math.pi) == pytest.approx(2.0, abs=1e-12)
    assert integrate_adaptive(np.sin, math.pi, 0.0) == pytest.approx(-2.0, abs=1e-12)
    assert integrate_adaptive(np.exp, 1.0, 1.0) == 0.0
    assert integrate_adaptive(lambda x: 1.0 / (1.0 + x * x), 0.0, 1.0) == pytest.approx(math.pi / 4, abs=1e-12)


@pytest.mark.parametrize("degree", range(7))
def test_quadrature_is_exact_on_low_degree_polynomials(degree):
    expected = (2.0 ** (degree + 1) - (-1.0) ** (degree + 1)) / (degree + 1)

    assert integrate_adaptive(lambda x: x**degree, -1.0, 2.0) == pytest.approx(expected, rel=0, abs=1e-12)


def test_quadrature_budget_exhaustion():
    with pytest.raises(AccuracyError):
        integrate_adaptive(lambda x: 1.0 / np.sqrt(x), 0.0, 1.0, tol=1e-14, max_subdivisions=2)


def test_root_bracketed():
    assert root_bracketed(math.cos, 0.0, 2.0) == pytest.approx(math.pi / 2, abs=1e-12)
    assert root_bracketed(lambda x: x**3 - 2.0, 0.0, 2.0) == pytest.approx(2.0 ** (1 / 3), abs=1e-12)
    assert root_bracketed(lambda x: x - 1.0, 1.0, 3.0) == 1.0


def test_root_needs_a_sign_change():
    with pytest.raises(BracketError):
        root_bracketed(lambda x: x * x + 1.0, -1.0, 1.0)


def test_numeric_fundamental_system_of_the_harmonic_oscillator():
    pair = fundamental_system(lambda x: 1.0, lambda x: 0.0, lambda x: 1.0, 0.0, (-1.0, 2.0))
    x = np.linspace(-1.0, 2.0, 31)

    np.testing.assert_allclose(pair.first(x), np.cos(x), atol=1e-8)
    np.testing.assert_allclose(pair.second(x), np.sin(x), atol=1e-8)
    np.testing.assert_allclose(pair.first(x, 1), -np.sin(x), atol=1e-8)
    np.testing.assert_allclose(pair.second(x, 2), -np.sin(x), atol=1e-8)
    np.testing.assert_allclose(pair.wronskian(x), 1.0, atol=1e-8)
    assert pair.anchor == 0.0


def test_fundamental_system_holds_cos_and_sin_over_a_long_span():
    pair = fundamental_system(lambda x: 1.0, lambda x: 0.0, lambda x: 1.0, 0.0, (0.0, 10.0))
    x = np.linspace(0.0, 10.0, 201)

    np.testing.assert_allclose(pair.first(x), np.cos(x), rtol=0, atol=1e-10)
    np.testing.assert_allclose(pair.second(x), np.sin(x), rtol=0, atol=1e-10)


@pytest.mark.parametrize("anchor", [0.0, 1.0, 2.0])
def test_fundamental_system_wronskian_follows_abel(anchor):
    # (1 + x²)f″ + x f′ + f = 0, W(x) = exp(−∫ x/(1 + x²)) = √((1 + x₀²)/(1 + x²))
    pair = fundamental_system(lambda x: 1.0 + x * x, lambda x: x, lambda x: 1.0, anchor, (0.0, 2.0))
    x = np.linspace(0.0, 2.0, 41)

    expected = np.sqrt((1.0 + anchor * anchor) / (1.0 + x * x))

    np.testing.assert_allclose(pair.wronskian(x), expected, rtol=0, atol=1e-9)
    assert pair.wronskian(anchor) == pytest.approx(1.0, abs=1e-12)


def test_numeric_fundamental_system_reproduces_bessel():
    nu = 1.5
    pair = fundamental_system(lambda x: x * x, lambda x: x, lambda x: x * x - nu * nu, 1.0, (1.0, 5.0))
    mode = pair.combine(bessel(J(nu), 1.0), bessel_derivative(J(nu), 1.0))

    for x in (2.0, 3.5, 5.0):
        assert mode(x) == pytest.approx(bessel(J(nu), x), abs=1e-7)


def test_fundamental_system_locates_a_vanishing_leading_coefficient():
    with pytest.raises(SingularityError) as exc:
        fundamental_system(lambda x: x - 0.5, lambda x: 0.0, lambda x: 1.0, 0.9, (0.0, 1.0))

    assert exc.value.location == pytest.approx(0.5, abs=1e-9)


def test_fundamental_system_locates_a_touching_zero():
    with pytest.raises(SingularityError) as exc:
        fundamental_system(lambda x: (x - 0.3) ** 2, lambda x: 0.0, lambda x: 1.0, 0.9, (0.0, 1.0))

    assert exc.value.location == pytest.approx(0.3, abs=1e-6)


def test_small_but_uniform_leading_coefficient_is_regular():
    pair = fundamental_system(lambda x: 1e-8, lambda x: 0.0, lambda x: 0.0, 0.0, (0.0, 1.0))

    assert pair.second(0.5) == pytest.approx(0.5)


def test_fundamental_system_anchor_inside_span():
    with pytest.raises(DomainError):
        fundamental_system(lambda x: 1.0, lambda x: 0.0, lambda x: 1.0, 3.0, (0.0, 1.0))


def test_dense_output_refuses_extrapolation():
    pair = fundamental_system(lambda x: 1.0, lambda x: 0.0, lambda x: 1.0, 0.0, (0.0, 1.0))

    with pytest.raises(DomainError):
        pair.first(1.5)


def test_constant_coefficient_cases():
    x = np.linspace(0.0, 2.0, 9)

    pair, roots = constant_coeff_fundamental(1.0, 0.0, 1.0)
    assert roots.case == RootCase.COMPLEX
    np.testing.assert_allclose(pair.first(x), np.cos(x), atol=1e-14)
    np.testing.assert_allclose(pair.second(x), np.sin(x), atol=1e-14)

    pair, roots = constant_coeff_fundamental(1.0, 2.0, 1.0)
    assert roots.case == RootCase.REPEATED
    np.testing.assert_allclose(pair.second(x), x * np.exp(-x), atol=1e-14)

    pair, roots = constant_coeff_fundamental(1.0, -3.0, 2.0)
    assert roots.case == RootCase.DISTINCT
    assert sorted(r.real for r in roots.roots) == pytest.approx([1.0, 2.0])
    for mode in (pair.first, pair.second):
        residual = mode(x, 2) - 3.0 * mode(x, 1) + 2.0 * mode(x)
        np.testing.assert_allclose(residual, 0.0, atol=1e-10)


def test_constant_coefficient_needs_second_order_term():
    with pytest.raises(BranchError):
        constant_coeff_fundamental(0.0, 1.0, 1.0)
