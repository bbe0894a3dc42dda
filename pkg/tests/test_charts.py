from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.integrate import quad

from toroidal_euler.charts import (AXISYMMETRIC, ChartFamily, ConvergenceError, DomainSpec, DzGPair, FSpec,
                                   delta_xy_from_f, surface_presets, inverse, psi_cartesian)
from toroidal_euler.diffgeo import TWO_PI, Coords, DomainError
from toroidal_euler.fourier import TrigPoly
from toroidal_euler.grid import random_shell

from .conftest import builtin_cases

CASES = builtin_cases()
F = Fraction


def _wrap(d):
    return (np.asarray(d) + np.pi) % TWO_PI - np.pi


def test_sin2_displacement_closed_form():
    dx, dy = delta_xy_from_f(FSpec.sin2())
    z = np.linspace(0, TWO_PI, 1001)
    np.testing.assert_allclose(dx(z), -np.cos(z) * (1 - np.cos(z) ** 2 / 3), atol=1e-15)
    np.testing.assert_allclose(dy(z), -np.sin(z) ** 3 / 3, atol=1e-15)


def test_sin2_of3_displacement_coefficients():
    dx, dy = delta_xy_from_f(FSpec.sin2_of3())
    assert dx == TrigPoly(0, {1: F(-1, 2), 5: F(-1, 20), 7: F(1, 28)})
    assert dy == TrigPoly(0, {}, {1: F(-1, 2), 5: F(1, 20), 7: F(1, 28)})
    assert dx(0.0) == pytest.approx(-18 / 35, abs=1e-15)


def test_mix_displacement_coefficients():
    dx, dy = delta_xy_from_f(FSpec.mix())
    assert dx == TrigPoly(0, {1: F(-7, 8), 3: F(-1, 12), 5: F(1, 10), 7: F(-3, 112), 9: F(-1, 144)})
    assert dy == TrigPoly(0, {}, {1: F(-7, 8), 3: F(1, 12), 7: F(-5, 112), 9: F(-1, 144)})


def test_first_harmonic_is_rejected():
    with pytest.raises(ValueError, match="first harmonic"):
        delta_xy_from_f(FSpec.fourier(0.0, (1.0,)))


def test_sin2_bounds():
    dx, dy = ChartFamily.f_perturbed(0.3).deltas
    z = np.linspace(0, TWO_PI, 10_000)
    assert np.max(np.abs(dx(z))) <= 2 / 3 + 1e-15
    assert np.max(np.abs(dy(z))) <= 1 / 3 + 1e-15


@pytest.mark.filterwarnings("ignore::scipy.integrate.IntegrationWarning")
@pytest.mark.parametrize("variant", ["sin2", "sin2_of3", "mix"])
def test_displacement_against_adaptive_quadrature(variant):
    fs = FSpec.named(variant)
    dx, dy = delta_xy_from_f(fs)
    f = lambda t: float(fs(t))  # noqa: E731
    # zero-mean constant: -(1/2pi) int_0^2pi (2pi - t) f'(t) dt with f' the integrand
    cx = -quad(lambda t: (TWO_PI - t) * f(t) * np.sin(t), 0, TWO_PI, epsabs=1e-14, limit=200)[0] / TWO_PI
    cy = quad(lambda t: (TWO_PI - t) * f(t) * np.cos(t), 0, TWO_PI, epsabs=1e-14, limit=200)[0] / TWO_PI
    for z in np.linspace(0.05, TWO_PI, 40):
        qx = quad(lambda t: f(t) * np.sin(t), 0, z, epsabs=1e-14, limit=200)[0] + cx
        qy = -quad(lambda t: f(t) * np.cos(t), 0, z, epsabs=1e-14, limit=200)[0] + cy
        assert abs(qx - dx(z)) < 1e-12
        assert abs(qy - dy(z)) < 1e-12


def test_forward_examples():
    np.testing.assert_allclose(ChartFamily.axisymmetric().forward(Coords(0.95, 0, 0)),
                               [1 + np.sqrt(0.05), 0, 0], atol=1e-15)
    np.testing.assert_allclose(ChartFamily.f_perturbed(0.8).forward(Coords(0.95, 0, np.pi / 2)),
                               [0, 1 + np.sqrt(0.05) - 0.8 / 3, 0], atol=1e-15)


def _general_cc1_reference(psi, th, ze, e1, e2, e3):
    s = np.sqrt(1.0 - psi)
    g = np.cos(4 * th) - 10 * np.cos(2 * th)
    dz = -np.sin(4 * th) - 10 * np.sin(2 * th)
    R = 1.0 + s * np.cos(th) + e2 * np.sin(th) - e3 * g
    dx = -0.5 * np.cos(ze) - np.cos(5 * ze) / 20 + np.cos(7 * ze) / 28
    dy = -0.5 * np.sin(ze) + np.sin(5 * ze) / 20 + np.sin(7 * ze) / 28
    return np.array([R * np.cos(ze) + e1 * dx, R * np.sin(ze) + e1 * dy, s * np.sin(th) + e2 * np.cos(th) + e3 * dz])


def test_general_cc1_against_independent_formula():
    chart = surface_presets()["f"]
    np.testing.assert_allclose(chart.forward(Coords(0.95, np.pi / 2, 0.0)),
                               _general_cc1_reference(0.95, np.pi / 2, 0.0, 0.5, 0.05, 0.005), atol=1e-14)
    rng = np.random.default_rng(0)
    c = Coords(rng.uniform(0.8, 0.99, 100), rng.uniform(0, TWO_PI, 100), rng.uniform(0, TWO_PI, 100))
    np.testing.assert_allclose(chart.forward(c), _general_cc1_reference(*c.arrays(), 0.5, 0.05, 0.005).T,
                               atol=1e-14)


def test_forward_rejects_psi_above_axis():
    with pytest.raises(DomainError):
        ChartFamily.axisymmetric().forward(Coords(1.01, 0, 0))


def test_inverse_closed_form_example():
    c = inverse(ChartFamily.axisymmetric(), np.array([1.2, 0.0, 0.1]))
    assert float(c.psi) == pytest.approx(0.95, abs=1e-15)
    assert float(c.theta) == pytest.approx(np.arctan2(0.1, 0.2), abs=1e-15)
    assert float(c.zeta) == 0.0


def test_inverse_iteration_count():
    chart = ChartFamily.f_perturbed(0.3)
    p = chart.forward(Coords(0.9, 1.0, 2.0))
    c, conv, iters = inverse(chart, p[None], return_info=True)
    assert conv.all()
    assert int(np.max(iters)) == 22
    np.testing.assert_allclose(c.stack()[0], [0.9, 1.0, 2.0], atol=1e-12)


@pytest.mark.parametrize("name", sorted(CASES))
def test_round_trip(name):
    chart, dom = CASES[name]
    c = random_shell(dom, 10_000, seed=11)
    back = inverse(chart, chart.forward(c))
    assert np.max(np.abs(back.psi - c.psi)) < 1e-10
    assert np.max(np.abs(_wrap(back.theta - c.theta))) < 1e-10
    assert np.max(np.abs(_wrap(back.zeta - c.zeta))) < 1e-10


@pytest.mark.filterwarnings("ignore::RuntimeWarning")
def test_inverse_reports_non_convergence():
    chart = ChartFamily.f_perturbed(0.3)
    p = np.array([[1.2, 0.0, 0.1], [np.inf, 0.0, 0.0]])
    _, conv, _ = inverse(chart, p, return_info=True)
    assert conv.tolist() == [True, False]
    with pytest.raises(ConvergenceError) as info:
        inverse(chart, p)
    assert info.value.residual is not None


def test_cartesian_domain_predicate():
    chart = ChartFamily.f_perturbed(0.8)
    b = 0.8 * (1 + np.sqrt(2))
    assert chart.in_domain(np.array([b + 0.01, 0, 0]))
    assert not chart.in_domain(np.array([b - 0.01, 0, 0]))
    axi = ChartFamily.axisymmetric()
    assert axi.in_domain(np.array([1e-9, 0, 5]))
    assert not axi.in_domain(np.array([0.0, 0, 5]))


def test_axis_circle_in_m_for_small_eps():
    assert np.all(ChartFamily.f_perturbed(0.1).in_domain(Coords(1.0, np.linspace(0, 6, 7), np.linspace(0, 6, 7))))


@pytest.mark.parametrize("eps", [0.1, 0.3])
def test_psi_cartesian_matches_inverse(eps):
    chart = ChartFamily.f_perturbed(eps)
    c = random_shell(DomainSpec(0.8, 0.99), 10_000, seed=12)
    p = chart.forward(c)
    assert np.max(np.abs(psi_cartesian(chart, p) - inverse(chart, p).psi)) < 1e-11
    assert np.max(np.abs(psi_cartesian(chart, p) - c.psi)) < 1e-11


def test_psi_cartesian_unperturbed_example():
    assert psi_cartesian(ChartFamily.axisymmetric(), np.array([1.2, 0, 0.1])) == pytest.approx(0.95, abs=1e-15)
    with pytest.raises(ValueError):
        psi_cartesian(surface_presets()["e"], np.array([1.2, 0, 0.1]))


def test_dzg_example_pair():
    pair = DzGPair.example()
    assert np.max(np.abs(pair.ode_residual(np.linspace(0, TWO_PI, 1000)))) < 1e-12
    with pytest.raises(ValueError):
        DzGPair(TrigPoly(0, {}, {2: 1}), TrigPoly())


def test_parameter_validation():
    with pytest.raises(ValueError):
        ChartFamily.f_perturbed(-0.1)
    with pytest.raises(ValueError):
        ChartFamily(AXISYMMETRIC, eps=0.1)
    with pytest.raises(ValueError):
        ChartFamily.axisymmetric(r0=float("nan"))


def test_nprime_factor_sin2():
    assert ChartFamily.f_perturbed(0.3).nprime_factor == 1 + np.sqrt(2)


def test_domain_spec_validation():
    with pytest.raises(DomainError):
        DomainSpec(0.5, 0.99).validate(ChartFamily.f_perturbed(0.8))
    with pytest.raises(DomainError):
        DomainSpec(0.5, 1.0).validate(ChartFamily.axisymmetric())
    with pytest.raises(ValueError):
        DomainSpec(0.9, 0.8)
    assert DomainSpec(0.8, 0.99).validate(ChartFamily.f_perturbed(0.3)).in_m


@given(st.sampled_from(sorted(CASES)), st.floats(0.5, 0.99), st.floats(-10, 10), st.floats(-10, 10))
def test_periodicity(name, psi, theta, zeta):
    chart = CASES[name][0]
    base = chart.forward(Coords(psi, theta, zeta))
    # theta + 2 pi is itself rounded, so agreement is to a few ulps of the angle
    th2 = theta + TWO_PI
    ze2 = zeta + TWO_PI
    np.testing.assert_allclose(chart.forward(Coords(psi, th2, zeta)), base, atol=1e-13)
    np.testing.assert_allclose(chart.forward(Coords(psi, theta, ze2)), base, atol=1e-13)


def test_chart_with_first_harmonic_is_rejected():
    with pytest.raises(ValueError, match="first harmonic"):
        ChartFamily.f_perturbed(0.1, FSpec.fourier(0.0, (0.0, 0.5), (0.2,)))
