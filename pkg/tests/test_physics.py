import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from toroidal_euler.charts import ChartFamily, DomainSpec
from toroidal_euler.diffgeo import Coords
from toroidal_euler.grid import random_shell
from toroidal_euler.physics import (BarotropicLaw, RangeError, barotropic_residual, bernoulli, density, flow_state,
                                    momentum_residual, potential, shell_integral, source)
from toroidal_euler.verify import CartesianFlow, analytic_divergence

SHELL = DomainSpec(0.8, 0.99)
CHART = ChartFamily.f_perturbed(0.3)


def test_isothermal_reference_density():
    assert BarotropicLaw.isothermal().density_from_enthalpy(0.0) == 1.0


def test_polytropic_closed_form():
    law = BarotropicLaw.polytropic(kappa=1.0, gamma=2.0)
    assert law.density_from_enthalpy(3.0) == pytest.approx(1.5, rel=1e-15)
    assert law.enthalpy(1.5) == pytest.approx(3.0, rel=1e-15)


def test_polytropic_range_error_reports_value():
    law = BarotropicLaw.polytropic()
    with pytest.raises(RangeError) as info:
        law.density_from_enthalpy(np.array([1.0, -0.25]))
    assert info.value.value == -0.25
    c = random_shell(SHELL, 20)
    with pytest.raises(RangeError):
        density(law, CHART, c)
    assert np.all(density(law, CHART, c, pressure_offset=-3.0) > 0)


def test_invalid_laws():
    with pytest.raises(ValueError):
        BarotropicLaw.polytropic(gamma=1.0)
    with pytest.raises(ValueError):
        BarotropicLaw.isothermal(c2=0.0)
    with pytest.raises(ValueError):
        BarotropicLaw("adiabatic")


laws = st.one_of(st.builds(BarotropicLaw.polytropic, st.floats(0.1, 5), st.floats(1.1, 3)),
                 st.builds(BarotropicLaw.isothermal, st.floats(0.1, 5)))


@given(laws, st.floats(1e-3, 50))
def test_enthalpy_round_trip(law, v):
    assert law.enthalpy(law.density_from_enthalpy(v)) == pytest.approx(v, rel=1e-14, abs=1e-14)


@given(laws, st.floats(1e-3, 10), st.floats(1e-3, 10))
def test_enthalpy_increasing(law, a, b):
    if a < b:
        assert law.enthalpy(a) < law.enthalpy(b)


def test_isothermal_density_on_shell():
    c = random_shell(SHELL, 200, seed=1)
    psi, u = flow_state(CHART, c)
    rho = density(BarotropicLaw.isothermal(), CHART, c)
    np.testing.assert_allclose(rho, np.exp(-psi - 0.5 * np.sum(u * u, axis=-1)), rtol=1e-15)
    np.testing.assert_allclose(bernoulli(psi, u, 0.5), bernoulli(psi, u) - 0.5, rtol=1e-15)


def test_density_from_cartesian_matches_coords():
    c = random_shell(SHELL, 50, seed=2)
    law = BarotropicLaw.isothermal(2.0)
    np.testing.assert_allclose(density(law, CHART, CHART.forward(c), seed_zeta=c.zeta), density(law, CHART, c),
                               rtol=1e-12)


def test_potential_vanishes_with_derived_density():
    c = random_shell(SHELL, 200, seed=3)
    for law, off in ((BarotropicLaw.isothermal(), 0.0), (BarotropicLaw.polytropic(), -3.0)):
        assert np.max(np.abs(potential(law, CHART, c, pressure_offset=off))) < 1e-15


def test_potential_with_constant_density():
    c = random_shell(SHELL, 200, seed=4)
    law = BarotropicLaw.isothermal()
    psi, u = flow_state(CHART, c)
    v = potential(law, CHART, c, rho=2.0)
    np.testing.assert_allclose(v, -psi - 0.5 * np.sum(u * u, axis=-1) - np.log(2.0), rtol=1e-15)
    assert np.ptp(v) > 0.05
    np.testing.assert_allclose(potential(law, CHART, c, rho=lambda p: np.full(p.shape[:-1], 2.0)), v, rtol=1e-15)


def test_barotropic_consistency():
    c = random_shell(SHELL, 100, seed=5)
    for law, off in ((BarotropicLaw.isothermal(), 0.0), (BarotropicLaw.polytropic(2.0, 1.4), -3.0)):
        assert np.max(barotropic_residual(law, CHART, c, pressure_offset=off)) < 1e-8


def test_momentum_balance_with_supplied_density():
    c = random_shell(SHELL, 100, seed=6)
    rho = lambda p: 1.0 + 0.1 * p[..., 0] ** 2  # noqa: E731
    assert np.max(momentum_residual(BarotropicLaw.isothermal(), CHART, c, rho)) < 1e-6


def test_constant_density_source_unperturbed():
    chart = ChartFamily.axisymmetric()
    c = random_shell(SHELL, 200, seed=7)
    p = chart.forward(c)
    s = source(BarotropicLaw.isothermal(), chart, c, rho0=1.7)
    np.testing.assert_allclose(s, 1.7 * p[:, 2] / np.hypot(p[:, 0], p[:, 1]), atol=1e-14)


def test_constant_density_source_matches_divergence():
    c = random_shell(SHELL, 200, seed=8)
    s = source(BarotropicLaw.isothermal(), CHART, c, rho0=2.5)
    np.testing.assert_allclose(s / 2.5, analytic_divergence(CHART, c), rtol=1e-12, atol=1e-15)


def test_fd_source_reduces_to_rho_div_u():
    # |u|^2 = g_tt = psi0 - psi for this family, so rho depends on psi alone and u . grad rho = 0
    c = random_shell(SHELL, 50, seed=9)
    law = BarotropicLaw.isothermal()
    s = source(law, CHART, c)
    rho = density(law, CHART, c)
    assert np.max(np.abs(s - rho * analytic_divergence(CHART, c))) < 1e-9


def test_source_integrates_to_zero_over_shell():
    law = BarotropicLaw.isothermal()
    total, scale = shell_integral(CHART, SHELL, lambda cc: source(law, CHART, cc.reduced()), n=(4, 24, 24))
    assert abs(total) < 1e-5 * scale
    const, cscale = shell_integral(CHART, SHELL, lambda cc: source(law, CHART, cc, rho0=1.0))
    assert abs(const) < 1e-12 * cscale


class _OutwardLeak(CartesianFlow):
    """The constructed flow plus a small horizontal outward component."""

    def evaluate(self, p, seed_zeta=None):
        u, psi, ok = super().evaluate(p, seed_zeta)
        r = np.hypot(p[:, 0], p[:, 1])
        return u + 0.05 * np.stack([p[:, 0] / r, p[:, 1] / r, 0 * r], axis=-1), psi, ok


def test_non_tangent_flow_has_net_source():
    law = BarotropicLaw.isothermal()
    flow = _OutwardLeak(CHART)
    total, scale = shell_integral(CHART, SHELL, lambda cc: source(law, CHART, cc.reduced(), flow=flow), n=(4, 24, 24))
    assert abs(total) > 1e-3 * scale


def test_shell_integral_volume():
    vol, _ = shell_integral(ChartFamily.axisymmetric(), DomainSpec(0.0, 0.99), lambda c: np.ones(c.shape),
                            n=(32, 8, 8))
    # torus of minor radius 1 minus a core of radius 0.1, major radius 1
    assert vol == pytest.approx(2 * np.pi ** 2 * (1.0 - 0.01), rel=1e-12)


def test_flow_state_from_coords_is_tangent():
    psi, u = flow_state(CHART, Coords(0.9, 0.0, 0.0))
    assert float(psi) == 0.9 and u.shape == (3,)
