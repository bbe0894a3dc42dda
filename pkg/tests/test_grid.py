import numpy as np
import pytest

from toroidal_euler.charts import ChartFamily, DomainSpec
from toroidal_euler.grid import angle_grid, cartesian_interior, length_scale, random_level_set, random_shell


def test_random_shell_is_seeded_and_bounded():
    a = random_shell(DomainSpec(0.8, 0.9), 100, seed=3)
    b = random_shell(DomainSpec(0.8, 0.9), 100, seed=3)
    assert np.array_equal(a.stack(), b.stack())
    assert np.all((a.psi >= 0.8) & (a.psi <= 0.9))
    assert np.all(random_level_set(0.95, 10).psi == 0.95)


def test_closed_angle_grid_reuses_angle_zero():
    g = angle_grid(0.95, 4, 6, closed=True)
    assert g.theta.shape == (5, 7)
    assert np.array_equal(g.theta[-1], g.theta[0]) and np.array_equal(g.zeta[:, -1], g.zeta[:, 0])
    with pytest.raises(ValueError):
        angle_grid(0.95, 1, 6)


def test_cartesian_interior_respects_image_bound():
    chart = ChartFamily.f_perturbed(0.3)
    p, c = cartesian_interior(chart, DomainSpec(0.8, 0.99), 50, require_nprime=True)
    assert p.shape == (50, 3)
    assert np.all(chart.in_domain_cartesian(p))
    np.testing.assert_allclose(chart.forward(c), p)


def test_length_scale_of_torus():
    # outer surface psi = 0.8 has minor radius sqrt(0.2)
    a = np.sqrt(0.2)
    L = length_scale(ChartFamily.axisymmetric(), DomainSpec(0.8, 0.99), n=64)
    assert L == pytest.approx(np.sqrt(2 * (2 * (1 + a)) ** 2 + (2 * a) ** 2), rel=1e-3)
