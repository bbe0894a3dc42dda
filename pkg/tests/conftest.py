import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from toroidal_euler.charts import ChartFamily, DomainSpec, FSpec, surface_presets

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def builtin_cases():
    """Charts with a shell inside the set where the Jacobian is positive."""
    p = surface_presets()
    return {
        "axisymmetric": (p["a"], DomainSpec(0.5, 0.99)),
        "sin2_eps0.3": (ChartFamily.f_perturbed(0.3), DomainSpec(0.8, 0.99)),
        "sin2_eps0.8": (p["b"], DomainSpec(0.965, 0.995)),
        "sin2_of3_eps0.7": (p["c"], DomainSpec(0.915, 0.99)),
        "general_cc1_e": (p["e"], DomainSpec(0.88, 0.96)),
        "general_cc1_f": (p["f"], DomainSpec(0.88, 0.96)),
    }


@pytest.fixture(params=sorted(builtin_cases()))
def case(request):
    return builtin_cases()[request.param]


@pytest.fixture
def sin2_03():
    return ChartFamily.f_perturbed(0.3, FSpec.sin2())


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


class BrokenChart:
    """The ``f = sin^2`` chart with an axis displacement that is not generated by ``f``.

    ``dx = cos(2 zeta) / 2`` and ``dy = 0`` break ``dx' = f sin``, so the map
    violates the theta-zeta compatibility condition.
    """

    def __init__(self, eps=0.3):
        self.base = ChartFamily.f_perturbed(eps)
        self.psi0 = self.base.psi0
        self.eps = eps

    def embed(self, psi, theta, zeta):
        from toroidal_euler import jets

        R, Z = self.base._poloidal(psi, theta)
        return R * jets.cos(zeta) + 0.5 * self.eps * jets.cos(2.0 * zeta), R * jets.sin(zeta), Z


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(test_acceptance.RESULTS[n])
