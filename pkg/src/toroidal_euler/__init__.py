"""Explicit steady compressible Euler flows on asymmetric toroidal domains, with verification tools."""

from .charts import ChartFamily, DomainSpec, DzGPair, FSpec, inverse, psi_cartesian, surface_presets
from .clebsch import ClebschPotentials, velocity
from .diffgeo import Coords, DomainError, jacobian_det, jet_eval, metric_at
from .physics import BarotropicLaw, density, potential, source
from .verify import ResidualReport, run_suite

__all__ = [
    "BarotropicLaw", "ChartFamily", "ClebschPotentials", "Coords", "DomainError", "DomainSpec", "DzGPair", "FSpec",
    "ResidualReport", "density", "inverse", "jacobian_det", "jet_eval", "metric_at", "potential", "psi_cartesian",
    "run_suite", "source", "surface_presets", "velocity",
]
