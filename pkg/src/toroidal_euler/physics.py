"""Density, continuity source and external potential for the constructed flows.

A pair ``(u, P)`` with ``(curl u) x u = grad P`` is a steady compressible
Euler state in two ways: with an external potential ``V = -P - u^2/2 - h(rho)``
and no mass source, or with a source ``S = div(rho u)`` where
``h(rho) = -P - u^2/2``.  ``h`` is the specific enthalpy of a barotropic law,
``grad P' = rho grad h``.

The constructed pressure is only defined up to an additive constant; the
``pressure_offset`` argument shifts it (``P = psi + offset``) so that
``-P - u^2/2`` falls inside the range of a polytropic ``h``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .charts import inverse
from .diffgeo import THETA, Coords, jet_eval
from .fd import central_difference

POLYTROPIC = "polytropic"
ISOTHERMAL = "isothermal"


class RangeError(ValueError):
    """``-P - u^2/2`` lies outside the range of the enthalpy function."""

    def __init__(self, msg, value):
        super().__init__(msg)
        self.value = value


@dataclass(frozen=True)
class BarotropicLaw:
    """``P' = kappa rho^gamma`` (polytropic) or ``P' = c2 rho`` (isothermal, ``h = c2 ln rho``)."""

    variant: str
    kappa: float = 1.0
    gamma: float = 2.0
    c2: float = 1.0

    def __post_init__(self):
        if self.variant == POLYTROPIC:
            if not (self.kappa > 0 and self.gamma > 1):
                raise ValueError("polytropic law needs kappa > 0 and gamma > 1")
        elif self.variant == ISOTHERMAL:
            if not self.c2 > 0:
                raise ValueError("isothermal law needs c2 > 0")
        else:
            raise ValueError(f"unknown barotropic variant {self.variant!r}")

    @classmethod
    def polytropic(cls, kappa: float = 1.0, gamma: float = 2.0):
        return cls(POLYTROPIC, kappa=kappa, gamma=gamma)

    @classmethod
    def isothermal(cls, c2: float = 1.0):
        return cls(ISOTHERMAL, c2=c2)

    def pressure(self, rho):
        rho = np.asarray(rho, dtype=float)
        if self.variant == POLYTROPIC:
            return self.kappa * rho ** self.gamma
        return self.c2 * rho

    def enthalpy(self, rho):
        rho = np.asarray(rho, dtype=float)
        if self.variant == POLYTROPIC:
            return self.kappa * self.gamma / (self.gamma - 1.0) * rho ** (self.gamma - 1.0)
        return self.c2 * np.log(rho)

    def density_from_enthalpy(self, h):
        h = np.asarray(h, dtype=float)
        if self.variant == POLYTROPIC:
            bad = ~(h > 0)
            if np.any(bad):
                worst = float(np.min(h))
                raise RangeError(f"polytropic enthalpy must be positive, got {worst:.6g}; "
                                 f"lower pressure_offset by at least {-worst:.6g}", worst)
            return (h * (self.gamma - 1.0) / (self.kappa * self.gamma)) ** (1.0 / (self.gamma - 1.0))
        return np.exp(h / self.c2)


def flow_state(chart, point, seed_zeta=None):
    """``(psi, u)`` at chart coordinates or Cartesian points."""
    if isinstance(point, Coords):
        c = point
    else:
        c = inverse(chart, point, seed_zeta=seed_zeta)
    return c.arrays()[0], -jet_eval(chart, c).tangent(THETA)


def bernoulli(psi, u, pressure_offset: float = 0.0):
    """``-P - |u|^2 / 2`` with ``P = psi + pressure_offset``."""
    return -(psi + pressure_offset) - 0.5 * np.sum(u * u, axis=-1)


def density(law: BarotropicLaw, chart, point, *, pressure_offset: float = 0.0, seed_zeta=None):
    psi, u = flow_state(chart, point, seed_zeta)
    return law.density_from_enthalpy(bernoulli(psi, u, pressure_offset))


def _resolve_rho(rho, p):
    if callable(rho):
        return np.asarray(rho(p), dtype=float)
    return np.broadcast_to(np.asarray(rho, dtype=float), np.shape(p)[:-1])


def potential(law: BarotropicLaw, chart, point, *, rho=None, pressure_offset: float = 0.0, seed_zeta=None):
    """``V = -P - |u|^2/2 - h(rho)``.

    ``rho`` may be None (the density from :func:`density`, giving ``V = 0``),
    a constant, an array matching the points, or a callable of Cartesian
    position.
    """
    psi, u = flow_state(chart, point, seed_zeta)
    b = bernoulli(psi, u, pressure_offset)
    if rho is None:
        r = law.density_from_enthalpy(b)
    else:
        p = chart.forward(point) if isinstance(point, Coords) else np.asarray(point, dtype=float)
        r = _resolve_rho(rho, p)
    return b - law.enthalpy(r)


def _cartesian(chart, point):
    if isinstance(point, Coords):
        return chart.forward(point), point.arrays()[2]
    return np.asarray(point, dtype=float), None


def source(law: BarotropicLaw, chart, point, *, h: float = 1e-4, rho0: float | None = None,
           pressure_offset: float = 0.0, seed_zeta=None, flow=None):
    """Continuity source ``S = div(rho u)``.

    With ``rho0`` the density is constant and ``S = rho0 div u`` is returned
    from the closed-form Jacobian.  Otherwise ``rho`` follows from
    :func:`density` and the divergence is taken by fourth-order central
    differences with step ``h``.  ``flow`` overrides the Cartesian
    ``(u, psi)`` evaluator (see :class:`toroidal_euler.verify.CartesianFlow`).
    """
    if rho0 is not None:
        c = point if isinstance(point, Coords) else inverse(chart, point, seed_zeta=seed_zeta)
        det, ddet = chart.jacobian_closed_form(c)
        return -rho0 * ddet / det
    from .verify import CartesianFlow

    flow = flow or CartesianFlow(chart)
    p, zeta = _cartesian(chart, point)
    if seed_zeta is None:
        seed_zeta = zeta

    def mass_flux(q, seeds):
        u, psi, ok = flow.evaluate(q, seeds)
        rho = law.density_from_enthalpy(bernoulli(psi, u, pressure_offset))
        return rho[:, None] * u, ok

    _, dm, ok = central_difference(mass_flux, p.reshape(-1, 3), h,
                                   None if seed_zeta is None else np.ravel(seed_zeta))
    s = np.trace(dm, axis1=1, axis2=2)
    return np.where(ok, s, np.nan).reshape(p.shape[:-1])


def barotropic_residual(law: BarotropicLaw, chart, point, *, h: float = 1e-4, pressure_offset: float = 0.0,
                        seed_zeta=None):
    """``|grad P'(rho) - rho grad h(rho)|`` by central differences, with ``rho`` from :func:`density`."""
    from .verify import CartesianFlow

    flow = CartesianFlow(chart)
    p, zeta = _cartesian(chart, point)
    seed_zeta = zeta if seed_zeta is None else seed_zeta

    def fields(q, seeds):
        u, psi, ok = flow.evaluate(q, seeds)
        rho = law.density_from_enthalpy(bernoulli(psi, u, pressure_offset))
        return np.stack([law.pressure(rho), law.enthalpy(rho), rho], axis=-1), ok

    f, df, ok = central_difference(fields, p.reshape(-1, 3), h, None if seed_zeta is None else np.ravel(seed_zeta))
    res = np.linalg.norm(df[:, 0, :] - f[:, 2, None] * df[:, 1, :], axis=-1)
    return np.where(ok, res, np.nan)


def momentum_residual(law: BarotropicLaw, chart, point, rho, *, h: float = 1e-4, pressure_offset: float = 0.0,
                      seed_zeta=None):
    """Steady momentum balance ``|-(u.grad)u - grad P'/rho - grad V|`` for a supplied density.

    ``rho`` is a callable of Cartesian position; ``V`` is computed from it by
    :func:`potential`.
    """
    from .verify import CartesianFlow

    flow = CartesianFlow(chart)
    p, zeta = _cartesian(chart, point)
    seed_zeta = zeta if seed_zeta is None else seed_zeta

    def fields(q, seeds):
        u, psi, ok = flow.evaluate(q, seeds)
        r = _resolve_rho(rho, q)
        v = bernoulli(psi, u, pressure_offset) - law.enthalpy(r)
        return np.concatenate([u, np.stack([law.pressure(r), v, r], axis=-1)], axis=-1), ok

    f, df, ok = central_difference(fields, p.reshape(-1, 3), h, None if seed_zeta is None else np.ravel(seed_zeta))
    u = f[:, :3]
    advect = np.einsum("nak,nk->na", df[:, :3, :], u)
    res = -advect - df[:, 3, :] / f[:, 5, None] - df[:, 4, :]
    return np.where(ok, np.linalg.norm(res, axis=-1), np.nan)


def shell_integral(chart, domain, fn, n=(16, 64, 64)):
    """Midpoint rule for ``int fn dV`` over a shell, ``dV = det(dx/dy) dpsi dtheta dzeta``.

    ``fn`` takes :class:`Coords` and returns an array of matching shape.
    Returns ``(integral, integral of |fn|)``.
    """
    npsi, nth, nze = n
    dpsi = (domain.psi_max - domain.psi_min) / npsi
    psi = domain.psi_min + dpsi * (np.arange(npsi) + 0.5)
    th = 2 * np.pi * (np.arange(nth) + 0.5) / nth
    ze = 2 * np.pi * (np.arange(nze) + 0.5) / nze
    c = Coords(psi[:, None, None], th[None, :, None], ze[None, None, :])
    det, _ = chart.jacobian_closed_form(c)
    vals = fn(c) * det
    w = dpsi * (2 * np.pi / nth) * (2 * np.pi / nze)
    return float(np.sum(vals) * w), float(np.sum(np.abs(vals)) * w)
