"""Clebsch potentials of the poloidal flow ``u = -d/dtheta``.

With ``psi = P`` as a coordinate the flow can be written
``u = grad(Phi) + psi grad(theta) + alpha grad(zeta)`` where

* ``Phi = -psi theta - int_0^theta g_tt dtheta' + chi(psi, zeta)``,
* ``chi_psi(psi, zeta) = -g_pt(psi, 0, zeta)`` and ``chi = int_{psi_ref}^psi chi_psi``,
* ``alpha(psi, zeta) = -Phi_zeta - g_tz`` evaluated at ``theta = 0``.

``Phi`` carries the secular term ``-psi theta`` and lives on the universal
cover in theta; ``branch`` selects the sheet ``theta + 2 pi branch``.  The
partials of ``Phi`` are obtained by differentiating under the integral sign
with metric-derivative integrands, so only the quadrature limits accuracy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .diffgeo import PSI, THETA, TWO_PI, ZETA, Coords, dual_basis, jet_eval, metric_at, metric_from_jet
from .quadrature import gauss_integrate

TANGENT = "tangent"
COVARIANT = "covariant"
CLEBSCH = "clebsch"
REPRESENTATIONS = (TANGENT, COVARIANT, CLEBSCH)


class ThetaDependenceError(ValueError):
    """A quantity that must be theta-independent is not; the chart fails the metric conditions."""


def _bcast(*arrays):
    return np.broadcast_arrays(*[np.asarray(a, dtype=float) for a in arrays])


@dataclass(frozen=True)
class ClebschPotentials:
    chart: object
    psi_ref: float
    branch: int = 0
    atol: float = 1e-11
    check_tol: float = 1e-10

    def _theta(self, theta):
        return np.asarray(theta, dtype=float) + TWO_PI * self.branch

    # theta integrals ------------------------------------------------------

    def theta_integrals(self, psi, theta, zeta):
        """``int_0^theta`` of ``g_tt``, ``d_psi g_tt`` and ``d_zeta g_tt`` (last axis)."""
        psi, theta, zeta = _bcast(psi, theta, zeta)

        def integrand(t):
            m = metric_at(self.chart, Coords(psi[..., None], t, zeta[..., None]))
            return np.stack([m.g[..., THETA, THETA], m.dg[..., THETA, THETA, PSI], m.dg[..., THETA, THETA, ZETA]],
                            axis=-1)

        return gauss_integrate(integrand, np.zeros_like(theta), theta, atol=self.atol)

    def psi_integrals(self, psi, zeta):
        """``chi`` and ``chi_zeta``: integrals of ``-g_pt`` and ``-d_zeta g_pt`` at theta = 0 from ``psi_ref``."""
        psi, zeta = _bcast(psi, zeta)

        def integrand(s):
            m = metric_at(self.chart, Coords(s, 0.0, zeta[..., None]))
            return np.stack([-m.g[..., PSI, THETA], -m.dg[..., PSI, THETA, ZETA]], axis=-1)

        return gauss_integrate(integrand, np.full(psi.shape, float(self.psi_ref)), psi, atol=self.atol)

    # potentials -----------------------------------------------------------

    def chi_psi(self, psi, zeta, *, check: bool = True):
        """``-g_pt(psi, 0, zeta)``; optionally confirms the defining combination is theta-independent."""
        psi, zeta = _bcast(psi, zeta)
        m0 = metric_at(self.chart, Coords(psi, 0.0, zeta))
        value = -m0.g[..., PSI, THETA]
        if check:
            for th in (0.5 * np.pi, np.pi, 1.5 * np.pi):
                theta = np.full(psi.shape, th)
                integ = self.theta_integrals(psi, theta, zeta)[..., 1]
                m = metric_at(self.chart, Coords(psi, theta, zeta))
                other = theta + integ - m.g[..., PSI, THETA]
                err = np.max(np.abs(other - value)) if value.size else 0.0
                if err > self.check_tol:
                    raise ThetaDependenceError(f"chi_psi varies with theta by {err:.3e} at theta = {th:.4f}")
        return value

    def chi(self, psi, zeta):
        return self.psi_integrals(psi, zeta)[..., 0]

    def phi(self, c: Coords):
        psi, theta, zeta = c.arrays()
        theta = self._theta(theta)
        return -psi * theta - self.theta_integrals(psi, theta, zeta)[..., 0] + self.chi(psi, zeta)

    def phi_gradient(self, c: Coords, metric=None):
        """``(Phi_psi, Phi_theta, Phi_zeta)`` stacked on the last axis."""
        psi, theta, zeta = c.arrays()
        theta = self._theta(theta)
        if metric is None:
            metric = metric_at(self.chart, Coords(psi, theta, zeta))
        ti = self.theta_integrals(psi, theta, zeta)
        pi_ = self.psi_integrals(psi, zeta)
        chi_psi = self.chi_psi(psi, zeta, check=False)
        phi_psi = -theta - ti[..., 1] + chi_psi
        phi_theta = -psi - metric.g[..., THETA, THETA]  # Leibniz rule at the upper limit
        phi_zeta = -ti[..., 2] + pi_[..., 1]
        return np.stack([phi_psi, phi_theta, phi_zeta], axis=-1)

    def alpha(self, psi, zeta, *, check: bool = True):
        psi, zeta = _bcast(psi, zeta)
        m0 = metric_at(self.chart, Coords(psi, 0.0, zeta))
        value = -self.psi_integrals(psi, zeta)[..., 1] - m0.g[..., THETA, ZETA]
        if check:
            for th in (0.5 * np.pi, np.pi, 1.5 * np.pi):
                other = self.alpha_local(Coords(psi, np.full(psi.shape, th - TWO_PI * self.branch), zeta))
                err = np.max(np.abs(other - value)) if value.size else 0.0
                if err > self.check_tol:
                    raise ThetaDependenceError(f"alpha varies with theta by {err:.3e} at theta = {th:.4f}")
        return value

    def alpha_local(self, c: Coords):
        """``-Phi_zeta - g_tz`` at an arbitrary theta (equals :meth:`alpha` when the chart is admissible)."""
        psi, theta, zeta = c.arrays()
        m = metric_at(self.chart, Coords(psi, self._theta(theta), zeta))
        return -self.phi_gradient(c, metric=m)[..., 2] - m.g[..., THETA, ZETA]

    # velocity -------------------------------------------------------------

    def velocity(self, c: Coords, representation: str = TANGENT):
        if representation not in REPRESENTATIONS:
            raise ValueError(f"unknown representation {representation!r}")
        if representation == TANGENT:
            return -jet_eval(self.chart, c.reduced()).tangent(THETA)
        if representation == COVARIANT:
            jet = jet_eval(self.chart, c.reduced())
            g = metric_from_jet(jet).g
            grads = dual_basis(jet)
            return -(g[..., PSI, THETA, None] * grads[..., PSI, :] + g[..., THETA, THETA, None] * grads[..., THETA, :]
                     + g[..., THETA, ZETA, None] * grads[..., ZETA, :])
        psi, theta, zeta = c.arrays()
        jet = jet_eval(self.chart, Coords(psi, self._theta(theta), zeta))
        grads = dual_basis(jet)
        dphi = self.phi_gradient(c, metric=metric_from_jet(jet))
        alpha = self.alpha(psi, zeta, check=False)
        return (dphi[..., PSI, None] * grads[..., PSI, :]
                + (dphi[..., THETA] + psi)[..., None] * grads[..., THETA, :]
                + (dphi[..., ZETA] + alpha)[..., None] * grads[..., ZETA, :])

    def system_residuals(self, c: Coords):
        """The four reduced Clebsch equations, evaluated pointwise.

        Keys: ``alpha_theta`` (alpha at this theta minus alpha at theta = 0),
        ``alpha_eq`` (``alpha + Phi_zeta + g_tz``), ``phi_psi_eq``
        (``Phi_psi + g_pt``) and ``phi_theta_eq`` (``Phi_theta + psi + g_tt``).
        """
        psi, theta, zeta = c.arrays()
        m = metric_at(self.chart, Coords(psi, self._theta(theta), zeta))
        dphi = self.phi_gradient(c, metric=m)
        alpha0 = self.alpha(psi, zeta, check=False)
        local = -dphi[..., 2] - m.g[..., THETA, ZETA]
        return {
            "alpha_theta": local - alpha0,
            "alpha_eq": alpha0 + dphi[..., 2] + m.g[..., THETA, ZETA],
            "phi_psi_eq": dphi[..., 0] + m.g[..., PSI, THETA],
            "phi_theta_eq": dphi[..., 1] + psi + m.g[..., THETA, THETA],
        }


def velocity(chart, c: Coords, representation: str = TANGENT, *, psi_ref=None, branch: int = 0):
    """Flow ``u = -d/dtheta`` in one of three equivalent forms (Cartesian components)."""
    if psi_ref is None:
        psi = c.arrays()[0]
        psi_ref = 0.5 * (float(np.min(psi)) + float(np.max(psi)))
    return ClebschPotentials(chart, psi_ref, branch).velocity(c, representation)
