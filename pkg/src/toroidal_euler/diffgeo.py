"""Chart jets, induced metric and Christoffel symbols.

Everything here is batched: a :class:`Coords` may hold scalars or arrays of any
(common) shape, and every returned array carries that shape as its leading
dimensions.  Index convention for the chart coordinates is
``0 = psi, 1 = theta, 2 = zeta``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import jets

PSI, THETA, ZETA = 0, 1, 2
TWO_PI = 2.0 * np.pi


class DomainError(ValueError):
    """A point or parameter set lies outside the region where a chart is valid."""


class SingularMetricError(ArithmeticError):
    pass


@dataclass(frozen=True)
class Coords:
    """A point (or batch of points) in chart coordinates (psi, theta, zeta).

    Angles are accepted on the whole real line; use :meth:`reduced` to map
    them into ``[0, 2*pi)``.
    """

    psi: object
    theta: object
    zeta: object

    def arrays(self):
        return np.broadcast_arrays(np.asarray(self.psi, dtype=float),
                                   np.asarray(self.theta, dtype=float),
                                   np.asarray(self.zeta, dtype=float))

    @property
    def shape(self):
        return self.arrays()[0].shape

    def reduced(self) -> "Coords":
        psi, theta, zeta = self.arrays()
        return Coords(psi, np.mod(theta, TWO_PI), np.mod(zeta, TWO_PI))

    def stack(self) -> np.ndarray:
        return np.stack(self.arrays(), axis=-1)

    @classmethod
    def from_stack(cls, y) -> "Coords":
        y = np.asarray(y, dtype=float)
        return cls(y[..., 0], y[..., 1], y[..., 2])

    def __getitem__(self, idx) -> "Coords":
        psi, theta, zeta = self.arrays()
        return Coords(psi[idx], theta[idx], zeta[idx])


@dataclass(frozen=True)
class Jet2:
    """Position ``x`` with ``d1[..., a, i] = dx^a/dy^i`` and ``d2[..., a, i, j]``."""

    x: np.ndarray
    d1: np.ndarray
    d2: np.ndarray

    def tangent(self, i: int) -> np.ndarray:
        return self.d1[..., :, i]

    def second(self, i: int, j: int) -> np.ndarray:
        return self.d2[..., :, i, j]


@dataclass(frozen=True)
class MetricAtPoint:
    """Metric ``g[..., i, j]`` and its partials ``dg[..., i, j, k] = d g_ij / d y^k``."""

    g: np.ndarray
    dg: np.ndarray


def jet_eval(chart, c: Coords) -> Jet2:
    """Position and exact first/second partials of ``chart`` at ``c``.

    The chart's closed-form map is evaluated on :class:`~toroidal_euler.jets.Jet`
    variables; no finite differencing is involved.
    """
    psi, theta, zeta = c.arrays()
    if np.any(psi >= chart.psi0):
        raise DomainError(f"jet requires psi < psi0 = {chart.psi0}; derivatives diverge on the magnetic axis")
    comps = chart.embed(*jets.variables(psi, theta, zeta))
    x = np.stack([comp.val for comp in comps], axis=-1)
    d1 = np.stack([comp.grad for comp in comps], axis=-2)
    d2 = np.stack([comp.hess for comp in comps], axis=-3)
    return Jet2(x, d1, d2)


def metric_from_jet(jet: Jet2) -> MetricAtPoint:
    d1, d2 = jet.d1, jet.d2
    g = 0.0
    dg = 0.0
    # explicit sum over Cartesian components keeps g and dg exactly symmetric in (i, j)
    for a in range(3):
        ta = d1[..., a, :]
        ha = d2[..., a, :, :]
        g = g + ta[..., :, None] * ta[..., None, :]
        dg = dg + (ha[..., :, None, :] * ta[..., None, :, None] + ta[..., :, None, None] * ha[..., None, :, :])
    return MetricAtPoint(g, dg)


def metric_at(chart, c: Coords) -> MetricAtPoint:
    return metric_from_jet(jet_eval(chart, c))


def christoffel_first(dg: np.ndarray) -> np.ndarray:
    """``gamma1[..., i, j, k] = (dg_ij/dk + dg_ik/dj - dg_jk/di) / 2``."""
    return 0.5 * (dg + np.swapaxes(dg, -1, -2) - np.moveaxis(dg, -1, -3))


def christoffel(m: MetricAtPoint, tol: float = 1e-13):
    """Christoffel symbols of the first and second kind.

    Raises :class:`SingularMetricError` if ``det g <= tol`` anywhere.
    """
    det = np.linalg.det(m.g)
    if np.any(det <= tol):
        raise SingularMetricError(f"metric determinant {np.min(det):.3e} <= {tol:g}")
    gamma1 = christoffel_first(m.dg)
    ginv = np.linalg.inv(m.g)
    gamma2 = np.einsum("...im,...mjk->...ijk", ginv, gamma1)
    return gamma1, gamma2


def is_positive_definite(g: np.ndarray, pivot_tol: float = 1e-13) -> np.ndarray:
    """Cholesky test of a batch of symmetric 3x3 matrices; True where every pivot exceeds ``pivot_tol``."""
    g = np.asarray(g, dtype=float)
    L = np.zeros_like(g)
    ok = np.ones(g.shape[:-2], dtype=bool)
    for j in range(3):
        piv = g[..., j, j] - np.sum(L[..., j, :j] ** 2, axis=-1)
        ok &= piv > pivot_tol
        L[..., j, j] = np.sqrt(np.where(piv > 0, piv, 1.0))
        for i in range(j + 1, 3):
            L[..., i, j] = (g[..., i, j] - np.sum(L[..., i, :j] * L[..., j, :j], axis=-1)) / L[..., j, j]
    return ok


def triple(a, b, c) -> np.ndarray:
    return np.sum(a * np.cross(b, c), axis=-1)


def jacobian_det(chart, c: Coords, *, check: bool = True, rtol: float = 1e-12) -> np.ndarray:
    """``det(dx/dy)``, i.e. the inverse Jacobian ``1/J``.

    When ``check`` is set the numeric determinant is compared with the chart's
    closed form and a :class:`DomainError` is raised outside the parameter set
    where the chart is a local diffeomorphism.
    """
    jet = jet_eval(chart, c)
    det = triple(jet.tangent(PSI), jet.tangent(THETA), jet.tangent(ZETA))
    if check:
        if not np.all(chart.in_domain_coords(c)):
            raise DomainError("coordinates outside the chart's parameter set M")
        closed, _ = chart.jacobian_closed_form(c)
        scale = np.maximum(np.abs(closed), 1e-300)
        err = np.max(np.abs(det - closed) / scale)
        if err > rtol:
            raise AssertionError(f"numeric Jacobian disagrees with closed form: relative error {err:.3e}")
    return det


def dual_basis(jet: Jet2) -> np.ndarray:
    """Gradients of the chart coordinates: ``grad[..., i, :] = nabla y^i``."""
    return np.linalg.inv(jet.d1)


def theta_derivative_of_det(jet: Jet2) -> np.ndarray:
    """``d/dtheta det(dx/dy)`` written as a sum of three triple products of jet columns."""
    xp, xt, xz = jet.tangent(PSI), jet.tangent(THETA), jet.tangent(ZETA)
    return (triple(jet.second(THETA, PSI), xt, xz) + triple(xp, jet.second(THETA, THETA), xz)
            + triple(xp, xt, jet.second(THETA, ZETA)))
