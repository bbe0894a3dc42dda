"""Quantitative checks of the identities satisfied by the constructed flows.

Each check returns :class:`ResidualReport` records.  Identity-class checks
(map equations, Christoffel form, Jacobian, Clebsch system) are limited only
by roundoff; discretization-class checks (force balance, finite-difference
divergence) use fourth-order central differences on the Cartesian fields
obtained by composing the chart quantities with the inverse map.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from . import jets
from .charts import AXISYMMETRIC, F_PERTURBED, ChartFamily, DomainSpec, inverse
from .clebsch import CLEBSCH, COVARIANT, TANGENT, ClebschPotentials
from .diffgeo import (PSI, THETA, ZETA, Coords, DomainError, MetricAtPoint, christoffel, dual_basis,
                      jet_eval, metric_at, theta_derivative_of_det, triple)
from .fd import central_difference, curl
from .grid import angle_grid, cartesian_interior, length_scale, random_level_set, random_shell
from .parallel import chunked_map

BELOW = "below"
ABOVE = "above"


class CriticalPointError(DomainError):
    """``grad psi`` (nearly) vanishes on a sampled shell."""


@dataclass(frozen=True)
class ResidualReport:
    """Summary statistics of ``|residual|`` over a sample set.

    With ``require == "below"`` the check passes iff ``max_abs < tolerance``;
    negative controls and certificates use ``"above"`` (``max_abs > tolerance``).
    Non-asserted reports are informational and never fail a run.
    """

    name: str
    samples: int
    max_abs: float
    mean_abs: float
    p99_abs: float
    tolerance: float
    passed: bool
    asserted: bool = True
    require: str = BELOW
    excluded: int = 0
    detail: dict = field(default_factory=dict)

    @classmethod
    def from_values(cls, name, values, tolerance, *, asserted=True, require=BELOW, excluded=0, **detail):
        v = np.abs(np.asarray(values, dtype=float)).ravel()
        n = int(v.size)
        if n == 0:
            return cls(name, 0, math.nan, math.nan, math.nan, float(tolerance), False, asserted, require,
                       excluded, detail)
        mx = float(np.max(v))
        mean = math.fsum(v.tolist()) / n  # exactly rounded, independent of summation order
        p99 = float(np.quantile(v, 0.99))
        ok = mx < tolerance if require == BELOW else mx > tolerance
        return cls(name, n, mx, mean, p99, float(tolerance), bool(ok and np.isfinite(mx)), asserted, require,
                   excluded, detail)

    def to_record(self) -> dict:
        rec = asdict(self)
        rec["pass"] = rec.pop("passed")
        return rec

    def summary_line(self) -> str:
        status = ("PASS" if self.passed else "FAIL") if self.asserted else "info"
        rel = "<" if self.require == BELOW else ">"
        extra = f" excluded={self.excluded}" if self.excluded else ""
        return (f"[{status}] {self.name}: max={self.max_abs:.3e} {rel} {self.tolerance:.1e} "
                f"(mean={self.mean_abs:.3e}, p99={self.p99_abs:.3e}, n={self.samples}{extra})")


def _flat(c: Coords) -> Coords:
    psi, theta, zeta = c.arrays()
    return Coords(psi.ravel(), theta.ravel(), zeta.ravel())


def _scan(fn, c: Coords, workers=None):
    c = _flat(c)
    return chunked_map(lambda a, b, d: fn(Coords(a, b, d)), *c.arrays(), workers=workers)


# ---------------------------------------------------------------------------
# identity class

def map_pde_residuals(jet):
    xp, xt, xz = jet.tangent(PSI), jet.tangent(THETA), jet.tangent(ZETA)
    xtt, xpt, xtz = jet.second(THETA, THETA), jet.second(PSI, THETA), jet.second(THETA, ZETA)
    r1 = np.sum(xp * xtt, axis=-1) - 1.0 - np.sum(xt * xpt, axis=-1)
    r2 = np.sum(xt * xtz, axis=-1) - np.sum(xz * xtt, axis=-1)
    return r1, r2


def check_map_pdes(chart, c: Coords, tol: float = 1e-11, workers=None):
    r1, r2 = _scan(lambda cc: map_pde_residuals(jet_eval(chart, cc)), c, workers)
    return (ResidualReport.from_values("map_pde_psi_theta", r1, tol),
            ResidualReport.from_values("map_pde_theta_zeta", r2, tol))


def christoffel_residuals(m: MetricAtPoint):
    """Christoffel-form residuals and the trace ``G^psi_psi,theta + G^theta_theta,theta + G^zeta_zeta,theta``."""
    g1, g2 = christoffel(m)
    return {
        "first": g1[..., PSI, THETA, THETA] - 1.0 - g1[..., THETA, PSI, THETA],
        "second": g1[..., THETA, ZETA, THETA] - g1[..., ZETA, THETA, THETA],
        "trace": g2[..., PSI, PSI, THETA] + g2[..., THETA, THETA, THETA] + g2[..., ZETA, ZETA, THETA],
    }


def check_christoffel_form(chart, c: Coords, tol: float = 1e-11, workers=None, include_trace: bool = True):
    """The two Christoffel identities, plus (optionally) the trace condition.

    The trace equals ``d/dtheta ln det(dx/dy)``; it vanishes only for
    incompressible flows, so its size is reported but not asserted, while its
    agreement with the closed-form Jacobian is asserted.
    """
    def kernel(cc):
        res = christoffel_residuals(metric_at(chart, cc))
        det, ddet = chart.jacobian_closed_form(cc)
        return res["first"], res["second"], res["trace"], res["trace"] - ddet / det

    first, second, trace, consistency = _scan(kernel, c, workers)
    out = [ResidualReport.from_values("christoffel_psi_theta", first, tol),
           ResidualReport.from_values("christoffel_theta_zeta", second, tol)]
    if include_trace:
        out.append(ResidualReport.from_values("christoffel_trace", trace, tol, asserted=False))
        out.append(ResidualReport.from_values("christoffel_trace_vs_log_jacobian", consistency, tol))
    return tuple(out)


def check_jacobian(chart, c: Coords, tol: float = 1e-12, workers=None):
    def kernel(cc):
        jet = jet_eval(chart, cc)
        det = triple(jet.tangent(PSI), jet.tangent(THETA), jet.tangent(ZETA))
        closed, _ = chart.jacobian_closed_form(cc)
        return (det - closed) / np.abs(closed)

    return ResidualReport.from_values("jacobian_closed_form_rel", _scan(kernel, c, workers), tol)


def check_clebsch(chart, c: Coords, psi_ref: float, tol: float = 1e-9, tangency_tol: float = 1e-10,
                  workers=None):
    cp0 = ClebschPotentials(chart, psi_ref, 0)
    cp1 = ClebschPotentials(chart, psi_ref, 1)

    def kernel(cc):
        res = cp0.system_residuals(cc)
        ut = cp0.velocity(cc, TANGENT)
        uc = cp0.velocity(cc, COVARIANT)
        ul = cp0.velocity(cc, CLEBSCH)
        ul1 = cp1.velocity(cc, CLEBSCH)
        grad_psi = dual_basis(jet_eval(chart, cc))[..., PSI, :]
        nrm = lambda v: np.linalg.norm(v, axis=-1)  # noqa: E731
        return (res["alpha_theta"], res["alpha_eq"], res["phi_psi_eq"], res["phi_theta_eq"],
                nrm(ut - uc), nrm(ut - ul), nrm(uc - ul), nrm(ul - ul1), np.sum(ut * grad_psi, axis=-1))

    out = _scan(kernel, c, workers)
    names = ("clebsch_alpha_theta", "clebsch_alpha_eq", "clebsch_phi_psi_eq", "clebsch_phi_theta_eq",
             "velocity_tangent_vs_covariant", "velocity_tangent_vs_clebsch", "velocity_covariant_vs_clebsch",
             "velocity_clebsch_branch")
    reports = [ResidualReport.from_values(n, v, tol) for n, v in zip(names, out[:-1])]
    reports.append(ResidualReport.from_values("velocity_tangency", out[-1], tangency_tol))
    return tuple(reports)


# ---------------------------------------------------------------------------
# Cartesian fields and finite differences

@dataclass(frozen=True)
class CartesianFlow:
    """``u`` and ``psi`` as functions of Cartesian position.

    ``psi`` comes from inverting ``chart``; ``u`` from ``u_chart`` (default:
    the same chart), which allows deliberately inconsistent pairs.
    """

    chart: ChartFamily
    u_chart: ChartFamily | None = None

    def _coords(self, chart, p, seed_zeta):
        c, conv, _ = inverse(chart, p, seed_zeta=seed_zeta, return_info=True)
        psi = np.where(conv, c.psi, 0.5 * chart.psi0)
        ok = conv & (psi < chart.psi0)
        return Coords(np.where(ok, psi, 0.5 * chart.psi0), c.theta, c.zeta), ok

    def evaluate(self, p, seed_zeta=None):
        c, ok = self._coords(self.chart, p, seed_zeta)
        if self.u_chart is None:
            cu, oku = c, ok
            uchart = self.chart
        else:
            cu, oku = self._coords(self.u_chart, p, seed_zeta)
            uchart = self.u_chart
        u = -jet_eval(uchart, cu).tangent(THETA)
        return u, c.psi, ok & oku


def _flow_values(flow):
    def fn(q, seeds):
        u, psi, ok = flow.evaluate(q, seeds)
        return np.concatenate([u, psi[:, None]], axis=-1), ok
    return fn


def fd_stencil(flow, p, h: float, seed_zeta=None):
    """Fourth-order central differences of ``u`` and ``psi`` at points ``p``.

    Returns ``(u, du, dpsi, ok)`` with ``du[..., a, k] = d u_a / d x_k``.
    ``ok`` is False where any of the 13 inverse solves failed.
    """
    f, df, ok = central_difference(_flow_values(flow), p, h, seed_zeta)
    return f[:, :3], df[:, :3, :], df[:, 3, :], ok


def force_balance_residual(flow, p, h: float, seed_zeta=None, workers=None):
    """Pointwise ``|(curl u) x u - grad psi|`` and the validity mask."""
    p = np.asarray(p, dtype=float)
    seed = np.full(p.shape[0], np.nan) if seed_zeta is None else np.asarray(seed_zeta, dtype=float)

    def kernel(pp, ss):
        u, du, dpsi, ok = fd_stencil(flow, pp, h, None if np.all(np.isnan(ss)) else ss)
        return np.linalg.norm(np.cross(curl(du), u) - dpsi, axis=-1), ok

    return chunked_map(kernel, p, seed, chunk=256, workers=workers)


def force_balance(chart, p, *, h: float | None = None, seed_zeta=None, flow=None, tol: float = 1e-7,
                  workers=None, name: str = "force_balance"):
    """Force-balance residual on Cartesian points; failed inversions are excluded and counted."""
    p = np.asarray(p, dtype=float)
    if h is None:
        h = 1e-4 * float(np.linalg.norm(np.ptp(p, axis=0)))
    res, ok = force_balance_residual(flow or CartesianFlow(chart), p, h, seed_zeta, workers)
    return ResidualReport.from_values(name, res[ok], tol, excluded=int(np.sum(~ok)), h=h)


def fd_convergence(flow, p, steps, seed_zeta=None, floor: float = 1e-9, min_ratio: float = 8.0, workers=None):
    """Max force-balance residual for each step in ``steps`` (successively halved).

    Returns ``(maxima, ok)`` where ``ok`` requires a reduction by at least
    ``min_ratio`` between consecutive steps until the residual falls below ``floor``.
    """
    maxima = []
    for h in steps:
        res, good = force_balance_residual(flow, p, h, seed_zeta, workers)
        maxima.append(float(np.max(res[good])))
    ok = all(b * min_ratio <= a for a, b in zip(maxima, maxima[1:]) if a >= floor)
    return maxima, ok


def analytic_divergence(chart, c: Coords):
    """``div u = (1/J) dJ/dtheta = -d_theta det / det`` from the closed-form Jacobian."""
    det, ddet = chart.jacobian_closed_form(c)
    return -ddet / det


def divergence_check(chart, c: Coords, *, h: float | None = None, fd_tol: float = 1e-7, id_tol: float = 1e-12,
                     workers=None):
    """Finite-difference and jet forms of ``div u`` against the closed form."""
    c = _flat(c)

    def jet_kernel(cc):
        jet = jet_eval(chart, cc)
        det = triple(jet.tangent(PSI), jet.tangent(THETA), jet.tangent(ZETA))
        return -theta_derivative_of_det(jet) / det - analytic_divergence(chart, cc)

    out = [ResidualReport.from_values("divergence_jet_form", _scan(jet_kernel, c, workers), id_tol)]
    p = chart.forward(c)
    if h is None:
        h = 1e-4 * float(np.linalg.norm(np.ptp(p, axis=0)))
    flow = CartesianFlow(chart)

    def fd_kernel(pp, zz):
        _, du, _, ok = fd_stencil(flow, pp, h, zz)
        return np.trace(du, axis1=1, axis2=2), ok

    div_fd, ok = chunked_map(fd_kernel, p, c.zeta, chunk=256, workers=workers)
    exact = analytic_divergence(chart, c)
    out.append(ResidualReport.from_values("divergence_fd", (div_fd - exact)[ok], fd_tol,
                                          excluded=int(np.sum(~ok)), h=h))
    if chart.kind == AXISYMMETRIC or (chart.kind == F_PERTURBED and chart.eps == 0):
        r = np.hypot(p[:, 0], p[:, 1])
        out.append(ResidualReport.from_values("divergence_fd_vs_z_over_r", (div_fd - p[:, 2] / r)[ok], fd_tol))
    return tuple(out)


# ---------------------------------------------------------------------------
# generalized metrics

def metric_from_callable(fn, c: Coords) -> MetricAtPoint:
    """Evaluate six coefficient functions on jets and assemble ``g`` and ``dg``.

    ``fn(psi, theta, zeta)`` returns ``(g_pp, g_pt, g_pz, g_tt, g_tz, g_zz)``;
    only first derivatives are used.
    """
    psi, theta, zeta = c.arrays()
    coeffs = [jets.as_jet(v, psi.shape) for v in fn(*jets.variables(psi, theta, zeta))]
    idx = {(0, 0): 0, (0, 1): 1, (0, 2): 2, (1, 1): 3, (1, 2): 4, (2, 2): 5}
    g = np.empty(psi.shape + (3, 3))
    dg = np.empty(psi.shape + (3, 3, 3))
    for i in range(3):
        for j in range(3):
            cf = coeffs[idx[(min(i, j), max(i, j))]]
            g[..., i, j] = cf.val
            dg[..., i, j, :] = cf.grad
    return MetricAtPoint(g, dg)


def generalized_metric_residuals(m: MetricAtPoint):
    dg = m.dg
    first = dg[..., PSI, THETA, THETA] - 1.0 - dg[..., THETA, THETA, PSI]
    second = dg[..., THETA, THETA, ZETA] - dg[..., THETA, ZETA, THETA]
    det = np.linalg.det(m.g)
    # Jacobi's formula: d det / d theta = det * tr(g^-1 dg/dtheta)
    ddet = det * np.einsum("...ij,...ji->...", np.linalg.inv(m.g), dg[..., :, :, THETA])
    return first, second, np.sign(det) * ddet


def check_generalized_metric(metric, c: Coords, tol: float = 1e-12, workers=None):
    """Conditions for ``u = -d/dtheta`` to be a generalized steady Euler flow on an abstract metric.

    ``metric`` is a chart (its induced metric is used) or a callable as in
    :func:`metric_from_callable`.  The third report, ``d|det g|/dtheta``, is
    the compressibility indicator and is informational.
    """
    if callable(getattr(metric, "embed", None)):
        get = lambda cc: metric_at(metric, cc)  # noqa: E731
    else:
        get = lambda cc: metric_from_callable(metric, cc)  # noqa: E731
    first, second, ddet = _scan(lambda cc: generalized_metric_residuals(get(cc)), c, workers)
    return (ResidualReport.from_values("generalized_metric_psi_theta", first, tol),
            ResidualReport.from_values("generalized_metric_theta_zeta", second, tol),
            ResidualReport.from_values("generalized_metric_det_theta", ddet, tol, asserted=False))


# ---------------------------------------------------------------------------
# boundary and symmetry

def boundary_report(chart, psi_b: float, c: Coords | None = None, *, tol: float = 1e-10, n: int = 1000,
                    seed: int = 0, critical_tol: float = 1e-12):
    """Tangency and boundary-pressure checks on the level set ``psi = psi_b``."""
    if c is None:
        c = random_level_set(psi_b, n, seed)
    _, theta, zeta = c.arrays()
    on_set = Coords(np.full(theta.shape, float(psi_b)), theta, zeta)
    jet = jet_eval(chart, on_set)
    u = -jet.tangent(THETA)
    grad = dual_basis(jet)[..., PSI, :]
    gnorm = np.linalg.norm(grad, axis=-1)
    gmin = float(np.min(gnorm))
    if gmin < critical_tol:
        raise CriticalPointError(f"|grad psi| = {gmin:.3e} on psi = {psi_b}: the foliation degenerates")
    cosang = np.sum(u * grad, axis=-1) / (np.linalg.norm(u, axis=-1) * gnorm)
    pressure = on_set.arrays()[0]  # P = psi
    return (ResidualReport.from_values("boundary_tangency", cosang, tol, psi_b=psi_b, min_grad_psi=gmin),
            ResidualReport.from_values("boundary_pressure", pressure - psi_b, 1e-300, psi_b=psi_b))


@dataclass(frozen=True)
class IsometryGenerator:
    """Euclidean Killing field ``xi(x) = a + b x x``."""

    a: tuple
    b: tuple

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(float(v) for v in self.a))
        object.__setattr__(self, "b", tuple(float(v) for v in self.b))

    @classmethod
    def from_vector(cls, v):
        v = np.asarray(v, dtype=float)
        return cls(v[:3], v[3:])

    def vector(self) -> np.ndarray:
        return np.array(self.a + self.b)

    def normalized(self) -> "IsometryGenerator":
        v = self.vector()
        return IsometryGenerator.from_vector(v / np.linalg.norm(v))

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return np.asarray(self.a) + np.cross(np.asarray(self.b), x)


def lie_derivative_psi(chart, c: Coords, gen: IsometryGenerator):
    """``xi . grad psi`` at ``x(c)``."""
    jet = jet_eval(chart, c)
    return np.sum(gen(jet.x) * dual_basis(jet)[..., PSI, :], axis=-1)


def symmetry_matrix(chart, c: Coords):
    """Rows ``(grad psi, x cross grad psi)``: ``xi . grad psi`` for the six basis generators."""
    jet = jet_eval(chart, _flat(c))
    grad = dual_basis(jet)[..., PSI, :]
    return np.concatenate([grad, np.cross(jet.x, grad)], axis=-1), jet.x, grad


def symmetry_scan(chart, psi_level: float, n_samples: int = 200, seed: int = 0):
    """Smallest singular value of the normalized Lie-derivative matrix and its minimizing generator.

    Column ``j`` is scaled by ``sqrt(sum_i |xi_j(x_i)|^2 |grad psi(x_i)|^2)``,
    the value it would have if ``xi_j`` were everywhere parallel to
    ``grad psi``.  Entries are then direction cosines, so the scale is
    comparable across charts and an exact symmetry gives a roundoff-sized
    ``sigma_min`` rather than the noise-over-noise of unit-norm columns.
    """
    if n_samples < 6:
        raise ValueError("symmetry scan needs at least 6 samples")
    c = random_level_set(psi_level, n_samples, seed)
    mat, x, grad = symmetry_matrix(chart, c)
    centred = x - x.mean(axis=0)
    if np.linalg.matrix_rank(centred, tol=1e-10 * max(1.0, float(np.max(np.abs(x))))) < 3:
        raise ValueError("degenerate sampling: positions do not span three dimensions")
    gn2 = np.sum(grad ** 2, axis=-1)
    xi2 = np.concatenate([np.ones((x.shape[0], 3)), (np.sum(x ** 2, axis=-1)[:, None] - x ** 2)], axis=-1)
    weights = np.sqrt(np.sum(xi2 * gn2[:, None], axis=0))
    _, s, vt = np.linalg.svd(mat / weights, full_matrices=False)
    v = vt[-1] / weights
    v = v / np.linalg.norm(v)
    k = int(np.argmax(np.abs(v)))
    if v[k] < 0:
        v = -v
    return float(s[-1]), IsometryGenerator.from_vector(v)


# ---------------------------------------------------------------------------
# first-order expansion of the sin^2 family

def taylor_first_order(eps: float, p, psi0: float = 1.0, r0: float = 1.0):
    """First-order-in-``eps`` velocity and flux label of the ``f = sin^2`` family at Cartesian ``p``."""
    p = np.asarray(p, dtype=float)
    x, y, z = p[..., 0], p[..., 1], p[..., 2]
    r = np.hypot(x, y)
    cphi, sphi = x / r, y / r
    dr0 = (1.0 + cphi ** 2) / 3.0
    dx0 = -cphi * (1.0 - cphi ** 2 / 3.0)
    dy0 = -(sphi ** 3) / 3.0
    u1 = np.stack([(z / r) * (x - eps * (x * dr0 / r + dx0)),
                   (z / r) * (y - eps * (y * dr0 / r + dy0)),
                   -(r - r0 + eps * dr0)], axis=-1)
    psi1 = psi0 - (r - r0) ** 2 - z ** 2 - 2.0 * eps * (r - r0) * dr0
    return u1, psi1


def grad_taylor_psi(eps: float, p, r0: float = 1.0):
    """Analytic gradient of the first-order flux label."""
    p = np.asarray(p, dtype=float)
    x, y, z = p[..., 0], p[..., 1], p[..., 2]
    r = np.hypot(x, y)
    cphi, sphi = x / r, y / r
    dr0 = (1.0 + cphi ** 2) / 3.0
    d_r = -2.0 * (r - r0) - 2.0 * eps * dr0
    d_phi_over_r = -2.0 * eps * (r - r0) * (-2.0 * cphi * sphi / 3.0) / r
    return np.stack([d_r * cphi - d_phi_over_r * sphi, d_r * sphi + d_phi_over_r * cphi, -2.0 * z], axis=-1)


def taylor_points(psi_levels=(0.95, 0.97, 0.99), ntheta: int = 24, nphi: int = 24, r0: float = 1.0,
                  psi0: float = 1.0):
    """Fixed Cartesian comparison grid: nested circular tori around the unperturbed axis.

    Angles sit at half-cell offsets, away from the symmetric directions where
    a displaced axis can pass exactly through a grid point.
    """
    base = ChartFamily.axisymmetric(psi0=psi0, r0=r0)
    g = angle_grid(psi_levels[0], ntheta, nphi)
    theta = g.theta + np.pi / ntheta
    phi = g.zeta + np.pi / nphi
    pts = [base.forward(Coords(np.full(theta.shape, float(psi)), theta, phi)).reshape(-1, 3)
           for psi in psi_levels]
    return np.concatenate(pts)


def perturbed_velocity_closed_form(chart: ChartFamily, p, zeta):
    """``u = (z/rho)(x - eps dx) grad x + (z/rho)(y - eps dy) grad y - (rho - r0) grad z`` and ``psi``.

    Valid for the axisymmetric and ``f_perturbed`` families; ``zeta`` is the
    toroidal angle of ``p`` (from the inverse map).
    """
    p = np.asarray(p, dtype=float)
    x, y, z = p[..., 0], p[..., 1], p[..., 2]
    if chart.eps:
        dx, dy = chart.deltas
        X, Y = x - chart.eps * dx(zeta), y - chart.eps * dy(zeta)
    else:
        X, Y = x, y
    rho = np.hypot(X, Y)
    u = np.stack([(z / rho) * X, (z / rho) * Y, -(rho - chart.r0)], axis=-1)
    return u, chart.psi0 - (rho - chart.r0) ** 2 - z ** 2


@dataclass(frozen=True)
class TaylorRow:
    eps: float
    err_u: float
    err_psi: float


def taylor_compare(eps_list, p=None, *, psi0: float = 1.0, r0: float = 1.0):
    """Sup-norm errors of the first-order expansion on a fixed grid.

    Returns ``(rows, order)`` where ``order`` is the least-squares slope of
    ``log err_u`` against ``log eps`` over the nonzero entries.
    """
    p = taylor_points(r0=r0, psi0=psi0) if p is None else np.asarray(p, dtype=float)
    rows = []
    for eps in eps_list:
        chart = ChartFamily.f_perturbed(float(eps), psi0=psi0, r0=r0)
        u, psi = perturbed_velocity_closed_form(chart, p, inverse(chart, p).zeta)
        u1, psi1 = taylor_first_order(eps, p, psi0, r0)
        rows.append(TaylorRow(float(eps), float(np.max(np.linalg.norm(u - u1, axis=-1))),
                              float(np.max(np.abs(psi - psi1)))))
    nz = [(r.eps, r.err_u) for r in rows if r.eps > 0 and r.err_u > 0]
    order = float(np.polyfit(np.log([e for e, _ in nz]), np.log([v for _, v in nz]), 1)[0]) if len(nz) >= 2 \
        else math.nan
    return rows, order


# ---------------------------------------------------------------------------
# suite

@dataclass(frozen=True)
class SuiteSettings:
    n_identity: int = 10_000
    n_clebsch: int = 1_000
    n_fd: int = 1_000
    n_symmetry: int = 200
    seed: int = 0
    identity_tol: float = 1e-11
    fd_tol: float = 1e-7
    clebsch_tol: float = 1e-9
    tangency_tol: float = 1e-10
    jacobian_rtol: float = 1e-12
    fd_rel_step: float = 1e-4
    symmetry_floor: float = 1e-6


def run_suite(chart: ChartFamily, domain: DomainSpec, settings: SuiteSettings = SuiteSettings(), workers=None):
    """All checks for one chart on one shell, in a fixed order."""
    domain.validate(chart)
    st = settings
    c = random_shell(domain, st.n_identity, st.seed)
    reports = []
    reports += check_map_pdes(chart, c, st.identity_tol, workers)
    reports += check_christoffel_form(chart, c, st.identity_tol, workers)
    reports.append(check_jacobian(chart, c, st.jacobian_rtol, workers))
    reports += check_generalized_metric(chart, c, st.identity_tol, workers)

    cc = random_shell(domain, st.n_clebsch, st.seed + 1)
    reports += check_clebsch(chart, cc, domain.midpoint, st.clebsch_tol, st.tangency_tol, workers)

    h = st.fd_rel_step * length_scale(chart, domain)
    p, cf = cartesian_interior(chart, domain, st.n_fd, st.seed + 2)
    reports.append(force_balance(chart, p, h=h, seed_zeta=cf.zeta, tol=st.fd_tol, workers=workers))
    reports += divergence_check(chart, cf, h=h, fd_tol=st.fd_tol, id_tol=st.jacobian_rtol, workers=workers)

    reports += boundary_report(chart, domain.midpoint, tol=st.tangency_tol, n=st.n_clebsch, seed=st.seed + 3)

    sigma, gen = symmetry_scan(chart, domain.midpoint, st.n_symmetry, st.seed + 4)
    detail = {"a": list(gen.a), "b": list(gen.b), "psi_level": domain.midpoint}
    if chart.kind == AXISYMMETRIC or (chart.kind == F_PERTURBED and chart.eps == 0):
        reports.append(ResidualReport.from_values("symmetry_sigma_min", [sigma], st.identity_tol, **detail))
    else:
        reports.append(ResidualReport.from_values("symmetry_sigma_min", [sigma], st.symmetry_floor,
                                                  require=ABOVE, **detail))
    return reports
