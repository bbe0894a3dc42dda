"""Explicit toroidal coordinate maps ``x(psi, theta, zeta)`` and their inverses.

Three families are provided:

* ``axisymmetric``: nested circular tori around the z-axis,
* ``f_perturbed``: the same tori with the toroidal axis displaced by
  ``eps * (dx(zeta), dy(zeta))`` where ``dx' = f sin(zeta)``, ``dy' = -f cos(zeta)``,
* ``general_cc1``: additionally shifted/deformed in the poloidal plane by
  ``eps2`` (sin/cos of theta) and ``eps3`` (a pair ``dz(theta), g(theta)``).

All three satisfy the map equations that make ``u = -d/dtheta`` a steady
Euler flow with pressure ``P = psi``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from . import jets
from .diffgeo import TWO_PI, Coords, DomainError, jet_eval
from .fourier import COS1, SIN1, TrigPoly

logger = logging.getLogger(__name__)

SQRT2 = float(np.sqrt(2.0))

AXISYMMETRIC = "axisymmetric"
F_PERTURBED = "f_perturbed"
GENERAL_CC1 = "general_cc1"
KINDS = (AXISYMMETRIC, F_PERTURBED, GENERAL_CC1)


class ConvergenceError(RuntimeError):
    def __init__(self, msg, residual=None):
        super().__init__(msg)
        self.residual = residual


# ---------------------------------------------------------------------------
# perturbation generators

@dataclass(frozen=True)
class FSpec:
    """The generator ``f(zeta)`` of the toroidal-axis perturbation."""

    variant: str
    f: TrigPoly

    @classmethod
    def sin2(cls):
        return cls("sin2", TrigPoly(Fraction(1, 2), {2: Fraction(-1, 2)}))

    @classmethod
    def sin2_of3(cls):
        return cls("sin2_of3", TrigPoly(Fraction(1, 2), {6: Fraction(-1, 2)}))

    @classmethod
    def mix(cls):
        # sin^4(2z) = 3/8 - cos(4z)/2 + cos(8z)/8,  cos^2(3z) = 1/2 + cos(6z)/2
        return cls("mix", TrigPoly(Fraction(7, 8), {4: Fraction(-1, 2), 6: Fraction(1, 2), 8: Fraction(1, 8)}))

    @classmethod
    def fourier(cls, const=0.0, cos=(), sin=()):
        return cls("fourier", TrigPoly.from_lists(const, cos, sin))

    @classmethod
    def named(cls, name: str) -> "FSpec":
        try:
            return {"sin2": cls.sin2, "sin2_of3": cls.sin2_of3, "mix": cls.mix}[name]()
        except KeyError:
            raise ValueError(f"unknown f variant {name!r}") from None

    def __call__(self, zeta):
        return self.f(zeta)

    @cached_property
    def max_value(self) -> float:
        return self.f.max_abs()


def delta_xy_from_f(fspec: FSpec):
    """Axis displacement ``(dx, dy)`` with ``dx' = f sin``, ``dy' = -f cos`` and zero mean.

    Raises ``ValueError`` when ``f`` has a first harmonic, since then the
    displacement is not periodic.
    """
    fs = fspec.f * SIN1
    fc = -(fspec.f * COS1)
    if fs.const != 0 or fc.const != 0:
        raise ValueError("f(zeta) with a first harmonic gives a secular (non-periodic) axis displacement")
    return fs.antiderivative(), fc.antiderivative()


@dataclass(frozen=True)
class DzGPair:
    """Poloidal deformation pair obeying
    ``sin(t) (g' - dz'') + cos(t) (dz' + g'') = 0``."""

    dz: TrigPoly
    g: TrigPoly

    def __post_init__(self):
        res = float(np.max(np.abs(self.ode_residual(np.linspace(0.0, TWO_PI, 1000, endpoint=False)))))
        if res >= 1e-12 * max(1.0, self.dz.max_abs_bound() + self.g.max_abs_bound()):
            raise ValueError(f"(dz, g) pair violates the poloidal compatibility ODE: residual {res:.3e}")

    @classmethod
    def example(cls):
        """``dz = -sin 4t - 10 sin 2t``, ``g = cos 4t - 10 cos 2t``."""
        return cls(TrigPoly(0, {}, {4: -1, 2: -10}), TrigPoly(0, {4: 1, 2: -10}, {}))

    @classmethod
    def zero(cls):
        return cls(TrigPoly(), TrigPoly())

    def ode_residual(self, theta):
        dz1 = self.dz.derivative()
        g1 = self.g.derivative()
        return (np.sin(theta) * (g1(theta) - dz1.derivative()(theta))
                + np.cos(theta) * (dz1(theta) + g1.derivative()(theta)))


# ---------------------------------------------------------------------------
# chart families

@dataclass(frozen=True)
class ChartFamily:
    kind: str
    psi0: float = 1.0
    r0: float = 1.0
    eps: float = 0.0  # eps for f_perturbed, eps1 for general_cc1
    eps2: float = 0.0
    eps3: float = 0.0
    fspec: FSpec = field(default_factory=FSpec.sin2)
    dzg: DzGPair = field(default_factory=DzGPair.zero)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown chart kind {self.kind!r}")
        params = (self.psi0, self.r0, self.eps, self.eps2, self.eps3)
        if not all(np.isfinite(p) for p in params):
            raise ValueError("chart parameters must be finite")
        if self.psi0 <= 0 or self.r0 <= 0:
            raise ValueError("psi0 and r0 must be positive")
        if min(self.eps, self.eps2, self.eps3) < 0:
            raise ValueError("perturbation amplitudes must be non-negative")
        if self.kind == AXISYMMETRIC and (self.eps or self.eps2 or self.eps3):
            raise ValueError("axisymmetric chart takes no perturbation")
        if self.kind == F_PERTURBED and (self.eps2 or self.eps3):
            raise ValueError("f_perturbed chart takes only eps")
        if self.kind != AXISYMMETRIC:
            self.deltas  # noqa: B018  rejects f with a first harmonic at construction

    # constructors ---------------------------------------------------------

    @classmethod
    def axisymmetric(cls, psi0=1.0, r0=1.0):
        return cls(AXISYMMETRIC, psi0, r0)

    @classmethod
    def f_perturbed(cls, eps, fspec=None, psi0=1.0, r0=1.0):
        return cls(F_PERTURBED, psi0, r0, eps, fspec=fspec or FSpec.sin2())

    @classmethod
    def general_cc1(cls, eps1, eps2, eps3, fspec=None, dzg=None, psi0=1.0, r0=1.0):
        return cls(GENERAL_CC1, psi0, r0, eps1, eps2, eps3, fspec or FSpec.sin2_of3(), dzg or DzGPair.example())

    # perturbation data ----------------------------------------------------

    @cached_property
    def deltas(self):
        if self.kind == AXISYMMETRIC:
            return TrigPoly(), TrigPoly()
        return delta_xy_from_f(self.fspec)

    @property
    def f_max(self) -> float:
        return 0.0 if self.kind == AXISYMMETRIC else self.fspec.max_value

    @cached_property
    def nprime_factor(self) -> float:
        """Factor ``k`` in the sufficient image bound ``r > k * eps``.

        ``k = A + sqrt(A^2 + F^2)`` with ``A = max|dx| + max|dy|`` and
        ``F = max f``; for ``f = sin^2`` this is exactly ``1 + sqrt(2)``.
        """
        if self.kind == AXISYMMETRIC:
            return 0.0
        if self.fspec.variant == "sin2":
            return 1.0 + SQRT2
        dx, dy = self.deltas
        a = dx.max_abs() + dy.max_abs()
        return a + float(np.hypot(a, self.f_max))

    # the map --------------------------------------------------------------

    def _poloidal(self, psi, theta):
        """``(R, Z)`` in the poloidal half-plane; works on floats, arrays or Jets."""
        s = jets.sqrt(self.psi0 - psi)
        ct, st = jets.cos(theta), jets.sin(theta)
        R = self.r0 + s * ct
        Z = s * st
        if self.eps2:
            R = R + self.eps2 * st
            Z = Z + self.eps2 * ct
        if self.eps3:
            R = R - self.eps3 * self.dzg.g(theta)
            Z = Z + self.eps3 * self.dzg.dz(theta)
        return R, Z

    def embed(self, psi, theta, zeta):
        """Closed-form map; returns ``(x, y, z)`` as floats, arrays or Jets."""
        R, Z = self._poloidal(psi, theta)
        x = R * jets.cos(zeta)
        y = R * jets.sin(zeta)
        if self.eps:
            dx, dy = self.deltas
            x = x + self.eps * dx(zeta)
            y = y + self.eps * dy(zeta)
        return x, y, Z

    def forward(self, c: Coords) -> np.ndarray:
        psi, theta, zeta = c.arrays()
        if np.any(psi > self.psi0):
            raise DomainError(f"psi must not exceed psi0 = {self.psi0}")
        return np.stack(self.embed(psi, theta, zeta), axis=-1)

    # Jacobian -------------------------------------------------------------

    def jacobian_closed_form(self, c: Coords):
        """Closed-form ``det(dx/dy)`` and its theta derivative.

        ``det = (R - eps f(zeta)) * K`` with ``K = -(R_psi Z_theta - Z_psi R_theta)``;
        for the first two families ``K = 1/2``.
        """
        psi, theta, zeta = c.arrays()
        s = np.sqrt(self.psi0 - psi)
        ct, st = np.cos(theta), np.sin(theta)
        R, _ = self._poloidal(psi, theta)
        radial = R - self.eps * self.fspec(zeta) if self.eps else R
        R_t = -s * st
        K = np.full(np.shape(R), 0.5)
        K_t = np.zeros(np.shape(R))
        if self.eps2 or self.eps3:
            dz1, g1 = self.dzg.dz.derivative(), self.dzg.g.derivative()
            dz2, g2 = dz1.derivative(), g1.derivative()
            R_t = R_t + self.eps2 * ct - self.eps3 * g1(theta)
            K = 0.5 + (-self.eps2 * st * ct + 0.5 * self.eps3 * (ct * dz1(theta) + st * g1(theta))) / s
            K_t = (-self.eps2 * np.cos(2 * theta)
                   + 0.5 * self.eps3 * (-st * dz1(theta) + ct * dz2(theta) + ct * g1(theta) + st * g2(theta))) / s
        return radial * K, R_t * K + radial * K_t

    # domain predicates ----------------------------------------------------

    def in_domain_coords(self, c: Coords) -> np.ndarray:
        """Membership in the parameter set M where the closed-form Jacobian is positive."""
        psi, theta, zeta = c.arrays()
        ok = psi <= self.psi0
        s = np.sqrt(np.where(ok, self.psi0 - psi, 0.0))
        if self.kind != GENERAL_CC1:
            radial = self.r0 + s * np.cos(theta)
            if self.eps:
                radial = radial - self.eps * self.fspec(zeta)
            return ok & (radial > 0)
        R, _ = self._poloidal(np.where(ok, psi, self.psi0), theta)
        margin = self.eps * self.f_max + self.eps2 + self.eps3 * self.dzg.g.max_abs()
        # 2 s K > 0, written without dividing by s so the axis is handled
        dz1, g1 = self.dzg.dz.derivative(), self.dzg.g.derivative()
        two_sk = (s - self.eps2 * np.sin(2 * theta)
                  + self.eps3 * (np.cos(theta) * dz1(theta) + np.sin(theta) * g1(theta)))
        return ok & (R > margin) & (two_sk > 0)

    def in_domain_cartesian(self, p) -> np.ndarray:
        """Sufficient image test ``r > k * eps`` (``k = 1 + sqrt 2`` for f = sin^2).

        For ``general_cc1`` the bound is widened by the poloidal amplitudes and
        the point must also invert into M.
        """
        p = np.asarray(p, dtype=float)
        r = np.hypot(p[..., 0], p[..., 1])
        if self.kind == AXISYMMETRIC:
            return r > 0
        bound = self.nprime_factor * self.eps
        if self.kind == F_PERTURBED:
            return r > bound
        bound += self.eps2 + self.eps3 * self.dzg.g.max_abs()
        ok = r > bound
        if np.any(ok):
            c, conv, _ = _inverse_impl(self, p, None, 100)
            ok &= conv & self.in_domain_coords(c)
        return ok

    def in_domain(self, point) -> np.ndarray:
        if isinstance(point, Coords):
            return self.in_domain_coords(point)
        return self.in_domain_cartesian(point)

    def describe(self) -> str:
        if self.kind == AXISYMMETRIC:
            return f"axisymmetric(psi0={self.psi0:g}, r0={self.r0:g})"
        if self.kind == F_PERTURBED:
            return f"f_perturbed({self.fspec.variant}, eps={self.eps:g}, psi0={self.psi0:g}, r0={self.r0:g})"
        return (f"general_cc1({self.fspec.variant}, eps1={self.eps:g}, eps2={self.eps2:g}, "
                f"eps3={self.eps3:g}, psi0={self.psi0:g}, r0={self.r0:g})")


# ---------------------------------------------------------------------------
# inverse map

def _axis_angle(chart, x, y, zeta):
    if chart.eps:
        dx, dy = chart.deltas
        return x - chart.eps * dx(zeta), y - chart.eps * dy(zeta)
    return x, y


def _zeta_fixed_point(chart, x, y, zeta, max_iter):
    """Iterate ``zeta <- atan2(y - eps dy(zeta), x - eps dx(zeta))``.

    The map has slope ``eps f / rho`` at the fixed point, so it contracts
    wherever the Jacobian is positive.  A point whose step grows is damped by
    one half; points that still fail to settle are reported as not converged.
    """
    zeta = np.array(zeta, dtype=float)
    step_prev = np.full(zeta.shape, np.inf)
    done = np.zeros(zeta.shape, dtype=bool)
    iters = np.zeros(zeta.shape, dtype=int)
    for k in range(max_iter):
        X, Y = _axis_angle(chart, x, y, zeta)
        target = np.arctan2(Y, X)
        step = np.angle(np.exp(1j * (target - zeta)))  # wrap to (-pi, pi]
        overshoot = np.abs(step) > np.abs(step_prev)
        step = np.where(overshoot, 0.5 * step, step)
        step = np.where(done, 0.0, step)
        zeta = zeta + step
        iters = np.where(done, iters, k + 1)
        done |= np.abs(step) <= 4e-16 * np.maximum(1.0, np.abs(zeta))
        step_prev = np.where(done, step_prev, np.abs(step))
        if np.all(done):
            break
    return zeta, done, iters


def _poloidal_solve(chart, rho, z, ngrid=256, max_iter=60):
    """Solve ``R(s, theta) = rho``, ``Z(s, theta) = z`` for the general family.

    For fixed theta both equations are linear in ``s``, leaving the scalar
    equation ``h(theta) = A sin(theta) - B cos(theta) = 0`` with
    ``A = rho - r0 - eps2 sin + eps3 g``, ``B = z - eps2 cos - eps3 dz``.
    Inside M the admissible root is an upward crossing (``h' = 2 s K > 0``)
    with ``s = A cos + B sin > 0``; it is bracketed on a grid and polished by
    safeguarded Newton steps.
    """
    e2, e3, dzg = chart.eps2, chart.eps3, chart.dzg
    g1, dz1 = dzg.g.derivative(), dzg.dz.derivative()
    rho = np.asarray(rho, dtype=float)[..., None]
    z = np.asarray(z, dtype=float)[..., None]

    def parts(th):
        st, ct = np.sin(th), np.cos(th)
        A = rho - chart.r0 - e2 * st + e3 * dzg.g(th)
        B = z - e2 * ct - e3 * dzg.dz(th)
        h = A * st - B * ct
        dh = (-e2 * ct + e3 * g1(th)) * st + A * ct - (e2 * st - e3 * dz1(th)) * ct + B * st
        return h, dh, A * ct + B * st

    grid = np.linspace(0.0, TWO_PI, ngrid + 1)
    h, _, s = parts(np.broadcast_to(grid, rho.shape[:-1] + grid.shape))
    up = (h[..., :-1] <= 0) & (h[..., 1:] > 0) & (s[..., :-1] + s[..., 1:] > 0)
    seed = np.mod(np.arctan2(z[..., 0], rho[..., 0] - chart.r0), TWO_PI)
    mid = 0.5 * (grid[:-1] + grid[1:])
    dist = np.abs(np.angle(np.exp(1j * (mid - seed[..., None]))))
    k = np.argmin(np.where(up, dist, np.inf), axis=-1)
    found = np.take_along_axis(up, k[..., None], axis=-1)[..., 0]
    lo, hi = grid[k], grid[k + 1]
    th = 0.5 * (lo + hi)
    for _ in range(max_iter):
        hv, dhv, _ = parts(th[..., None])
        hv, dhv = hv[..., 0], dhv[..., 0]
        lo = np.where(hv <= 0, th, lo)
        hi = np.where(hv > 0, th, hi)
        with np.errstate(divide="ignore", invalid="ignore"):
            nxt = th - hv / dhv
        outside = ~((nxt > lo) & (nxt < hi))
        nxt = np.where(outside, 0.5 * (lo + hi), nxt)
        step = np.abs(nxt - th)
        th = nxt
        if np.all(step < 1e-15):
            break
    _, _, s = parts(th[..., None])
    s = np.where(found, s[..., 0], np.nan)
    return s, th


def _recover_poloidal(chart, x, y, z, zeta):
    X, Y = _axis_angle(chart, x, y, zeta)
    rho = np.hypot(X, Y)
    if chart.kind == GENERAL_CC1 and (chart.eps2 or chart.eps3):
        s, theta = _poloidal_solve(chart, rho, z)
    else:
        s = np.hypot(rho - chart.r0, z)
        theta = np.arctan2(z, rho - chart.r0)
    return chart.psi0 - s * s, theta


def _newton3(chart, p, y0, max_iter=40):
    """Full Newton on all three coordinates using the jet Jacobian."""
    y = np.array(y0, dtype=float)
    for _ in range(max_iter):
        y[..., 0] = np.minimum(y[..., 0], chart.psi0 - 1e-14)
        jet = jet_eval(chart, Coords.from_stack(y))
        r = jet.x - p
        dy = np.linalg.solve(jet.d1, r[..., None])[..., 0]
        # keep psi below psi0 by halving overly long steps
        bad = y[..., 0] - dy[..., 0] >= chart.psi0
        dy = np.where(bad[..., None], 0.5 * dy, dy)
        y = y - dy
        if np.all(np.abs(dy) < 1e-15 * np.maximum(1.0, np.abs(y))):
            break
    return y


def _inverse_impl(chart, p, seed_zeta, max_iter):
    p = np.asarray(p, dtype=float)
    x, y, z = p[..., 0], p[..., 1], p[..., 2]
    scale = 1e-12 * (1.0 + np.linalg.norm(p, axis=-1))
    if chart.kind == AXISYMMETRIC:
        r = np.hypot(x, y)
        c = Coords(chart.psi0 - (r - chart.r0) ** 2 - z ** 2, np.arctan2(z, r - chart.r0), np.arctan2(y, x))
        iters = np.zeros(x.shape, dtype=int)
    else:
        zeta0 = np.arctan2(y, x) if seed_zeta is None else np.broadcast_to(seed_zeta, x.shape)
        zeta, done, iters = _zeta_fixed_point(chart, x, y, zeta0, max_iter)
        psi, theta = _recover_poloidal(chart, x, y, z, zeta)
        c = Coords(psi, theta, zeta)
        res = np.linalg.norm(chart.forward(Coords(np.minimum(psi, chart.psi0), theta, zeta)) - p, axis=-1)
        stalled = ~done | ~(res < scale)
        if np.any(stalled):
            logger.debug("zeta fixed point stalled at %d points; switching to Newton", int(np.sum(stalled)))
            # restart from the seed where the iteration wandered off
            psi_s, theta_s = _recover_poloidal(chart, x, y, z, zeta0)
            seed = Coords(psi_s, theta_s, zeta0)
            res_s = np.linalg.norm(chart.forward(Coords(np.minimum(psi_s, chart.psi0), theta_s, zeta0)) - p, axis=-1)
            y0 = np.where((res_s < res)[..., None], seed.stack(), c.stack())[stalled]
            y1 = _newton3(chart, p[stalled], y0)
            ys = c.stack()
            ys[stalled] = y1
            c = Coords.from_stack(ys)
    c = c.reduced()
    res = np.linalg.norm(chart.forward(Coords(np.minimum(c.arrays()[0], chart.psi0), c.theta, c.zeta)) - p, axis=-1)
    conv = res < scale
    return c, conv, iters


def inverse(chart: ChartFamily, p, *, seed_zeta=None, max_iter: int = 100, return_info: bool = False):
    """Chart coordinates of Cartesian point(s) ``p`` (angles reduced to [0, 2 pi)).

    The closed form is used for the axisymmetric chart.  Otherwise the toroidal
    angle is found by fixed-point iteration (seeded with ``atan2(y, x)`` or
    ``seed_zeta``), after which ``(psi, theta)`` follow from the perturbed polar
    radius; points where that stalls are finished with a three-dimensional
    Newton solve.

    Raises :class:`ConvergenceError` if any point misses
    ``|forward(c) - p| < 1e-12 (1 + |p|)``, unless ``return_info`` is set, in
    which case ``(coords, converged_mask, iterations)`` is returned.
    """
    c, conv, iters = _inverse_impl(chart, p, seed_zeta, max_iter)
    if return_info:
        return c, conv, iters
    if not np.all(conv):
        p = np.asarray(p, dtype=float)
        res = np.linalg.norm(chart.forward(Coords(np.minimum(c.arrays()[0], chart.psi0), c.theta, c.zeta)) - p,
                             axis=-1)
        raise ConvergenceError(f"inverse map did not converge at {int(np.sum(~conv))} point(s); "
                               f"max residual {np.max(res[~conv]):.3e}", residual=res)
    return c


def psi_cartesian(chart: ChartFamily, p, *, seed_zeta=None) -> np.ndarray:
    """Flux label ``psi0 - (rho - r0)^2 - z^2`` evaluated directly at Cartesian ``p``.

    ``rho`` is the distance from the displaced axis, which needs the toroidal
    angle from the fixed-point solve.
    """
    if chart.kind == GENERAL_CC1:
        raise ValueError("psi_cartesian has no closed form for general_cc1; use inverse()")
    p = np.asarray(p, dtype=float)
    x, y, z = p[..., 0], p[..., 1], p[..., 2]
    if chart.kind == AXISYMMETRIC or chart.eps == 0:
        rho = np.hypot(x, y)
    else:
        c = inverse(chart, p, seed_zeta=seed_zeta)
        X, Y = _axis_angle(chart, x, y, c.zeta)
        rho = np.hypot(X, Y)
    return chart.psi0 - (rho - chart.r0) ** 2 - z ** 2


# ---------------------------------------------------------------------------
# toroidal shells

@dataclass(frozen=True)
class DomainCheck:
    in_m: bool
    min_jacobian: float
    in_nprime: bool
    min_r_margin: float
    binding: bool


@dataclass(frozen=True)
class DomainSpec:
    """Closed shell ``psi_min <= psi <= psi_max`` of a chart."""

    psi_min: float
    psi_max: float

    def __post_init__(self):
        if not self.psi_min <= self.psi_max:
            raise ValueError("psi_min must not exceed psi_max")

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.psi_min + self.psi_max)

    def check(self, chart: ChartFamily, n: int = 96) -> DomainCheck:
        """Jacobian positivity on the shell and the sufficient image bound, with slack."""
        if self.psi_max >= chart.psi0:
            raise DomainError(f"psi_max = {self.psi_max} must lie below psi0 = {chart.psi0}")
        psi = np.linspace(self.psi_min, self.psi_max, 9)
        ang = np.linspace(0.0, TWO_PI, n, endpoint=False)
        c = Coords(psi[:, None, None], ang[None, :, None], ang[None, None, :])
        det, _ = chart.jacobian_closed_form(c)
        min_det = float(np.min(det))
        if chart.kind == F_PERTURBED or chart.kind == AXISYMMETRIC:
            # worst case of (r0 + s cos(theta) - eps f) is attained at theta = pi, f = max f
            s_max = np.sqrt(chart.psi0 - self.psi_min)
            min_det = min(min_det, 0.5 * (chart.r0 - s_max - chart.eps * chart.f_max))
        in_m = bool(min_det > 0 and np.all(chart.in_domain_coords(c)))
        p = chart.forward(c)
        r = np.hypot(p[..., 0], p[..., 1])
        bound = chart.nprime_factor * chart.eps
        if chart.kind == GENERAL_CC1:
            bound += chart.eps2 + chart.eps3 * chart.dzg.g.max_abs()
        margin = float(np.min(r) - bound)
        return DomainCheck(in_m, min_det, margin > 0, margin, binding=in_m and margin <= 0)

    def validate(self, chart: ChartFamily) -> DomainCheck:
        chk = self.check(chart)
        if not chk.in_m:
            raise DomainError(f"shell [{self.psi_min}, {self.psi_max}] of {chart.describe()} leaves the set where "
                              f"the Jacobian is positive (min det = {chk.min_jacobian:.3e})")
        if not chk.in_nprime:
            logger.info("shell image reaches below the sufficient bound r > %.4g (slack %.3e)",
                        chart.nprime_factor * chart.eps, chk.min_r_margin)
        return chk


# ---------------------------------------------------------------------------
# named chart parameter sets (r0 = psi0 = 1)

def surface_presets():
    s2, s23, mix = FSpec.sin2(), FSpec.sin2_of3(), FSpec.mix()
    return {
        "a": ChartFamily.axisymmetric(),
        "b": ChartFamily.f_perturbed(0.8, s2),
        "c": ChartFamily.f_perturbed(0.7, s23),
        "d": ChartFamily.f_perturbed(0.7, mix),
        "e": ChartFamily.general_cc1(0.5, 0.1, 0.0, s23, DzGPair.example()),
        "f": ChartFamily.general_cc1(0.5, 0.05, 0.005, s23, DzGPair.example()),
    }
