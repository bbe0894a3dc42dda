"""Sample sets in chart coordinates and in Cartesian space."""

from __future__ import annotations

import numpy as np

from .charts import ChartFamily, DomainSpec
from .diffgeo import TWO_PI, Coords


def random_shell(domain: DomainSpec, n: int, seed: int = 0) -> Coords:
    """``n`` points uniform in ``(psi, theta, zeta)`` over the shell."""
    rng = np.random.default_rng(seed)
    psi = rng.uniform(domain.psi_min, domain.psi_max, n)
    theta = rng.uniform(0.0, TWO_PI, n)
    zeta = rng.uniform(0.0, TWO_PI, n)
    return Coords(psi, theta, zeta)


def random_level_set(psi: float, n: int, seed: int = 0) -> Coords:
    rng = np.random.default_rng(seed)
    return Coords(np.full(n, float(psi)), rng.uniform(0.0, TWO_PI, n), rng.uniform(0.0, TWO_PI, n))


def angle_grid(psi: float, ntheta: int, nzeta: int, closed: bool = False) -> Coords:
    """Structured level-set grid with ``theta_i = 2 pi i / ntheta`` and ``zeta_j = 2 pi j / nzeta``.

    With ``closed`` the closing index ``i = ntheta`` (``j = nzeta``) is
    included and evaluated at angle 0 so that seam vertices coincide exactly.
    Arrays have shape ``(ntheta[+1], nzeta[+1])``.
    """
    if ntheta < 2 or nzeta < 2:
        raise ValueError("grid counts must be at least 2")
    i = np.arange(ntheta + int(closed))
    j = np.arange(nzeta + int(closed))
    theta = TWO_PI * (i % ntheta) / ntheta
    zeta = TWO_PI * (j % nzeta) / nzeta
    t, z = np.meshgrid(theta, zeta, indexing="ij")
    return Coords(np.full(t.shape, float(psi)), t, z)


def cartesian_interior(chart: ChartFamily, domain: DomainSpec, n: int, seed: int = 0, *,
                       require_nprime: bool = False):
    """Cartesian points ``forward(c)`` for random shell coordinates ``c``.

    With ``require_nprime`` the draw is repeated until ``n`` points pass the
    sufficient image bound.  Returns ``(points, coords)``.
    """
    rng_seed = seed
    pts, crd = [], []
    have = 0
    for _ in range(64):
        c = random_shell(domain, max(n, 64), rng_seed)
        p = chart.forward(c)
        keep = chart.in_domain_cartesian(p) if require_nprime else np.ones(p.shape[0], dtype=bool)
        pts.append(p[keep])
        crd.append(c.stack()[keep])
        have += int(np.sum(keep))
        if have >= n:
            break
        rng_seed += 1
    else:
        raise ValueError(f"could not draw {n} points inside the image bound from {domain}")
    p = np.concatenate(pts)[:n]
    c = Coords.from_stack(np.concatenate(crd)[:n])
    return p, c


def length_scale(chart: ChartFamily, domain: DomainSpec, n: int = 64) -> float:
    """Diagonal of the bounding box of the shell's outer surface."""
    c = angle_grid(domain.psi_min, n, n)
    p = chart.forward(c).reshape(-1, 3)
    return float(np.linalg.norm(np.ptp(p, axis=0)))
