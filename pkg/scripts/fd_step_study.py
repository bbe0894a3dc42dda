"""Force-balance and divergence residuals against the finite-difference step.

Shows where truncation dominates on shells close to the boundary of M (the
preset parameter sets b, c, e, f) and where the roundoff floor takes over.
"""

import argparse

import numpy as np

from toroidal_euler.charts import ChartFamily, DomainSpec, surface_presets
from toroidal_euler.grid import cartesian_interior, length_scale
from toroidal_euler.verify import CartesianFlow, analytic_divergence, fd_stencil, force_balance_residual

CASES = {
    "sin2 eps=0.3": (ChartFamily.f_perturbed(0.3), DomainSpec(0.8, 0.99)),
    "b": (surface_presets()["b"], DomainSpec(0.965, 0.995)),
    "c": (surface_presets()["c"], DomainSpec(0.915, 0.99)),
    "e": (surface_presets()["e"], DomainSpec(0.88, 0.96)),
    "f": (surface_presets()["f"], DomainSpec(0.88, 0.96)),
}

if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-n", type=int, default=300)
    args = ap.parse_args()
    for name, (chart, dom) in CASES.items():
        L = length_scale(chart, dom)
        p, c = cartesian_interior(chart, dom, args.n, seed=2)
        det, _ = chart.jacobian_closed_form(c)
        flow = CartesianFlow(chart)
        print(f"{name}: L = {L:.4f}, min det = {np.min(det):.3e}")
        for rel in (4e-4, 2e-4, 1e-4, 5e-5, 2.5e-5, 1.25e-5):
            h = rel * L
            res, ok = force_balance_residual(flow, p, h, c.zeta)
            _, du, _, ok2 = fd_stencil(flow, p, h, c.zeta)
            div = np.abs(np.trace(du, axis1=1, axis2=2) - analytic_divergence(chart, c))
            print(f"  h = {rel:.2e} L: force {np.max(res[ok]):.3e}  div {np.max(div[ok2]):.3e}")
