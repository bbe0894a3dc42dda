"""Smallest singular value of the isometry matrix on psi = 0.95 for several eps and seeds."""

import argparse

import numpy as np

from toroidal_euler.charts import ChartFamily
from toroidal_euler.verify import symmetry_scan

if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=200)
    ap.add_argument("--seeds", type=int, default=5)
    args = ap.parse_args()
    print(f"{'eps':>5} {'sigma_min (seed 0)':>19} {'min over seeds':>15} {'max over seeds':>15}  b_z")
    for eps in (0.0, 0.1, 0.3, 0.6):
        chart = ChartFamily.f_perturbed(eps)
        runs = [symmetry_scan(chart, 0.95, args.samples, seed) for seed in range(args.seeds)]
        s = np.array([r[0] for r in runs])
        print(f"{eps:5.2f} {s[0]:19.4e} {s.min():15.4e} {s.max():15.4e}  {runs[0][1].b[2]:.6f}")
