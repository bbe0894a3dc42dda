"""Exact and first-order fields on psi = 0.95 for eps in {0, 0.1, 0.3, 0.6}, plus the error table."""

import argparse
from pathlib import Path

from toroidal_euler.cli import main
from toroidal_euler.verify import taylor_compare

if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path("out/field"))
    ap.add_argument("-n", type=int, default=32)
    args = ap.parse_args()
    code = main(["field", "--out", str(args.out), "--ntheta", str(args.n), "--nzeta", str(args.n),
                 "--eps", "0,0.1,0.3,0.6"])
    rows, order = taylor_compare([0.0, 0.1, 0.2, 0.3, 0.6])
    print(f"{'eps':>5} {'max|u-u1|':>12} {'max|psi-psi1|':>14}")
    for r in rows:
        print(f"{r.eps:5.2f} {r.err_u:12.4e} {r.err_psi:14.4e}")
    print(f"fitted order of the u remainder: {order:.3f}")
    raise SystemExit(code)
