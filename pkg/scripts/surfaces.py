"""Write the level-set meshes psi = 0.95 for the six preset parameter sets."""

import argparse
from pathlib import Path

from toroidal_euler.cli import main


def run(out: Path, psi: float, n: int) -> int:
    worst = 0
    for key in "abcdef":
        code = main(["surface", "--preset", key, "--psi", str(psi), "--ntheta", str(n), "--nzeta", str(n),
                     "--out", str(out / f"surface_{key}.csv")])
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path("out/surfaces"))
    ap.add_argument("--psi", type=float, default=0.95)
    ap.add_argument("-n", type=int, default=64)
    args = ap.parse_args()
    raise SystemExit(run(args.out, args.psi, args.n))
