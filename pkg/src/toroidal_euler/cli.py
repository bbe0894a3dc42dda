"""Command-line entry point: ``surface``, ``field`` and ``verify``.

Exit status is 0 on success, 1 when an asserted check misses its tolerance
and 2 on configuration or domain errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from .charts import AXISYMMETRIC, F_PERTURBED, ChartFamily, ConvergenceError, FSpec, inverse
from .config import ConfigError, RunConfig, load_config
from .diffgeo import TWO_PI, Coords, DomainError
from .grid import angle_grid
from .verify import grad_taylor_psi, perturbed_velocity_closed_form, run_suite, taylor_first_order

logger = logging.getLogger("toroidal_euler")

EXIT_OK, EXIT_TOLERANCE, EXIT_CONFIG = 0, 1, 2
LEVEL_SET_TOL = 1e-10
FIELD_COLUMNS = ("x", "y", "z", "ux", "uy", "uz", "u1x", "u1y", "u1z", "psi", "psi1")


def _fmt(a) -> str:
    return f"{float(a):.17g}"


def _write_csv(path: Path, header, rows: np.ndarray):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _json_line(rec) -> str:
    return json.dumps(rec, sort_keys=True, allow_nan=True)


# ---------------------------------------------------------------------------
# surface

def surface_mesh(chart: ChartFamily, psi: float, ntheta: int, nzeta: int):
    """Closed structured mesh rows ``(theta, zeta, x, y, z)`` and the level-set error of every vertex."""
    if not psi < chart.psi0:
        raise DomainError(f"surface level psi = {psi} must lie below psi0 = {chart.psi0}")
    g = angle_grid(psi, ntheta, nzeta, closed=True)
    pts = chart.forward(g)
    i = np.arange(ntheta + 1)
    j = np.arange(nzeta + 1)
    # closure rows carry the label 2 pi but reuse the vertex computed at angle 0
    theta_lab = np.where(i == ntheta, TWO_PI, g.theta[:, 0])
    zeta_lab = np.where(j == nzeta, TWO_PI, g.zeta[0, :])
    t, z = np.meshgrid(theta_lab, zeta_lab, indexing="ij")
    rows = np.column_stack([t.ravel(), z.ravel(), pts.reshape(-1, 3)])
    c, conv, _ = inverse(chart, pts.reshape(-1, 3), seed_zeta=g.zeta.ravel(), return_info=True)
    err = np.where(conv, np.abs(c.psi - psi), np.inf)
    return rows, err


def cmd_surface(cfg: RunConfig, out: Path) -> int:
    chart = cfg.build_chart()
    g = cfg.grid
    chk = chart.in_domain_coords(angle_grid(g.psi, g.ntheta, g.nzeta))
    if not np.all(chk):
        logger.warning("level set psi = %g of %s leaves the set where the chart is a local diffeomorphism "
                       "at %d of %d vertices", g.psi, chart.describe(), int(np.sum(~chk)), chk.size)
    rows, err = surface_mesh(chart, g.psi, g.ntheta, g.nzeta)
    _write_csv(out, ("theta", "zeta", "x", "y", "z"), rows)
    worst = float(np.max(err))
    ok = worst < LEVEL_SET_TOL
    print(f"surface {chart.describe()} psi={g.psi:g}: {rows.shape[0]} vertices -> {out}")
    print(f"[{'PASS' if ok else 'FAIL'}] level_set: max |psi(x) - psi| = {worst:.3e} < {LEVEL_SET_TOL:.0e}")
    return EXIT_OK if ok else EXIT_TOLERANCE


# ---------------------------------------------------------------------------
# field

def field_rows(eps: float, psi: float, ntheta: int, nzeta: int, psi0: float = 1.0, r0: float = 1.0):
    """Exact and first-order fields on the exact level set of the ``f = sin^2`` chart.

    Returns ``(rows, stats)`` with the tangency violations of the exact and
    the first-order pairs.
    """
    chart = ChartFamily.f_perturbed(eps, FSpec.sin2(), psi0, r0)
    g = angle_grid(psi, ntheta, nzeta)
    p = chart.forward(g).reshape(-1, 3)
    zeta = inverse(chart, p, seed_zeta=g.zeta.ravel()).zeta
    u, psi_exact = perturbed_velocity_closed_form(chart, p, zeta)
    u1, psi1 = taylor_first_order(eps, p, psi0, r0)
    grad1 = grad_taylor_psi(eps, p, r0)
    tang1 = np.abs(np.sum(u1 * grad1, axis=-1)) / (np.linalg.norm(u1, axis=-1) * np.linalg.norm(grad1, axis=-1))
    stats = {
        "eps": float(eps),
        "psi": float(psi),
        "samples": int(p.shape[0]),
        "tangency_first_order_max": float(np.max(tang1)),
        "max_abs_u_minus_u1": float(np.max(np.linalg.norm(u - u1, axis=-1))),
        "max_abs_psi_minus_psi1": float(np.max(np.abs(psi_exact - psi1))),
    }
    return np.column_stack([p, u, u1, psi_exact, psi1]), stats


def cmd_field(cfg: RunConfig, out: Path) -> int:
    g, c = cfg.grid, cfg.chart
    out.mkdir(parents=True, exist_ok=True)
    summaries = []
    for eps in cfg.eps_list:
        if c.r0 <= (1.0 + np.sqrt(2.0)) * eps:
            logger.info("eps = %g exceeds the sufficient bound r0 > eps (1 + sqrt 2)", eps)
        rows, stats = field_rows(eps, g.psi, g.ntheta, g.nzeta, c.psi0, c.r0)
        path = out / f"field_eps{eps:g}.csv"
        _write_csv(path, FIELD_COLUMNS, rows)
        stats["file"] = path.name
        summaries.append(stats)
        print(f"eps={eps:g}: tangency(u1, psi1) max={stats['tangency_first_order_max']:.3e}  "
              f"|u-u1|={stats['max_abs_u_minus_u1']:.3e}  -> {path}")
    with open(out / "field_summary.jsonl", "w", encoding="utf-8", newline="\n") as fh:
        for s in summaries:
            fh.write(_json_line(s) + "\n")
    tang = [s["tangency_first_order_max"] for s in sorted(summaries, key=lambda s: s["eps"])]
    monotone = all(a < b for a, b in zip(tang, tang[1:]))
    print(f"[{'PASS' if monotone else 'FAIL'}] tangency violation increases with eps")
    return EXIT_OK if monotone else EXIT_TOLERANCE


# ---------------------------------------------------------------------------
# verify

def cmd_verify(cfg: RunConfig, out: Path) -> int:
    chart = cfg.build_chart()
    if chart.kind != AXISYMMETRIC:
        bound = chart.nprime_factor * chart.eps
        if chart.kind == F_PERTURBED and not chart.r0 > bound:
            raise DomainError(f"r0 = {chart.r0:g} must exceed eps (1 + sqrt 2) = {bound:.6g} "
                              f"for the image of the chart to be controlled")
    reports = run_suite(chart, cfg.domain(), cfg.suite)
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        for r in reports:
            fh.write(_json_line(r.to_record()) + "\n")
    failed = [r for r in reports if r.asserted and not r.passed]
    lines = [f"verify {chart.describe()} on psi in [{cfg.grid.psi_min:g}, {cfg.grid.psi_max:g}]"]
    lines += [r.summary_line() for r in reports]
    lines.append(f"{len(reports) - len(failed)}/{len(reports)} passed" if not failed
                 else "FAILED: " + ", ".join(r.name for r in failed))
    text = "\n".join(lines) + "\n"
    out.with_suffix(".txt").write_text(text, encoding="utf-8")
    sys.stdout.write(text)
    return EXIT_TOLERANCE if failed else EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="toroidal-euler", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)
    for name, default_out, help_ in (("surface", "surface.csv", "write a level-set mesh"),
                                     ("field", "field", "write exact and first-order fields"),
                                     ("verify", "report.jsonl", "run the residual suite")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--config", type=Path, default=None, help="INI configuration file")
        p.add_argument("--out", type=Path, default=Path(default_out))
        p.add_argument("--preset", default=None, help="named chart parameter set a-f (overrides [chart])")
        if name != "verify":
            p.add_argument("--psi", type=float, default=None, help="level of the sampled surface")
            p.add_argument("--ntheta", type=int, default=None)
            p.add_argument("--nzeta", type=int, default=None)
        if name == "field":
            p.add_argument("--eps", default=None, help="comma-separated eps list")
    return ap


def _apply_overrides(cfg: RunConfig, args) -> RunConfig:
    if args.preset:
        cfg = cfg.with_preset(args.preset)
    grid = cfg.grid
    for key in ("psi", "ntheta", "nzeta"):
        val = getattr(args, key, None)
        if val is not None:
            grid = replace(grid, **{key: val})
    cfg = replace(cfg, grid=grid)
    if getattr(args, "eps", None):
        cfg = replace(cfg, eps_list=tuple(float(v) for v in args.eps.split(",")))
    return cfg.validate()


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = _apply_overrides(load_config(args.config), args)
        command = {"surface": cmd_surface, "field": cmd_field, "verify": cmd_verify}[args.command]
        return command(cfg, args.out)
    except (ConfigError, DomainError, ConvergenceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
