"""Run configuration read from an INI file.

Every key is optional; the defaults describe the ``f = sin^2`` chart with
``eps = 0.3``, ``r0 = psi0 = 1`` on the shell ``0.8 <= psi <= 0.99``.

.. code-block:: ini

    [chart]
    family = f_perturbed        # axisymmetric | f_perturbed | general_cc1
    eps = 0.3                   # eps1 for general_cc1
    f = sin2                    # sin2 | sin2_of3 | mix | fourier
    f_cos = 0, -0.5             # only for f = fourier (harmonics 1, 2, ...)

    [grid]
    psi_min = 0.8
    psi_max = 0.99
    psi = 0.95
    ntheta = 64
    nzeta = 64
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field, fields, replace

from .charts import (AXISYMMETRIC, F_PERTURBED, GENERAL_CC1, KINDS, ChartFamily, DomainSpec, DzGPair, FSpec,
                     surface_presets)
from .verify import SuiteSettings


class ConfigError(ValueError):
    pass


def _floats(text: str):
    text = text.strip()
    return tuple(float(v) for v in text.split(",")) if text else ()


@dataclass(frozen=True)
class ChartConfig:
    family: str = F_PERTURBED
    psi0: float = 1.0
    r0: float = 1.0
    eps: float = 0.3
    eps2: float = 0.0
    eps3: float = 0.0
    f: str = "sin2"
    f_const: float = 0.0
    f_cos: tuple = ()
    f_sin: tuple = ()
    dzg: str = "example"

    def build(self) -> ChartFamily:
        if self.family not in KINDS:
            raise ConfigError(f"unknown chart family {self.family!r}; expected one of {', '.join(KINDS)}")
        fspec = FSpec.fourier(self.f_const, self.f_cos, self.f_sin) if self.f == "fourier" else FSpec.named(self.f)
        if self.family == AXISYMMETRIC:
            return ChartFamily.axisymmetric(self.psi0, self.r0)
        if self.family == F_PERTURBED:
            return ChartFamily.f_perturbed(self.eps, fspec, self.psi0, self.r0)
        dzg = {"example": DzGPair.example, "zero": DzGPair.zero}.get(self.dzg)
        if dzg is None:
            raise ConfigError(f"unknown dz/g pair {self.dzg!r}; expected 'example' or 'zero'")
        return ChartFamily.general_cc1(self.eps, self.eps2, self.eps3, fspec, dzg(), self.psi0, self.r0)


@dataclass(frozen=True)
class GridConfig:
    psi_min: float = 0.8
    psi_max: float = 0.99
    psi: float = 0.95
    ntheta: int = 64
    nzeta: int = 64


@dataclass(frozen=True)
class RunConfig:
    chart: ChartConfig = field(default_factory=ChartConfig)
    grid: GridConfig = field(default_factory=GridConfig)
    suite: SuiteSettings = field(default_factory=SuiteSettings)
    eps_list: tuple = (0.0, 0.1, 0.3, 0.6)

    def validate(self) -> "RunConfig":
        g, c, s = self.grid, self.chart, self.suite
        if g.ntheta < 2 or g.nzeta < 2:
            raise ConfigError("grid counts ntheta and nzeta must be at least 2")
        if not g.psi_min <= g.psi_max < c.psi0:
            raise ConfigError(f"psi range [{g.psi_min}, {g.psi_max}] must be ordered and lie below psi0 = {c.psi0}")
        if not g.psi < c.psi0:
            raise ConfigError(f"surface level psi = {g.psi} must lie below psi0 = {c.psi0}")
        for name in ("identity_tol", "fd_tol", "clebsch_tol", "tangency_tol", "jacobian_rtol", "fd_rel_step"):
            if not getattr(s, name) > 0:
                raise ConfigError(f"{name} must be positive")
        for name in ("n_identity", "n_clebsch", "n_fd"):
            if getattr(s, name) < 1:
                raise ConfigError(f"{name} must be at least 1")
        if s.n_symmetry < 6:
            raise ConfigError("n_symmetry must be at least 6")
        return self

    def build_chart(self) -> ChartFamily:
        try:
            return self.chart.build()
        except ConfigError:
            raise
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    def domain(self) -> DomainSpec:
        return DomainSpec(self.grid.psi_min, self.grid.psi_max)

    def with_preset(self, name: str) -> "RunConfig":
        """Replace the chart section by one of the named parameter sets ``a`` to ``f``."""
        presets = surface_presets()
        if name not in presets:
            raise ConfigError(f"unknown preset {name!r}; expected one of {', '.join(sorted(presets))}")
        ch = presets[name]
        kind = ch.kind
        cc = ChartConfig(family=kind, psi0=ch.psi0, r0=ch.r0, eps=ch.eps, eps2=ch.eps2, eps3=ch.eps3,
                         f=ch.fspec.variant if kind != AXISYMMETRIC else "sin2",
                         dzg="example" if kind == GENERAL_CC1 else "zero")
        return replace(self, chart=cc)


def _section(cp, name, cls, base):
    if not cp.has_section(name):
        return base
    known = {f.name: f for f in fields(cls)}
    updates = {}
    for key, raw in cp.items(name):
        if key not in known:
            raise ConfigError(f"unknown key {key!r} in section [{name}]")
        default = getattr(base, key)
        try:
            if isinstance(default, tuple):
                updates[key] = _floats(raw)
            elif isinstance(default, bool):
                updates[key] = cp.getboolean(name, key)
            elif isinstance(default, int):
                updates[key] = int(raw)
            elif isinstance(default, float):
                updates[key] = float(raw)
            else:
                updates[key] = raw.strip()
        except ValueError as exc:
            raise ConfigError(f"bad value for [{name}] {key}: {raw!r}") from exc
    return replace(base, **updates)


def load_config(path=None) -> RunConfig:
    """Read an INI file (sections ``chart``, ``grid``, ``suite``, ``field``); None gives the defaults."""
    cfg = RunConfig()
    if path is None:
        return cfg.validate()
    cp = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    try:
        with open(path, encoding="utf-8") as fh:
            cp.read_file(fh)
    except (OSError, configparser.Error) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    unknown = set(cp.sections()) - {"chart", "grid", "suite", "field"}
    if unknown:
        raise ConfigError(f"unknown config section(s): {', '.join(sorted(unknown))}")
    chart = _section(cp, "chart", ChartConfig, cfg.chart)
    grid = _section(cp, "grid", GridConfig, cfg.grid)
    suite = _section(cp, "suite", SuiteSettings, cfg.suite)
    eps_list = cfg.eps_list
    if cp.has_option("field", "eps_list"):
        try:
            eps_list = _floats(cp.get("field", "eps_list"))
        except ValueError as exc:
            raise ConfigError("bad [field] eps_list") from exc
    return RunConfig(chart, grid, suite, eps_list).validate()
