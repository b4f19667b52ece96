"""Scenario files: INI-style configuration, validation and round-trip emission.

A scenario bundles everything one run needs.  All keys are optional except
``[run] t_end``; defaults are hbar = m = 1, A0 = 1, B0 = C0 = 0, a = 0.5,
zero force, grid disabled.  Floats are emitted with 17 significant digits so
``parse(emit(s))`` reproduces the scenario exactly.
"""
from __future__ import annotations

import configparser
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ParseError, ValidationError
from .forces import ForceProfile
from .grid import GridSpec
from .invariant import (
    DEFAULT_CAUSTIC_MARGIN,
    InvariantCoeffs,
    PhysicalParams,
    caustic_time,
)
from .packet import PacketSpec
from .quadrature import QuadratureConfig

_FORCE_KINDS = ("zero", "constant", "sinusoidal", "tabulated")

_KNOWN_KEYS = {
    "physics": {"hbar", "m"},
    "invariant": {"a0", "b0", "c0"},
    "force": {"kind", "f0", "omega", "phi", "times", "values"},
    "packet": {"a"},
    "grid": {"enabled", "x_min", "x_max", "n", "dt", "boundary_tol"},
    "quadrature": {"rel_tol", "abs_tol", "max_depth"},
    "run": {"t_end", "n_samples", "l2_tol", "moment_tol", "norm_tol"},
}


@dataclass(frozen=True, eq=False)
class Scenario:
    """Validated, fully deterministic run configuration."""

    params: PhysicalParams = field(default_factory=PhysicalParams)
    a0: float = 1.0
    b0: float = 0.0
    c0: float = 0.0
    force: ForceProfile = field(default_factory=ForceProfile.zero)
    a: float = 0.5
    grid: GridSpec | None = None
    t_end: float = 1.0
    n_samples: int = 11
    quad: QuadratureConfig = field(default_factory=QuadratureConfig)
    l2_tol: float = 1e-5
    moment_tol: float = 1e-5
    norm_tol: float = 1e-9

    def __post_init__(self):
        if not (self.t_end > 0 and math.isfinite(self.t_end)):
            raise ValidationError(f"t_end must be positive, got {self.t_end}")
        if self.n_samples < 2:
            raise ValidationError(f"n_samples must be >= 2, got {self.n_samples}")
        if not self.a > 0:
            raise ValidationError("a must be positive")
        for name in ("l2_tol", "moment_tol", "norm_tol"):
            if not getattr(self, name) > 0:
                raise ValidationError(f"{name} must be positive")
        coeffs = self.coeffs()
        tstar = caustic_time(coeffs)
        if tstar is not None and 0.0 < tstar and self.t_end > DEFAULT_CAUSTIC_MARGIN * tstar:
            raise ValidationError(
                f"t_end={self.t_end:g} reaches the caustic at t*={tstar:g} "
                f"(guard at {DEFAULT_CAUSTIC_MARGIN:g}*t*)"
            )
        self.force.require_covers(0.0, self.t_end)

    def coeffs(self) -> InvariantCoeffs:
        return InvariantCoeffs(a0=self.a0, b0=self.b0, c0=self.c0,
                               params=self.params, force=self.force)

    def packet_spec(self) -> PacketSpec:
        return PacketSpec(coeffs=self.coeffs(), a=self.a, quad=self.quad)

    def replace(self, **changes) -> "Scenario":
        current = dict(
            params=self.params, a0=self.a0, b0=self.b0, c0=self.c0,
            force=self.force, a=self.a, grid=self.grid, t_end=self.t_end,
            n_samples=self.n_samples, quad=self.quad, l2_tol=self.l2_tol,
            moment_tol=self.moment_tol, norm_tol=self.norm_tol,
        )
        current.update(changes)
        return Scenario(**current)

    def __eq__(self, other):
        if not isinstance(other, Scenario):
            return NotImplemented
        return emit_scenario(self) == emit_scenario(other)


def _fmt(x: float) -> str:
    return format(float(x) + 0.0, ".17g")  # +0.0 folds -0.0 into 0.0


def emit_scenario(s: Scenario) -> str:
    """Render the scenario as INI text; inverse of :func:`parse_scenario_text`."""
    lines = []
    lines.append("[physics]")
    lines.append(f"hbar = {_fmt(s.params.hbar)}")
    lines.append(f"m = {_fmt(s.params.m)}")
    lines.append("")
    lines.append("[invariant]")
    lines.append(f"a0 = {_fmt(s.a0)}")
    lines.append(f"b0 = {_fmt(s.b0)}")
    lines.append(f"c0 = {_fmt(s.c0)}")
    lines.append("")
    lines.append("[force]")
    lines.append(f"kind = {s.force.kind}")
    if s.force.kind == "constant":
        lines.append(f"f0 = {_fmt(s.force.f0)}")
    elif s.force.kind == "sinusoidal":
        lines.append(f"f0 = {_fmt(s.force.f0)}")
        lines.append(f"omega = {_fmt(s.force.omega)}")
        lines.append(f"phi = {_fmt(s.force.phi)}")
    elif s.force.kind == "tabulated":
        lines.append("times = " + ", ".join(_fmt(v) for v in s.force.times))
        lines.append("values = " + ", ".join(_fmt(v) for v in s.force.values))
    lines.append("")
    lines.append("[packet]")
    lines.append(f"a = {_fmt(s.a)}")
    lines.append("")
    lines.append("[grid]")
    lines.append(f"enabled = {'true' if s.grid is not None else 'false'}")
    if s.grid is not None:
        lines.append(f"x_min = {_fmt(s.grid.x_min)}")
        lines.append(f"x_max = {_fmt(s.grid.x_max)}")
        lines.append(f"n = {s.grid.n}")
        lines.append(f"dt = {_fmt(s.grid.dt)}")
        lines.append(f"boundary_tol = {_fmt(s.grid.boundary_tol)}")
    lines.append("")
    lines.append("[quadrature]")
    lines.append(f"rel_tol = {_fmt(s.quad.rel_tol)}")
    lines.append(f"abs_tol = {_fmt(s.quad.abs_tol)}")
    lines.append(f"max_depth = {s.quad.max_depth}")
    lines.append("")
    lines.append("[run]")
    lines.append(f"t_end = {_fmt(s.t_end)}")
    lines.append(f"n_samples = {s.n_samples}")
    lines.append(f"l2_tol = {_fmt(s.l2_tol)}")
    lines.append(f"moment_tol = {_fmt(s.moment_tol)}")
    lines.append(f"norm_tol = {_fmt(s.norm_tol)}")
    lines.append("")
    return "\n".join(lines)


class _Section:
    """Typed accessors over one INI section with [section] key context in errors."""

    def __init__(self, name: str, mapping):
        self.name = name
        self.mapping = mapping

    def get_float(self, key: str, default: float) -> float:
        if key not in self.mapping:
            return default
        raw = self.mapping[key]
        try:
            return float(raw)
        except ValueError:
            raise ParseError(f"[{self.name}] {key}: not a number: {raw!r}") from None

    def get_int(self, key: str, default: int) -> int:
        if key not in self.mapping:
            return default
        raw = self.mapping[key]
        try:
            return int(raw)
        except ValueError:
            raise ParseError(f"[{self.name}] {key}: not an integer: {raw!r}") from None

    def get_bool(self, key: str, default: bool) -> bool:
        if key not in self.mapping:
            return default
        raw = self.mapping[key].strip().lower()
        if raw in ("true", "yes", "on", "1"):
            return True
        if raw in ("false", "no", "off", "0"):
            return False
        raise ParseError(f"[{self.name}] {key}: not a boolean: {raw!r}")

    def get_str(self, key: str, default: str) -> str:
        return self.mapping.get(key, default).strip()

    def get_float_list(self, key: str) -> np.ndarray:
        raw = self.mapping.get(key, "")
        if not raw.strip():
            raise ParseError(f"[{self.name}] {key}: missing or empty list")
        try:
            return np.array([float(tok) for tok in raw.split(",")])
        except ValueError:
            raise ParseError(f"[{self.name}] {key}: not a comma-separated number list") from None


def parse_scenario_text(text: str) -> Scenario:
    """Parse INI text into a validated Scenario."""
    cp = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ParseError(str(exc)) from None

    for section in cp.sections():
        if section not in _KNOWN_KEYS:
            raise ParseError(f"unknown section [{section}]")
        for key in cp[section]:
            if key not in _KNOWN_KEYS[section]:
                raise ParseError(f"[{section}] unknown key {key!r}")

    def sec(name):
        return _Section(name, dict(cp[name]) if cp.has_section(name) else {})

    physics = sec("physics")
    params = PhysicalParams(m=physics.get_float("m", 1.0),
                            hbar=physics.get_float("hbar", 1.0))

    inv = sec("invariant")
    a0 = inv.get_float("a0", 1.0)
    b0 = inv.get_float("b0", 0.0)
    c0 = inv.get_float("c0", 0.0)

    fsec = sec("force")
    kind = fsec.get_str("kind", "zero").lower()
    if kind not in _FORCE_KINDS:
        raise ParseError(f"[force] kind must be one of {_FORCE_KINDS}, got {kind!r}")
    if kind == "zero":
        force = ForceProfile.zero()
    elif kind == "constant":
        force = ForceProfile.constant(fsec.get_float("f0", 1.0))
    elif kind == "sinusoidal":
        force = ForceProfile.sinusoidal(fsec.get_float("f0", 1.0),
                                        fsec.get_float("omega", 1.0),
                                        fsec.get_float("phi", 0.0))
    else:
        force = ForceProfile.tabulated(fsec.get_float_list("times"),
                                       fsec.get_float_list("values"))

    psec = sec("packet")
    a = psec.get_float("a", 0.5)
    if a <= 0:
        raise ValidationError("[packet] a must be positive")

    gsec = sec("grid")
    grid = None
    if gsec.get_bool("enabled", False):
        grid = GridSpec(x_min=gsec.get_float("x_min", -20.0),
                        x_max=gsec.get_float("x_max", 20.0),
                        n=gsec.get_int("n", 2048),
                        dt=gsec.get_float("dt", 1e-4),
                        boundary_tol=gsec.get_float("boundary_tol", 1e-10))

    qsec = sec("quadrature")
    quad = QuadratureConfig(rel_tol=qsec.get_float("rel_tol", 1e-10),
                            abs_tol=qsec.get_float("abs_tol", 1e-13),
                            max_depth=qsec.get_int("max_depth", 40))

    rsec = sec("run")
    return Scenario(params=params, a0=a0, b0=b0, c0=c0, force=force, a=a,
                    grid=grid,
                    t_end=rsec.get_float("t_end", 1.0),
                    n_samples=rsec.get_int("n_samples", 11),
                    quad=quad,
                    l2_tol=rsec.get_float("l2_tol", 1e-5),
                    moment_tol=rsec.get_float("moment_tol", 1e-5),
                    norm_tol=rsec.get_float("norm_tol", 1e-9))


def parse_scenario(path) -> Scenario:
    """Read and validate a scenario file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read scenario file {path}: {exc}") from None
    return parse_scenario_text(text)


def write_scenario(s: Scenario, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(emit_scenario(s))
