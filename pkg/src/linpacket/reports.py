"""Run orchestration: evolve / compare / sweep report generation.

Report times are uniform on [0, t_end].  When a grid is enabled its step is
snapped down so an integer number of steps lands exactly on every report
time -- report rows never interpolate.  Floats are rendered with 17
significant digits, so identical runs give byte-identical CSV.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, fields

import numpy as np

from .errors import InternalCheckError, ValidationError
from .grid import GridSpec, grid_moments, init_from_packet, l2_distance, propagate
from .packet import MomentSet, analytic_moments, packet_amplitude
from .scenario import Scenario

SWEEPABLE = ("a", "a0", "b0", "c0", "f0", "omega", "phi", "m", "hbar")


@dataclass(frozen=True)
class ReportRow:
    t: float
    mean_x_analytic: float
    mean_p_analytic: float
    sigma_x_analytic: float
    sigma_p_analytic: float
    product_analytic: float
    mean_x_grid: float | None = None
    mean_p_grid: float | None = None
    sigma_x_grid: float | None = None
    sigma_p_grid: float | None = None
    norm_grid: float | None = None
    l2_error: float | None = None


@dataclass(frozen=True)
class CompareSummary:
    max_l2_error: float
    mean_l2_error: float
    max_moment_error: float
    max_norm_drift: float
    l2_tol: float
    moment_tol: float
    norm_tol: float

    @property
    def passed(self) -> bool:
        return (self.max_l2_error <= self.l2_tol
                and self.max_moment_error <= self.moment_tol
                and self.max_norm_drift <= self.norm_tol)


def _fmt(x: float) -> str:
    return format(float(x) + 0.0, ".17g")  # +0.0 folds -0.0 into 0.0


def report_times(s: Scenario) -> np.ndarray:
    return np.linspace(0.0, s.t_end, s.n_samples)


def _snapped_grid(s: Scenario) -> GridSpec:
    """Shrink dt so it divides the report interval exactly."""
    grid = s.grid
    interval = s.t_end / (s.n_samples - 1)
    steps = max(1, math.ceil(interval / grid.dt - 1e-12))
    return GridSpec(x_min=grid.x_min, x_max=grid.x_max, n=grid.n,
                    dt=interval / steps, boundary_tol=grid.boundary_tol)


def _guard_bound(ms: MomentSet, hbar: float, tol: float) -> None:
    if ms.product < 0.5 * hbar - tol:
        raise InternalCheckError(
            f"refusing to emit row at t={ms.t:g}: uncertainty product "
            f"{ms.product:.17g} violates the hbar/2 bound"
        )


def run_evolve(s: Scenario) -> list[ReportRow]:
    """Analytic (and, when a grid is enabled, numeric) moments at the report times."""
    spec = s.packet_spec()
    coeffs = s.coeffs()
    hbar = s.params.hbar
    times = report_times(s)

    rows = []
    if s.grid is None:
        for t in times:
            ms = analytic_moments(spec, t)
            _guard_bound(ms, hbar, 1e-9)
            rows.append(ReportRow(t=float(t), mean_x_analytic=ms.mean_x,
                                  mean_p_analytic=ms.mean_p,
                                  sigma_x_analytic=ms.sigma_x,
                                  sigma_p_analytic=ms.sigma_p,
                                  product_analytic=ms.product))
        return rows

    grid = _snapped_grid(s)
    state = init_from_packet(spec, grid, 0.0)
    for t in times:
        state = propagate(state, coeffs, float(t))
        ams = analytic_moments(spec, t)
        _guard_bound(ams, hbar, 1e-9)
        gms = grid_moments(state, coeffs)
        _guard_bound(gms, hbar, 1e-6)
        err = l2_distance(state, packet_amplitude(spec, grid.x, float(t)))
        rows.append(ReportRow(t=float(t), mean_x_analytic=ams.mean_x,
                              mean_p_analytic=ams.mean_p,
                              sigma_x_analytic=ams.sigma_x,
                              sigma_p_analytic=ams.sigma_p,
                              product_analytic=ams.product,
                              mean_x_grid=gms.mean_x, mean_p_grid=gms.mean_p,
                              sigma_x_grid=gms.sigma_x, sigma_p_grid=gms.sigma_p,
                              norm_grid=gms.norm, l2_error=err))
    return rows


def rows_to_csv(rows: list[ReportRow]) -> str:
    """Render rows as CSV with the exact column names and 17-digit floats."""
    if not rows:
        return ""
    has_grid = rows[0].l2_error is not None
    names = [f.name for f in fields(ReportRow)]
    if not has_grid:
        names = names[:6]
    lines = [",".join(names)]
    for row in rows:
        vals = [getattr(row, n) for n in names]
        lines.append(",".join(_fmt(v) for v in vals))
    return "\n".join(lines) + "\n"


def run_compare(s: Scenario) -> tuple[CompareSummary, str]:
    """Propagate and compare against the closed forms; returns (summary, report text)."""
    if s.grid is None:
        raise ValidationError("compare requires [grid] enabled = true")
    rows = run_evolve(s)
    l2 = np.array([r.l2_error for r in rows])
    moment_err = max(
        max(abs(r.mean_x_grid - r.mean_x_analytic) for r in rows),
        max(abs(r.mean_p_grid - r.mean_p_analytic) for r in rows),
        max(abs(r.sigma_x_grid - r.sigma_x_analytic) for r in rows),
        max(abs(r.sigma_p_grid - r.sigma_p_analytic) for r in rows),
    )
    summary = CompareSummary(
        max_l2_error=float(np.max(l2)),
        mean_l2_error=float(np.mean(l2)),
        max_moment_error=float(moment_err),
        max_norm_drift=float(max(abs(r.norm_grid - 1.0) for r in rows)),
        l2_tol=s.l2_tol, moment_tol=s.moment_tol, norm_tol=s.norm_tol,
    )
    lines = [
        f"samples = {len(rows)}",
        f"max_l2_error = {_fmt(summary.max_l2_error)} (tol {_fmt(summary.l2_tol)})",
        f"mean_l2_error = {_fmt(summary.mean_l2_error)}",
        f"max_moment_error = {_fmt(summary.max_moment_error)} (tol {_fmt(summary.moment_tol)})",
        f"max_norm_drift = {_fmt(summary.max_norm_drift)} (tol {_fmt(summary.norm_tol)})",
        f"result = {'PASS' if summary.passed else 'FAIL'}",
    ]
    return summary, "\n".join(lines) + "\n"


def _apply_sweep_value(s: Scenario, parameter: str, value: float) -> Scenario:
    from .forces import ForceProfile
    from .invariant import PhysicalParams

    if parameter in ("a", "a0", "b0", "c0", "t_end"):
        return s.replace(**{parameter: value})
    if parameter in ("m", "hbar"):
        kw = {"m": s.params.m, "hbar": s.params.hbar}
        kw[parameter] = value
        return s.replace(params=PhysicalParams(**kw))
    if parameter in ("f0", "omega", "phi"):
        f = s.force
        if f.kind == "constant":
            if parameter != "f0":
                raise ValidationError(f"constant force has no parameter {parameter!r}")
            return s.replace(force=ForceProfile.constant(value))
        if f.kind == "sinusoidal":
            kw = {"f0": f.f0, "omega": f.omega, "phi": f.phi}
            kw[parameter] = value
            return s.replace(force=ForceProfile.sinusoidal(**kw))
        raise ValidationError(
            f"cannot sweep {parameter!r} on a {f.kind!r} force profile"
        )
    raise ValidationError(f"unknown sweep parameter {parameter!r}; "
                          f"choose from {SWEEPABLE + ('t_end',)}")


def run_sweep(s: Scenario, parameter: str, values) -> str:
    """One row of t_end moments per swept value; CSV text."""
    lines = [f"{parameter},mean_x,mean_p,sigma_x,sigma_p,product"]
    for value in values:
        sv = _apply_sweep_value(s, parameter, float(value))
        ms = analytic_moments(sv.packet_spec(), sv.t_end)
        _guard_bound(ms, sv.params.hbar, 1e-9)
        lines.append(",".join(_fmt(v) for v in
                              (value, ms.mean_x, ms.mean_p, ms.sigma_x,
                               ms.sigma_p, ms.product)))
    return "\n".join(lines) + "\n"


def moments_report(s: Scenario, t: float) -> str:
    """Analytic (and grid, when enabled) moments at one time, as key = value text."""
    if not 0.0 <= t:
        raise ValidationError(f"time must be non-negative, got {t:g}")
    spec = s.packet_spec()
    ms = analytic_moments(spec, t)
    lines = [
        f"t = {_fmt(t)}",
        f"mean_x = {_fmt(ms.mean_x)}",
        f"mean_p = {_fmt(ms.mean_p)}",
        f"sigma_x = {_fmt(ms.sigma_x)}",
        f"sigma_p = {_fmt(ms.sigma_p)}",
        f"product = {_fmt(ms.product)}",
        f"norm = {_fmt(ms.norm)}",
    ]
    if s.grid is not None:
        coeffs = s.coeffs()
        state = propagate(init_from_packet(spec, s.grid, 0.0), coeffs, t)
        gms = grid_moments(state, coeffs)
        lines += [
            f"mean_x_grid = {_fmt(gms.mean_x)}",
            f"mean_p_grid = {_fmt(gms.mean_p)}",
            f"sigma_x_grid = {_fmt(gms.sigma_x)}",
            f"sigma_p_grid = {_fmt(gms.sigma_p)}",
            f"norm_grid = {_fmt(gms.norm)}",
        ]
    return "\n".join(lines) + "\n"
