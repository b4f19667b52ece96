"""Acceptance criteria, one test per criterion.

Each test prints a PASS/FAIL line (visible with ``pytest -s``) and enforces
its stated tolerance and runtime budget.  JIT warm-up happens once in a
session fixture so budgets measure the computation, not compilation.
"""
import math
import time

import numpy as np
import pytest

from linpacket import (
    ForceProfile,
    GridSpec,
    GridState,
    InvariantCoeffs,
    PacketSpec,
    PhysicalParams,
    WeightFunction,
    analytic_moments,
    apply_invariant,
    caustic_time,
    eigenfunction,
    init_from_packet,
    invariance_residual,
    kernel_c_over_a2,
    kernel_inv_a2,
    l2_distance,
    mean_p,
    mean_x,
    packet_amplitude,
    propagate,
    raised_cosine_window,
    sigma_x,
    superpose,
    uncertainty_product,
)
from linpacket.cli import main
from conftest import random_force

PARAMS = PhysicalParams(m=1.0, hbar=1.0)


def coeffs(a0=1.0, b0=0.0, c0=0.0, force=None, params=PARAMS):
    return InvariantCoeffs(a0=a0, b0=b0, c0=c0, params=params,
                           force=force if force is not None else ForceProfile.zero())


def report(number, name, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {number:02d} {name}: {status} {detail}")
    assert ok, f"criterion {number} ({name}) failed: {detail}"


@pytest.fixture(scope="module", autouse=True)
def warm_kernels():
    # compile every jitted kernel once before any timed criterion
    c = coeffs(b0=0.1, c0=0.1, force=ForceProfile.sinusoidal(1.0, 2.0, 0.1))
    spec = PacketSpec(coeffs=c, a=0.5)
    grid = GridSpec(-15.0, 15.0, 64, 1e-3, boundary_tol=1.0)
    kernel_inv_a2(c, 0.1)
    kernel_c_over_a2(c, 0.1)
    uncertainty_product(spec, 0.1)
    packet_amplitude(spec, 0.0, 0.1)
    state = GridState(grid, 0.0, np.exp(-grid.x**2))
    propagate(state, c, 2e-3)
    superpose(WeightFunction.gaussian(0.5, n_lambda=16), c, grid, 0.1)
    tab = ForceProfile.tabulated([0.0, 1.0, 2.0], [0.0, 1.0, 0.5])
    kernel_inv_a2(coeffs(force=tab), 0.5)


def test_criterion_1_normalization():
    tic = time.perf_counter()
    worst = 0.0
    cases = [
        PacketSpec(coeffs=coeffs(), a=0.5),
        PacketSpec(coeffs=coeffs(c0=0.4, force=ForceProfile.constant(1.0)), a=0.25),
    ]
    t_end = 1.5
    for spec in cases:
        for t in np.linspace(0.0, t_end, 20):
            sx = sigma_x(spec, t)
            mx = mean_x(spec, t)
            xs = np.linspace(mx - 20.0 * sx, mx + 20.0 * sx, 2048)
            dens = np.abs(packet_amplitude(spec, xs, t)) ** 2
            norm = float(np.sum(dens) * (xs[1] - xs[0]))
            worst = max(worst, abs(norm - 1.0))
    runtime = time.perf_counter() - tic
    report(1, "normalization", worst <= 1e-8 and runtime < 1.0,
           f"(max |norm-1| = {worst:.3e}, runtime {runtime:.2f}s)")


def test_criterion_2_heisenberg_bound():
    tic = time.perf_counter()
    rng = np.random.default_rng(2024)
    worst_margin = np.inf
    worst_eq = 0.0
    for _ in range(500):
        c = InvariantCoeffs(a0=rng.uniform(0.2, 3.0), b0=rng.uniform(-1.0, 1.0),
                            c0=rng.uniform(-1.0, 1.0),
                            params=PhysicalParams(m=rng.uniform(0.5, 2.0),
                                                  hbar=rng.uniform(0.5, 2.0)),
                            force=random_force(rng))
        spec = PacketSpec(coeffs=c, a=rng.uniform(0.05, 5.0))
        tstar = caustic_time(c)
        t_hi = 2.0 if tstar is None or tstar <= 0 else min(2.0, 0.9 * tstar)
        t = rng.uniform(0.0, t_hi)
        prod = uncertainty_product(spec, t)
        worst_margin = min(worst_margin, prod - 0.5 * c.params.hbar)
        if c.b0 == 0.0:
            worst_eq = max(worst_eq, abs(uncertainty_product(spec, 0.0)
                                         - 0.5 * c.params.hbar))
    # dedicated equality probes at t=0 with B0 = 0
    for _ in range(50):
        hbar = rng.uniform(0.5, 2.0)
        c = InvariantCoeffs(a0=rng.uniform(0.2, 3.0), b0=0.0, c0=rng.uniform(-1, 1),
                            params=PhysicalParams(m=1.0, hbar=hbar),
                            force=random_force(rng))
        spec = PacketSpec(coeffs=c, a=rng.uniform(0.05, 5.0))
        worst_eq = max(worst_eq, abs(uncertainty_product(spec, 0.0) - 0.5 * hbar))
    runtime = time.perf_counter() - tic
    ok = worst_margin >= -1e-12 and worst_eq <= 1e-12 and runtime < 5.0
    report(2, "heisenberg bound", ok,
           f"(min margin {worst_margin:.3e}, eq dev {worst_eq:.3e}, runtime {runtime:.2f}s)")


def test_criterion_3_oracle_equivalence():
    tic = time.perf_counter()
    forces = [ForceProfile.zero(), ForceProfile.constant(1.0),
              ForceProfile.sinusoidal(1.0, 2.0, 0.0)]
    worst = 0.0
    for force in forces:
        for b0 in (0.0, 0.5):
            c = coeffs(b0=b0, force=force)
            spec = PacketSpec(coeffs=c, a=0.5)
            t_end = 0.5 if b0 == 0.0 else 0.4 * caustic_time(c)
            grid = GridSpec(-20.0, 20.0, 2048, 1e-4)
            state = propagate(init_from_packet(spec, grid, 0.0), c, t_end)
            err = l2_distance(state, packet_amplitude(spec, grid.x, t_end))
            worst = max(worst, err)
    runtime = time.perf_counter() - tic
    report(3, "oracle equivalence", worst < 1e-6 and runtime < 60.0,
           f"(max L2 = {worst:.3e} over 6 runs, runtime {runtime:.1f}s)")


def test_criterion_4_superposition_identity():
    tic = time.perf_counter()
    worst = 0.0
    for force in (ForceProfile.zero(), ForceProfile.constant(1.0)):
        c = coeffs(force=force)
        spec = PacketSpec(coeffs=c, a=0.5)
        grid = GridSpec(-20.0, 20.0, 2048, 1e-3)
        w = WeightFunction.gaussian(0.5, n_lambda=256)
        for t in (0.0, 0.5):
            state = superpose(w, c, grid, t)
            dev = float(np.max(np.abs(state.psi - packet_amplitude(spec, grid.x, t))))
            worst = max(worst, dev)
    runtime = time.perf_counter() - tic
    report(4, "superposition identity", worst < 1e-6 and runtime < 10.0,
           f"(max pointwise dev = {worst:.3e}, runtime {runtime:.2f}s)")


def test_criterion_5_ehrenfest():
    dt = 1e-4
    worst_x = worst_p = 0.0
    for force in (ForceProfile.constant(2.0), ForceProfile.sinusoidal(1.0, 2.0, 0.3)):
        spec = PacketSpec(coeffs=coeffs(b0=0.2, c0=0.3, force=force), a=0.5)
        for t in (0.3, 0.8, 1.3):
            dxdt = (mean_x(spec, t + dt) - mean_x(spec, t - dt)) / (2 * dt)
            dpdt = (mean_p(spec, t + dt) - mean_p(spec, t - dt)) / (2 * dt)
            worst_x = max(worst_x, abs(1.0 * dxdt - mean_p(spec, t)))
            worst_p = max(worst_p, abs(dpdt - force.eval(t)))
    # constant force: <x>(t) = F0 t^2/(2m) - C0 t/(m A0)
    spec = PacketSpec(coeffs=coeffs(c0=0.3, force=ForceProfile.constant(2.0)), a=0.5)
    worst_traj = max(abs(mean_x(spec, t) - (t * t - 0.3 * t)) for t in (0.5, 1.0, 2.0))
    ok = worst_x < 1e-6 and worst_p < 1e-6 and worst_traj < 1e-9
    report(5, "ehrenfest relations", ok,
           f"(|m dx/dt - p| = {worst_x:.3e}, |dp/dt - F| = {worst_p:.3e}, "
           f"trajectory dev = {worst_traj:.3e})")


def test_criterion_6_force_independent_width():
    ts = np.linspace(0.0, 1.5, 16)
    trajectories = []
    for f0 in (0.0, 1.0, 5.0):
        spec = PacketSpec(coeffs=coeffs(b0=0.3, force=ForceProfile.constant(f0)), a=0.5)
        trajectories.append(np.array([sigma_x(spec, t) for t in ts]))
    worst = max(float(np.max(np.abs(a - b)))
                for i, a in enumerate(trajectories)
                for b in trajectories[i + 1:])
    report(6, "force-independent width", worst <= 1e-9,
           f"(max pairwise dev = {worst:.3e})")


def test_criterion_7_eigen_residual():
    grid = GridSpec(-20.0, 20.0, 2048, 1e-3, boundary_tol=1.0)
    window = raised_cosine_window(grid)
    interior = np.abs(grid.x) <= 5.0
    worst = 0.0
    for c in (coeffs(), coeffs(force=ForceProfile.constant(1.0))):
        for lam in (-2.0, -1.0, 0.0, 1.0, 2.0):
            for t in (0.0, 0.3, 0.6):
                phi = eigenfunction(c, lam, grid.x, t)
                state = GridState(grid, t, window * phi)
                resid = apply_invariant(state, c).psi - lam * state.psi
                rel = (math.sqrt(float(np.sum(np.abs(resid[interior]) ** 2)))
                       / math.sqrt(float(np.sum(np.abs(state.psi[interior]) ** 2))))
                worst = max(worst, rel)
    report(7, "eigen residual", worst < 1e-6,
           f"(max windowed residual = {worst:.3e})")


def test_criterion_8_invariance_odes():
    # A(t) is exactly linear and B constant, so only the C residual carries a
    # measurable truncation term; its halving ratio must sit at second order.
    c = coeffs(a0=1.0, b0=1.0, force=ForceProfile.sinusoidal(1.0, 1.0, 0.0))
    ra1, rb1, rc1 = invariance_residual(c, 0.3, 2e-3)
    ra2, rb2, rc2 = invariance_residual(c, 0.3, 1e-3)
    ratio = rc1 / rc2
    ok = 3.8 <= ratio <= 4.2 and max(ra1, rb1, ra2, rb2) <= 1e-10
    report(8, "invariance ODE residuals", ok,
           f"(C-residual ratio = {ratio:.3f}, A/B residuals <= "
           f"{max(ra1, rb1, ra2, rb2):.1e})")


def test_criterion_9_propagator_convergence_order():
    # the splitting is exact for zero force, so the dt order is measured on
    # the sinusoidal profile; the free case must sit at the accuracy floor
    force = ForceProfile.sinusoidal(1.0, 2.0, 0.0)
    c = coeffs(force=force)
    spec = PacketSpec(coeffs=c, a=0.5)
    errs = []
    for dt in (4e-3, 2e-3):
        grid = GridSpec(-20.0, 20.0, 2048, dt)
        state = propagate(init_from_packet(spec, grid, 0.0), c, 0.5)
        errs.append(l2_distance(state, packet_amplitude(spec, grid.x, 0.5)))
    ratio = errs[0] / errs[1]

    free = coeffs()
    free_spec = PacketSpec(coeffs=free, a=0.5)
    grid = GridSpec(-20.0, 20.0, 2048, 4e-3)
    state = propagate(init_from_packet(free_spec, grid, 0.0), free, 0.5)
    free_err = l2_distance(state, packet_amplitude(free_spec, grid.x, 0.5))

    ok = 3.5 <= ratio <= 4.5 and free_err < 1e-9
    report(9, "propagator convergence order", ok,
           f"(halving ratio = {ratio:.3f}, free-particle floor = {free_err:.2e})")


def test_criterion_10_determinism(tmp_path, capsys):
    cfg = tmp_path / "scenario.ini"
    cfg.write_text(
        "[grid]\nenabled = true\nn = 1024\ndt = 1e-3\n\n"
        "[run]\nt_end = 0.5\nn_samples = 6\n"
    )
    assert main(["compare", "--config", str(cfg)]) == 0
    first = capsys.readouterr().out
    assert main(["compare", "--config", str(cfg)]) == 0
    second = capsys.readouterr().out
    ok = first.encode() == second.encode() and "result = PASS" in first
    with capsys.disabled():
        report(10, "determinism", ok, "(byte-identical compare output)")
