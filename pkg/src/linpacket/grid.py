"""Spectral split-step propagator and grid-based observables.

Independent numerical machinery for i hbar dPsi/dt = [p^2/2m - F(t) x] Psi on
a periodic uniform grid.  One step of size dt is the symmetric splitting

    exp(+i F_mid x dt / 2hbar) . IFFT exp(-i hbar k^2 dt / 2m) FFT . exp(+i F_mid x dt / 2hbar)

with the force evaluated at the interval midpoint, which keeps the scheme
second-order in dt for smooth F.  Each factor is a pure phase, so the
discrete norm is conserved to roundoff.  Boundary amplitudes are checked
every step: periodic wrap-around would silently corrupt the solution, so a
state whose outermost samples exceed ``boundary_tol`` raises LeakingState.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels as k
from ._accel import NUMBA_ENABLED
from .errors import InternalCheckError, LeakingState, ValidationError
from .invariant import InvariantCoeffs, coeff_a, coeff_c
from .packet import MomentSet, PacketSpec, SOURCE_GRID, packet_amplitude


@dataclass(frozen=True)
class GridSpec:
    """Uniform periodic grid: n points on [x_min, x_max), fixed step dt."""

    x_min: float
    x_max: float
    n: int
    dt: float
    boundary_tol: float = 1e-10

    def __post_init__(self):
        if not self.x_max > self.x_min:
            raise ValidationError("x_max must exceed x_min")
        if self.n < 64 or (self.n & (self.n - 1)) != 0:
            raise ValidationError(f"n must be a power of two >= 64, got {self.n}")
        if not self.dt > 0:
            raise ValidationError("dt must be positive")
        if not self.boundary_tol > 0:
            raise ValidationError("boundary_tol must be positive")

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / self.n

    @property
    def x(self) -> np.ndarray:
        return self.x_min + self.dx * np.arange(self.n)

    @property
    def wavenumbers(self) -> np.ndarray:
        return 2.0 * np.pi * np.fft.fftfreq(self.n, d=self.dx)


@dataclass(frozen=True, eq=False)
class GridState:
    """Complex amplitudes on a grid at one time stamp; immutable snapshot."""

    spec: GridSpec
    t: float
    psi: np.ndarray

    def __post_init__(self):
        psi = np.ascontiguousarray(self.psi, dtype=np.complex128)
        if psi.shape != (self.spec.n,):
            raise ValidationError(f"psi must have shape ({self.spec.n},)")
        psi.setflags(write=False)
        object.__setattr__(self, "psi", psi)

    def norm(self) -> float:
        """Discrete norm sum |psi|^2 dx."""
        return float(np.sum(np.abs(self.psi) ** 2) * self.spec.dx)

    def boundary_magnitude(self) -> float:
        return float(max(abs(self.psi[0]), abs(self.psi[-1])))

    @property
    def leaking(self) -> bool:
        return self.boundary_magnitude() >= self.spec.boundary_tol

    def require_contained(self) -> "GridState":
        if self.leaking:
            raise LeakingState(
                f"boundary amplitude {self.boundary_magnitude():.3e} exceeds "
                f"tolerance {self.spec.boundary_tol:.1e} at t={self.t:g}"
            )
        return self


def init_from_packet(spec: PacketSpec, grid: GridSpec, t0: float = 0.0) -> GridState:
    """Sample the analytic packet on the grid; norm must come out within 1e-8 of 1."""
    psi = packet_amplitude(spec, grid.x, t0)
    state = GridState(grid, float(t0), psi).require_contained()
    norm = state.norm()
    if abs(norm - 1.0) > 1e-8:
        raise ValidationError(
            f"grid does not resolve the packet: discrete norm {norm:.12g} "
            "differs from 1 by more than 1e-8"
        )
    return state


@lru_cache(maxsize=32)
def _kinetic_phase(n: int, dx: float, dt: float, hbar: float, m: float) -> np.ndarray:
    kv = 2.0 * np.pi * np.fft.fftfreq(n, d=dx)
    arr = np.exp(-0.5j * hbar * kv * kv * dt / m)
    arr.setflags(write=False)
    return arr


def _half_potential(psi: np.ndarray, x: np.ndarray, coef: float) -> np.ndarray:
    if NUMBA_ENABLED:
        return k.phase_multiply(psi, x, coef)
    return psi * np.exp(1j * coef * x)


def _step_by(state: GridState, c: InvariantCoeffs, dt: float) -> GridState:
    p = c.params
    f_mid = c.force.eval(state.t + 0.5 * dt)
    coef_v = 0.5 * dt * f_mid / p.hbar
    x = state.spec.x
    psi = _half_potential(state.psi, x, coef_v)
    psi = np.fft.ifft(_kinetic_phase(state.spec.n, state.spec.dx, dt, p.hbar, p.m)
                      * np.fft.fft(psi))
    psi = _half_potential(psi, x, coef_v)
    return GridState(state.spec, state.t + dt, psi).require_contained()


def step(state: GridState, c: InvariantCoeffs) -> GridState:
    """Advance one step of the spec's dt; norm preserved to roundoff."""
    state.require_contained()
    return _step_by(state, c, state.spec.dt)


def propagate(state: GridState, c: InvariantCoeffs, t_final: float) -> GridState:
    """Step repeatedly to t_final; the last partial step is shortened to land exactly."""
    state.require_contained()
    span = float(t_final) - state.t
    if span < 0:
        raise ValidationError(f"t_final={t_final:g} precedes state time {state.t:g}")
    if span == 0:
        return state
    dt = state.spec.dt
    n_full = int(math.floor(span / dt + 1e-12))
    t0 = state.t
    for i in range(n_full):
        # recompute the clock from t0 to avoid drift over many steps
        state = GridState(state.spec, t0 + i * dt, state.psi)
        state = _step_by(state, c, dt)
    rem = t_final - (t0 + n_full * dt)
    if rem > 1e-12 * max(dt, 1.0):
        state = _step_by(state, c, rem)
    return GridState(state.spec, float(t_final), state.psi)


def _spectral_momentum(state: GridState, hbar: float) -> np.ndarray:
    """(-i hbar d/dx) psi via the FFT derivative."""
    kv = state.spec.wavenumbers
    return np.fft.ifft(hbar * kv * np.fft.fft(state.psi))


def grid_moments(state: GridState, c: InvariantCoeffs) -> MomentSet:
    """Discrete <x>, <p>, widths and norm; momentum moments use the spectral derivative."""
    state.require_contained()
    p = c.params
    dx = state.spec.dx
    x = state.spec.x
    psi = state.psi
    dens = np.abs(psi) ** 2
    norm = float(np.sum(dens) * dx)

    mx = float(np.sum(x * dens) * dx) / norm
    mx2 = float(np.sum(x * x * dens) * dx) / norm

    p_psi = _spectral_momentum(state, p.hbar)
    mp_c = complex(np.sum(np.conj(psi) * p_psi) * dx) / norm
    if abs(mp_c.imag) > 1e-10:
        raise InternalCheckError(
            f"<p> has imaginary residue {mp_c.imag:.3e} beyond 1e-10"
        )
    mp = mp_c.real
    mp2 = float(np.sum(np.abs(p_psi) ** 2) * dx) / norm

    ms = MomentSet(t=state.t, mean_x=mx, mean_p=mp,
                   sigma_x=math.sqrt(max(mx2 - mx * mx, 0.0)),
                   sigma_p=math.sqrt(max(mp2 - mp * mp, 0.0)),
                   norm=norm, source=SOURCE_GRID)
    return ms.validate(p.hbar)


def apply_invariant(state: GridState, c: InvariantCoeffs) -> GridState:
    """Apply the operator A(t) p + B0 x + C(t) to the grid state."""
    state.require_contained()
    a_t = coeff_a(c, state.t)
    c_t = coeff_c(c, state.t)
    out = a_t * _spectral_momentum(state, c.params.hbar)
    out = out + (c.b0 * state.spec.x + c_t) * state.psi
    return GridState(state.spec, state.t, out)


def l2_distance(state: GridState, reference: np.ndarray) -> float:
    """sqrt(sum |psi - reference|^2 dx) against reference samples on the same grid."""
    ref = np.asarray(reference, dtype=np.complex128)
    if ref.shape != state.psi.shape:
        raise ValidationError("reference samples must match the grid size")
    return float(math.sqrt(np.sum(np.abs(state.psi - ref) ** 2) * state.spec.dx))


def raised_cosine_window(spec: GridSpec, flat_fraction: float = 0.5) -> np.ndarray:
    """Smooth compactly supported window: 1 on the central fraction, cosine tapers outside.

    Eigenstates of the invariant are non-normalizable pure phases; multiplying
    by this window makes operator residuals computable on a finite grid.  The
    window commutator contributes only where the taper slopes, so residuals
    should be measured on the flat interior.
    """
    if not 0.0 < flat_fraction < 1.0:
        raise ValidationError("flat_fraction must lie in (0, 1)")
    x = spec.x
    center = 0.5 * (spec.x_min + spec.x_max)
    half_width = 0.5 * (spec.x_max - spec.x_min)
    half_flat = flat_fraction * half_width
    taper_len = half_width - half_flat
    d = np.abs(x - center)
    w = np.zeros_like(x)
    w[d <= half_flat] = 1.0
    tap = (d > half_flat) & (d < half_flat + taper_len)
    s = (d[tap] - half_flat) / taper_len
    w[tap] = 0.5 * (1.0 + np.cos(np.pi * s))
    return w
