"""Closed-form eigenstates, the Gaussian wave packet and its moments.

The invariant eigenstates are pure phases

    phi_lam(x,t) = exp{ (i/hbar) [2(lam - C)x - B0 x^2] / (2A) },

promoted to Schroedinger solutions by the amplitude factor sqrt(A0/A(t)) and
the phase -int_0^t (lam - C)^2 / (2 hbar m A^2).  Integrating them against a
normalized Gaussian weight of width parameter ``a`` gives a packet whose
density stays Gaussian for all times:

    <x>(t)    = -A(t) J(t)                       (the classical trajectory)
    <p>(t)    = -C/A + B0 J(t)
    sigma_x   = hbar |A| sqrt((a^2 + I^2)/a)
    sigma_p   = sqrt(hbar^2/4 + br^2) / sigma_x,
    br        = K - (hbar^2 B0 A / a)(a^2 + I^2)

with I, J, K the kernels from :mod:`linpacket.invariant`.  The prefactor of
the packet is fixed by unit normalization, with its phase taken from the
principal branch of 1/sqrt(a + iI); the packet is real positive at its
center at t=0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InternalCheckError, ValidationError
from .invariant import (
    DEFAULT_CAUSTIC_MARGIN,
    InvariantCoeffs,
    coeff_a,
    coeff_c,
    eigenphase_integral,
    ensure_admissible,
    kernel_c2_over_a2,
    kernel_c_over_a2,
    kernel_inv_a2,
    kernel_quarter_a2,
)
from .quadrature import DEFAULT_QUAD, QuadratureConfig

SOURCE_ANALYTIC = "analytic"
SOURCE_GRID = "grid"

# separates quadrature error from grid discretization error
MOMENT_TOL_ANALYTIC = 1e-9
MOMENT_TOL_GRID = 1e-6


@dataclass(frozen=True, eq=False)
class PacketSpec:
    """Gaussian weight width ``a`` on top of an invariant; determines Psi(x,t)."""

    coeffs: InvariantCoeffs
    a: float = 0.5
    quad: QuadratureConfig = DEFAULT_QUAD

    def __post_init__(self):
        if not (self.a > 0 and math.isfinite(self.a)):
            raise ValidationError(f"weight width a must be positive, got {self.a}")

    def __eq__(self, other):
        if not isinstance(other, PacketSpec):
            return NotImplemented
        return (self.coeffs == other.coeffs and self.a == other.a
                and self.quad == other.quad)


@dataclass(frozen=True)
class MomentSet:
    """First and second moments plus norm at one time stamp."""

    t: float
    mean_x: float
    mean_p: float
    sigma_x: float
    sigma_p: float
    norm: float
    source: str

    def __post_init__(self):
        for name in ("t", "mean_x", "mean_p", "sigma_x", "sigma_p", "norm"):
            if not math.isfinite(getattr(self, name)):
                raise ValidationError(f"MomentSet.{name} must be finite")
        if self.sigma_x <= 0 or self.sigma_p <= 0:
            raise ValidationError("uncertainties must be strictly positive")
        if self.source not in (SOURCE_ANALYTIC, SOURCE_GRID):
            raise ValidationError(f"unknown moment source {self.source!r}")

    @property
    def product(self) -> float:
        return self.sigma_x * self.sigma_p

    def validate(self, hbar: float, tol: float | None = None) -> "MomentSet":
        """Enforce the uncertainty bound and (analytic only) unit norm."""
        if tol is None:
            tol = MOMENT_TOL_ANALYTIC if self.source == SOURCE_ANALYTIC else MOMENT_TOL_GRID
        if self.product < 0.5 * hbar - tol:
            raise InternalCheckError(
                f"uncertainty product {self.product:.17g} below hbar/2 at t={self.t:g}"
            )
        if self.source == SOURCE_ANALYTIC and abs(self.norm - 1.0) > tol:
            raise InternalCheckError(f"analytic norm {self.norm:.17g} differs from 1")
        return self


# -- eigenstates ---------------------------------------------------------------


def eigenfunction(c: InvariantCoeffs, lam: float, x, t: float,
                  margin: float = DEFAULT_CAUSTIC_MARGIN):
    """Invariant eigenstate phi_lam(x, t); a pure phase, |phi| = 1.

    ``x`` may be a float or an array; the return matches.
    """
    ensure_admissible(c, t, margin)
    a_t = coeff_a(c, t)
    c_t = coeff_c(c, t)
    x = np.asarray(x, dtype=np.float64)
    expo = (2.0 * (lam - c_t) * x - c.b0 * x * x) / (2.0 * a_t * c.params.hbar)
    out = np.exp(1j * expo)
    return complex(out) if out.ndim == 0 else out


def eigen_solution(c: InvariantCoeffs, lam: float, x, t: float,
                   q: QuadratureConfig = DEFAULT_QUAD,
                   margin: float = DEFAULT_CAUSTIC_MARGIN):
    """Schroedinger solution psi_lam = sqrt(A0/A) e^{i alpha} phi_lam.

    |psi_lam| = sqrt(A0/A(t)) independent of x and lam; at t=0 it reduces to
    the bare eigenfunction.
    """
    ensure_admissible(c, t, margin)
    amp = math.sqrt(c.a0 / coeff_a(c, t))
    phase = -eigenphase_integral(c, lam, t, q, margin)
    return amp * np.exp(1j * phase) * eigenfunction(c, lam, x, t, margin)


def eigen_residual_phase(c: InvariantCoeffs, lam: float, t: float,
                         q: QuadratureConfig = DEFAULT_QUAD,
                         margin: float = DEFAULT_CAUSTIC_MARGIN) -> float:
    """Real phase alpha_lam(t) - alpha_lam(0); non-increasing in t.

    The logarithmic part of the phase integral is reported separately as the
    sqrt(A0/A) amplitude of :func:`eigen_solution`; alpha_lam(0) = 0.
    """
    return -eigenphase_integral(c, lam, t, q, margin)


# -- packet internals ---------------------------------------------------------


def _packet_frame(spec: PacketSpec, t: float, margin: float):
    """Shared per-time quantities: (A, C, I, J, mean_x, dx2)."""
    c = spec.coeffs
    ensure_admissible(c, t, margin)
    a_t = coeff_a(c, t)
    c_t = coeff_c(c, t, spec.quad)
    i_t = kernel_inv_a2(c, t, spec.quad, margin)
    j_t = kernel_c_over_a2(c, t, spec.quad, margin)
    mean = -a_t * j_t
    hbar = c.params.hbar
    dx2 = (hbar * a_t) ** 2 * (spec.a * spec.a + i_t * i_t) / spec.a
    return a_t, c_t, i_t, j_t, mean, dx2


def packet_amplitude(spec: PacketSpec, x, t: float,
                     margin: float = DEFAULT_CAUSTIC_MARGIN):
    """Complex amplitude Psi(x, t) of the Gaussian packet.

    Pointwise |Psi|^2 equals :func:`probability_density`; the discrete norm
    over any grid resolving the packet is 1.
    """
    c = spec.coeffs
    a_t, c_t, i_t, _, mean, dx2 = _packet_frame(spec, t, margin)
    p_t = kernel_c2_over_a2(c, t, spec.quad, margin)
    hbar = c.params.hbar
    a = spec.a

    prefactor = (2.0 * np.pi * dx2) ** (-0.25) * np.exp(-0.5j * math.atan2(i_t, a))
    x = np.asarray(x, dtype=np.float64)
    chirp = np.exp(1j * (-2.0 * c_t * x - c.b0 * x * x) / (2.0 * a_t * hbar))
    gauss = np.exp(-(a - 1j * i_t) * (x - mean) ** 2 / (4.0 * a * dx2))
    out = prefactor * np.exp(-1j * p_t) * chirp * gauss
    return complex(out) if out.ndim == 0 else out


def probability_density(spec: PacketSpec, x, t: float,
                        margin: float = DEFAULT_CAUSTIC_MARGIN):
    """|Psi|^2 = exp{-(x - <x>)^2 / (2 sigma_x^2)} / (sqrt(2 pi) sigma_x)."""
    _, _, _, _, mean, dx2 = _packet_frame(spec, t, margin)
    x = np.asarray(x, dtype=np.float64)
    out = np.exp(-((x - mean) ** 2) / (2.0 * dx2)) / math.sqrt(2.0 * np.pi * dx2)
    return float(out) if out.ndim == 0 else out


# -- moments --------------------------------------------------------------------


def mean_x(spec: PacketSpec, t: float,
           margin: float = DEFAULT_CAUSTIC_MARGIN) -> float:
    """<x>(t) = -A(t) J(t), the classical trajectory from rest at the origin."""
    c = spec.coeffs
    ensure_admissible(c, t, margin)
    return -coeff_a(c, t) * kernel_c_over_a2(c, t, spec.quad, margin)


def mean_p(spec: PacketSpec, t: float,
           margin: float = DEFAULT_CAUSTIC_MARGIN) -> float:
    """<p>(t) = -C/A + B0 J(t), the classical momentum; m d<x>/dt analytically."""
    c = spec.coeffs
    ensure_admissible(c, t, margin)
    return (-coeff_c(c, t, spec.quad) / coeff_a(c, t)
            + c.b0 * kernel_c_over_a2(c, t, spec.quad, margin))


def sigma_x(spec: PacketSpec, t: float,
            margin: float = DEFAULT_CAUSTIC_MARGIN) -> float:
    """Position width hbar |A| sqrt((a^2 + I^2)/a); force-independent."""
    c = spec.coeffs
    ensure_admissible(c, t, margin)
    i_t = kernel_inv_a2(c, t, spec.quad, margin)
    a = spec.a
    return c.params.hbar * abs(coeff_a(c, t)) * math.sqrt((a * a + i_t * i_t) / a)


def _sigma_p_bracket(spec: PacketSpec, t: float, margin: float) -> float:
    c = spec.coeffs
    i_t = kernel_inv_a2(c, t, spec.quad, margin)
    k_t = kernel_quarter_a2(c, t, spec.a, spec.quad, margin)
    hbar = c.params.hbar
    a = spec.a
    return k_t - (hbar * hbar * c.b0 * coeff_a(c, t) / a) * (a * a + i_t * i_t)


def sigma_p(spec: PacketSpec, t: float,
            margin: float = DEFAULT_CAUSTIC_MARGIN) -> float:
    """Momentum width sqrt(hbar^2/4 + bracket^2) / sigma_x."""
    c = spec.coeffs
    ensure_admissible(c, t, margin)
    br = _sigma_p_bracket(spec, t, margin)
    hbar = c.params.hbar
    return math.sqrt(0.25 * hbar * hbar + br * br) / sigma_x(spec, t, margin)


def uncertainty_product(spec: PacketSpec, t: float,
                        margin: float = DEFAULT_CAUSTIC_MARGIN) -> float:
    """sigma_x * sigma_p = sqrt(hbar^2/4 + bracket^2) >= hbar/2.

    Evaluated through the closed form, so the lower bound holds by
    construction; equals hbar/2 at t=0 exactly when B0 = 0.
    """
    c = spec.coeffs
    ensure_admissible(c, t, margin)
    br = _sigma_p_bracket(spec, t, margin)
    hbar = c.params.hbar
    return math.sqrt(0.25 * hbar * hbar + br * br)


def analytic_moments(spec: PacketSpec, t: float,
                     margin: float = DEFAULT_CAUSTIC_MARGIN) -> MomentSet:
    """Bundle <x>, <p>, sigma_x, sigma_p and the (unit) norm at time t."""
    c = spec.coeffs
    ensure_admissible(c, t, margin)
    p = c.params
    a = spec.a
    a_t = coeff_a(c, t)
    c_t = coeff_c(c, t, spec.quad)
    i_t = kernel_inv_a2(c, t, spec.quad, margin)
    j_t = kernel_c_over_a2(c, t, spec.quad, margin)
    k_t = kernel_quarter_a2(c, t, a, spec.quad, margin)
    sx = p.hbar * abs(a_t) * math.sqrt((a * a + i_t * i_t) / a)
    br = k_t - (p.hbar * p.hbar * c.b0 * a_t / a) * (a * a + i_t * i_t)
    sp = math.sqrt(0.25 * p.hbar * p.hbar + br * br) / sx
    ms = MomentSet(t=float(t), mean_x=-a_t * j_t,
                   mean_p=-c_t / a_t + c.b0 * j_t,
                   sigma_x=sx, sigma_p=sp, norm=1.0, source=SOURCE_ANALYTIC)
    return ms.validate(p.hbar)
