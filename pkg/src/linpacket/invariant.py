"""Linear-invariant coefficients A(t), B(t), C(t) and their time-integral kernels.

The invariant is A(t)p + B(t)x + C(t) with

    A(t) = A0 - (B0/m) t,        B(t) = B0,
    C(t) = C0 - A0 int_0^t F + (B0/m) int_0^t F*tau.

Everything downstream is built from three integrals of these coefficients:

    I(t) = int_0^t dtau / (2 hbar m A^2)      (kernel_inv_a2)
    J(t) = int_0^t C / (m A^2) dtau           (kernel_c_over_a2)
    P(t) = int_0^t C^2 / (2 hbar m A^2) dtau  (kernel_c2_over_a2)

A(t) vanishes at the caustic t* = m A0 / B0; every time-dependent evaluation
rejects times beyond a safety margin in front of it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels as k
from .errors import CausticReached, ValidationError
from .forces import ForceProfile
from .quadrature import DEFAULT_QUAD, QuadratureConfig, chebyshev_lobatto, integrate_kernel

# Fraction of the caustic time beyond which evaluations are rejected; keeps
# the 1/A^2 integrands out of the catastrophic-cancellation zone.
DEFAULT_CAUSTIC_MARGIN = 0.99

_CHEB_LEVELS = (16, 32, 64, 128, 256)


@dataclass(frozen=True)
class PhysicalParams:
    """Mass and reduced Planck constant, in arbitrary consistent units."""

    m: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if not (self.m > 0 and math.isfinite(self.m)):
            raise ValidationError(f"m must be positive and finite, got {self.m}")
        if not (self.hbar > 0 and math.isfinite(self.hbar)):
            raise ValidationError(f"hbar must be positive and finite, got {self.hbar}")


@dataclass(frozen=True, eq=False)
class InvariantCoeffs:
    """Initial coefficients of the linear invariant plus the driving force.

    A0, B0, C0 are real (Hermitian invariant); A0 must be nonzero because
    A(0) appears in denominators of every closed form.
    """

    a0: float
    b0: float
    c0: float
    params: PhysicalParams
    force: ForceProfile

    def __post_init__(self):
        for name in ("a0", "b0", "c0"):
            v = getattr(self, name)
            try:
                fv = float(v)
            except (TypeError, ValueError):
                raise ValidationError(f"{name} must be a finite real, got {v!r}") from None
            if not math.isfinite(fv):
                raise ValidationError(f"{name} must be a finite real, got {v!r}")
            object.__setattr__(self, name, fv)
        if self.a0 == 0.0:
            raise ValidationError("A0 must be nonzero (A(0) appears in denominators)")

    def __eq__(self, other):
        if not isinstance(other, InvariantCoeffs):
            return NotImplemented
        return (self.a0 == other.a0 and self.b0 == other.b0 and self.c0 == other.c0
                and self.params == other.params and self.force == other.force)

    def __hash__(self):
        return hash((self.a0, self.b0, self.c0, self.params, self.force))


def caustic_time(c: InvariantCoeffs) -> float | None:
    """t* = m A0 / B0 where A(t) vanishes, or None when B0 = 0."""
    if c.b0 == 0.0:
        return None
    return c.params.m * c.a0 / c.b0


def ensure_admissible(c: InvariantCoeffs, t: float,
                      margin: float = DEFAULT_CAUSTIC_MARGIN) -> None:
    """Reject negative times and times beyond the caustic guard."""
    if t < 0.0:
        raise ValidationError(f"negative time t={t:g}; evolution starts at t=0")
    tstar = caustic_time(c)
    if tstar is not None and 0.0 < tstar and t > margin * tstar:
        raise CausticReached(
            f"t={t:g} beyond the guard {margin:g}*t* around the caustic "
            f"t*={tstar:g} where A(t) vanishes"
        )


def coeff_a(c: InvariantCoeffs, t: float) -> float:
    """A(t) = A0 - (B0/m) t, exact."""
    return c.a0 - c.b0 * float(t) / c.params.m


def coeff_b(c: InvariantCoeffs, t: float) -> float:
    """B(t) = B0, constant in time."""
    return c.b0


def coeff_c(c: InvariantCoeffs, t: float,
            q: QuadratureConfig = DEFAULT_QUAD) -> float:
    """C(t) through the exact cumulative integrals of the force profile."""
    t = float(t)
    if t < 0.0:
        raise ValidationError(f"negative time t={t:g}; evolution starts at t=0")
    i_f, i_ft = c.force.cumulatives(t)
    return c.c0 - c.a0 * i_f + (c.b0 / c.params.m) * i_ft


def coeff_c_quadrature(c: InvariantCoeffs, t: float,
                       q: QuadratureConfig = DEFAULT_QUAD) -> float:
    """C(t) with both force integrals done by adaptive Simpson.

    Slow path; exists to cross-check the closed forms (they must agree
    within rel_tol) and to exercise the quadrature engine on F itself.
    """
    t = float(t)
    if t < 0.0:
        raise ValidationError(f"negative time t={t:g}; evolution starts at t=0")
    c.force.require_covers(min(0.0, t), max(0.0, t))
    pack = c.force.pack()
    p = c.params
    i_f = integrate_kernel(k.ITG_FORCE, t, c.a0, c.b0, c.c0, p.m, p.hbar, pack, q)
    i_ft = integrate_kernel(k.ITG_FORCE_T, t, c.a0, c.b0, c.c0, p.m, p.hbar, pack, q)
    return c.c0 - c.a0 * i_f + (c.b0 / p.m) * i_ft


def _c_table(c: InvariantCoeffs, t: float, q: QuadratureConfig):
    """Chebyshev tabulation of C on [0, t] for the nested kernels.

    Refines the node count until barycentric interpolation matches the
    direct evaluation within a tenth of the quadrature budget, measured at
    points interleaved between the nodes.  Returns None when the budget
    cannot be met (kinked tabulated forces); the kernels then evaluate C
    directly, which is exact anyway.
    """
    if t == 0.0:
        return None
    for n in _CHEB_LEVELS:
        nodes = chebyshev_lobatto(0.0, t, n)
        vals = np.array([coeff_c(c, x, q) for x in nodes])
        probes = 0.5 * (nodes[:-1] + nodes[1:])
        ref = np.array([coeff_c(c, x, q) for x in probes])
        approx = np.array([k.cheb_eval(nodes, vals, x) for x in probes])
        budget = max(q.abs_tol, 0.1 * q.rel_tol * max(1.0, float(np.max(np.abs(vals)))))
        if float(np.max(np.abs(approx - ref))) <= budget:
            return np.ascontiguousarray(nodes), np.ascontiguousarray(vals)
    return None


def kernel_inv_a2(c: InvariantCoeffs, t: float,
                  q: QuadratureConfig = DEFAULT_QUAD,
                  margin: float = DEFAULT_CAUSTIC_MARGIN) -> float:
    """I(t) = int_0^t dtau / (2 hbar m A^2); monotone non-decreasing."""
    t = float(t)
    ensure_admissible(c, t, margin)
    p = c.params
    return integrate_kernel(k.ITG_INV_A2, t, c.a0, c.b0, c.c0, p.m, p.hbar,
                            c.force.pack(), q)


def kernel_c_over_a2(c: InvariantCoeffs, t: float,
                     q: QuadratureConfig = DEFAULT_QUAD,
                     margin: float = DEFAULT_CAUSTIC_MARGIN) -> float:
    """J(t) = int_0^t C / (m A^2) dtau."""
    t = float(t)
    ensure_admissible(c, t, margin)
    c.force.require_covers(0.0, t)
    p = c.params
    return integrate_kernel(k.ITG_C_OVER_A2, t, c.a0, c.b0, c.c0, p.m, p.hbar,
                            c.force.pack(), q, cheb=_c_table(c, t, q))


def kernel_c2_over_a2(c: InvariantCoeffs, t: float,
                      q: QuadratureConfig = DEFAULT_QUAD,
                      margin: float = DEFAULT_CAUSTIC_MARGIN) -> float:
    """P(t) = int_0^t C^2 / (2 hbar m A^2) dtau; non-negative, non-decreasing."""
    t = float(t)
    ensure_admissible(c, t, margin)
    c.force.require_covers(0.0, t)
    p = c.params
    return integrate_kernel(k.ITG_C2_OVER_A2, t, c.a0, c.b0, c.c0, p.m, p.hbar,
                            c.force.pack(), q, cheb=_c_table(c, t, q))


def kernel_quarter_a2(c: InvariantCoeffs, t: float, width_a: float,
                      q: QuadratureConfig = DEFAULT_QUAD,
                      margin: float = DEFAULT_CAUSTIC_MARGIN) -> float:
    """K(t) = int_0^t dtau / (4 a m A^2), the momentum-spread integral."""
    t = float(t)
    ensure_admissible(c, t, margin)
    p = c.params
    return integrate_kernel(k.ITG_QUARTER_A2, t, c.a0, c.b0, c.c0, p.m, p.hbar,
                            c.force.pack(), q, width_a=width_a)


def eigenphase_integral(c: InvariantCoeffs, lam: float, t: float,
                        q: QuadratureConfig = DEFAULT_QUAD,
                        margin: float = DEFAULT_CAUSTIC_MARGIN) -> float:
    """int_0^t (lam - C)^2 / (2 hbar m A^2) dtau, the eigenstate phase rate."""
    t = float(t)
    ensure_admissible(c, t, margin)
    c.force.require_covers(0.0, t)
    p = c.params
    return integrate_kernel(k.ITG_EIGEN_PHASE, t, c.a0, c.b0, c.c0, p.m, p.hbar,
                            c.force.pack(), q, lam=float(lam),
                            cheb=_c_table(c, t, q))


def invariance_residual(c: InvariantCoeffs, t: float, dt: float,
                        q: QuadratureConfig = DEFAULT_QUAD) -> tuple[float, float, float]:
    """Finite-difference residuals of the coefficient ODEs over [t, t+dt].

    Differences are centered at t + dt/2, so each residual is O(dt^2) for a
    smooth force:

        rA = |dA/dt + B0/m|,  rB = |dB/dt|,  rC = |dC/dt + A(t+dt/2) F(t+dt/2)|.
    """
    t, dt = float(t), float(dt)
    if dt <= 0.0:
        raise ValidationError(f"dt must be positive, got {dt:g}")
    if t < 0.0:
        raise ValidationError(f"negative time t={t:g}; evolution starts at t=0")
    c.force.require_covers(0.0, t + dt)
    mid = t + 0.5 * dt
    r_a = abs((coeff_a(c, t + dt) - coeff_a(c, t)) / dt + c.b0 / c.params.m)
    r_b = abs((coeff_b(c, t + dt) - coeff_b(c, t)) / dt)
    r_c = abs((coeff_c(c, t + dt, q) - coeff_c(c, t, q)) / dt
              + coeff_a(c, mid) * c.force.eval(mid))
    return r_a, r_b, r_c
