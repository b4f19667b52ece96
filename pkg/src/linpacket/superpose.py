"""Numerical superposition over invariant eigenvalues.

A physical state is Psi(x,t) = int g(lam) psi_lam(x,t) dlam.  The integral is
discretized with Gauss-Legendre nodes on a truncated lambda-domain; the
weight must be negligible at the endpoints or the truncation error would
poison the result.  With the normalized Gaussian weight

    g(lam) = sqrt( sqrt(a) / (hbar A0 pi sqrt(2 pi)) ) exp(-a lam^2)

the superposition must reproduce the closed-form packet; that identity is
the package's main cross-check of the eigenstate machinery.  The cubic-phase
weight exp(i lam^3 / 3) yields Airy-type states and is carried as tapered
samples -- a smoke test of the integrator, not an Airy implementation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels as k
from ._accel import NUMBA_ENABLED
from .errors import TruncationTooCoarse, ValidationError
from .grid import GridSpec, GridState
from .invariant import (
    DEFAULT_CAUSTIC_MARGIN,
    InvariantCoeffs,
    coeff_a,
    coeff_c,
    eigenphase_integral,
    ensure_admissible,
)
from .quadrature import DEFAULT_QUAD, QuadratureConfig

# weight magnitude allowed at the truncated endpoints, relative to its peak
ENDPOINT_TOL = 1e-14

_EMPTY = np.empty(0, dtype=np.float64)


@dataclass(frozen=True, eq=False)
class WeightFunction:
    """Spectral weight g(lam) over a truncated eigenvalue domain."""

    kind: str  # "gaussian" | "custom"
    lambda_min: float
    lambda_max: float
    n_lambda: int = 256
    a: float = 0.0  # gaussian width parameter
    sample_lambdas: np.ndarray = field(default_factory=lambda: _EMPTY)
    sample_values: np.ndarray = field(default_factory=lambda: np.empty(0, complex))

    def __post_init__(self):
        if self.kind not in ("gaussian", "custom"):
            raise ValidationError(f"unknown weight kind {self.kind!r}")
        if not self.lambda_min < self.lambda_max:
            raise ValidationError("lambda_min must be below lambda_max")
        if self.n_lambda < 16:
            raise ValidationError("n_lambda must be at least 16")

    @classmethod
    def gaussian(cls, a: float, lambda_span: float | None = None,
                 n_lambda: int = 256) -> "WeightFunction":
        """Normalized Gaussian weight exp(-a lam^2).

        The default truncation +-8.125/sqrt(2a) puts the endpoint weight at
        4.7e-15 of the peak, just inside the truncation tolerance.
        """
        if not a > 0:
            raise ValidationError("gaussian weight needs a > 0")
        if lambda_span is None:
            lambda_span = 8.125 / math.sqrt(2.0 * a)
        return cls(kind="gaussian", a=float(a),
                   lambda_min=-float(lambda_span), lambda_max=float(lambda_span),
                   n_lambda=n_lambda)

    @classmethod
    def custom(cls, lambdas, values, n_lambda: int = 256) -> "WeightFunction":
        """Weight given by complex samples, interpolated linearly in lambda."""
        lam = np.asarray(lambdas, dtype=np.float64).copy()
        val = np.asarray(values, dtype=np.complex128).copy()
        if lam.ndim != 1 or val.shape != lam.shape or lam.size < 2:
            raise ValidationError("need matching 1-D sample arrays with >= 2 points")
        if not np.all(np.diff(lam) > 0):
            raise ValidationError("sample lambdas must be strictly increasing")
        lam.setflags(write=False)
        val.setflags(write=False)
        return cls(kind="custom", lambda_min=float(lam[0]), lambda_max=float(lam[-1]),
                   n_lambda=n_lambda, sample_lambdas=lam, sample_values=val)

    @classmethod
    def airy(cls, lambda_max: float = 6.0, n_lambda: int = 256,
             n_samples: int = 32769, taper: float | None = None) -> "WeightFunction":
        """Cubic-phase weight exp(i lam^3 / 3) with a Gaussian apodizing taper.

        The taper width defaults to lambda_max/5.8 so the endpoint weight is
        below the truncation tolerance.
        """
        if taper is None:
            taper = lambda_max / 5.8
        lam = np.linspace(-lambda_max, lambda_max, n_samples)
        vals = np.exp(1j * lam**3 / 3.0) * np.exp(-((lam / taper) ** 2))
        return cls.custom(lam, vals, n_lambda=n_lambda)

    def values_at(self, lam: np.ndarray, c: InvariantCoeffs) -> np.ndarray:
        if self.kind == "gaussian":
            ha = c.params.hbar * c.a0
            if ha <= 0:
                raise ValidationError(
                    "gaussian weight normalization needs hbar*A0 > 0"
                )
            norm = math.sqrt(math.sqrt(self.a) / (ha * math.pi * math.sqrt(2.0 * math.pi)))
            return norm * np.exp(-self.a * lam * lam) + 0.0j
        re = np.interp(lam, self.sample_lambdas, self.sample_values.real)
        im = np.interp(lam, self.sample_lambdas, self.sample_values.imag)
        return re + 1j * im

    def check_truncation(self, c: InvariantCoeffs) -> None:
        ends = np.array([self.lambda_min, self.lambda_max])
        g_ends = np.abs(self.values_at(ends, c))
        if self.kind == "gaussian":
            peak = float(np.abs(self.values_at(np.array([0.0]), c))[0])
        else:
            peak = float(np.max(np.abs(self.sample_values)))
        if peak == 0.0:
            raise ValidationError("weight function is identically zero")
        worst = float(np.max(g_ends)) / peak
        if worst > ENDPOINT_TOL:
            raise TruncationTooCoarse(
                f"weight magnitude {worst:.3e} of peak at the lambda endpoints "
                f"exceeds {ENDPOINT_TOL:.1e}; widen [lambda_min, lambda_max]"
            )


def superpose(weight: WeightFunction, c: InvariantCoeffs, grid: GridSpec,
              t: float, q: QuadratureConfig = DEFAULT_QUAD,
              margin: float = DEFAULT_CAUSTIC_MARGIN) -> GridState:
    """Gauss-Legendre discretization of int g(lam) psi_lam(x, t) dlam on the grid.

    Each node contributes sqrt(A0/A) e^{i alpha_lam(t)} phi_lam(x, t); the
    x-independent factors are folded into per-node coefficients, leaving one
    linear phase per node plus a common quadratic chirp.
    """
    ensure_admissible(c, t, margin)
    weight.check_truncation(c)
    nodes, wts = np.polynomial.legendre.leggauss(weight.n_lambda)
    half = 0.5 * (weight.lambda_max - weight.lambda_min)
    lam = weight.lambda_min + half * (nodes + 1.0)
    wts = wts * half

    g_vals = weight.values_at(lam, c)
    phases = np.array([eigenphase_integral(c, lv, t, q, margin) for lv in lam])
    coefs = wts * g_vals * np.exp(-1j * phases)

    a_t = coeff_a(c, t)
    c_t = coeff_c(c, t, q)
    scale = math.sqrt(c.a0 / a_t)
    x = grid.x
    hbar = c.params.hbar
    if NUMBA_ENABLED:
        psi = k.superpose_accumulate(lam, np.ascontiguousarray(coefs), x,
                                     scale, c_t, c.b0, hbar, a_t)
    else:
        linear = np.exp(1j * np.outer(lam - c_t, x) / (hbar * a_t))
        chirp = np.exp(-0.5j * c.b0 * x * x / (hbar * a_t))
        psi = scale * chirp * (coefs @ linear)
    return GridState(grid, float(t), psi)
