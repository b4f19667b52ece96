"""Controlled-accuracy quadrature: configuration and the kernel dispatcher."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels as k
from .errors import QuadratureNonConvergence, ValidationError

_EMPTY = np.empty(0, dtype=np.float64)


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances for the adaptive Simpson integrator.

    The relative tolerance is taken against an L1-scale estimate of the
    integrand, so sign-changing integrands do not get a free pass through
    cancellation.
    """

    rel_tol: float = 1e-10
    abs_tol: float = 1e-13
    max_depth: int = 40

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValidationError("quadrature tolerances must be positive")
        if self.max_depth < 1:
            raise ValidationError("max_depth must be >= 1")


DEFAULT_QUAD = QuadratureConfig()


def integrate_kernel(code: int, t: float, a0: float, b0: float, c0: float,
                     m: float, hbar: float, force_pack, q: QuadratureConfig,
                     *, width_a: float = 1.0, lam: float = 0.0,
                     cheb: tuple[np.ndarray, np.ndarray] | None = None) -> float:
    """Integrate one coded integrand over [0, t] and raise on non-convergence."""
    kind, f0, omega, phi, times, values, cum_f, cum_ft = force_pack
    if cheb is None:
        cheb_on, nodes, vals = 0, _EMPTY, _EMPTY
    else:
        cheb_on, (nodes, vals) = 1, cheb
    value, ok = k.adaptive_simpson(
        code, float(t), a0, b0, c0, m, hbar, width_a, lam,
        kind, f0, omega, phi, times, values, cum_f, cum_ft,
        cheb_on, nodes, vals,
        q.rel_tol, q.abs_tol, q.max_depth,
    )
    if not ok:
        raise QuadratureNonConvergence(
            f"adaptive Simpson (integrand code {code}) did not converge on "
            f"[0, {t:g}] within max_depth={q.max_depth}"
        )
    return float(value)


def adaptive_simpson_scalar(f, a: float, b: float,
                            q: QuadratureConfig = DEFAULT_QUAD) -> float:
    """Adaptive Simpson for an arbitrary Python callable.

    Pure-Python twin of the kernel driver; used by tests as a second route
    and by callers integrating things that are not coefficient kernels.
    """
    a, b = float(a), float(b)
    if a == b:
        return 0.0
    n0 = 16
    xs = np.linspace(a, b, n0 + 1)
    fs = [abs(f(x)) for x in xs]
    scale = float(np.trapezoid(fs, xs))
    eps = max(q.abs_tol, q.rel_tol * scale)

    def recurse(lo, hi, flo, fmid, fhi, s_whole, eps_loc, depth):
        mid = 0.5 * (lo + hi)
        lm = 0.5 * (lo + mid)
        rm = 0.5 * (mid + hi)
        flm = f(lm)
        frm = f(rm)
        h12 = (hi - lo) / 12.0
        s_left = h12 * (flo + 4.0 * flm + fmid)
        s_right = h12 * (fmid + 4.0 * frm + fhi)
        s2 = s_left + s_right
        err = (s2 - s_whole) / 15.0
        if abs(err) <= eps_loc or depth >= q.max_depth:
            if abs(err) > eps_loc:
                raise QuadratureNonConvergence(
                    f"adaptive Simpson did not converge on [{a:g}, {b:g}] "
                    f"within max_depth={q.max_depth}"
                )
            return s2 + err
        return (recurse(lo, mid, flo, flm, fmid, s_left, 0.5 * eps_loc, depth + 1)
                + recurse(mid, hi, fmid, frm, fhi, s_right, 0.5 * eps_loc, depth + 1))

    fa, fb, fm = f(a), f(b), f(0.5 * (a + b))
    s0 = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    return recurse(a, b, fa, fm, fb, s0, eps, 0)


def chebyshev_lobatto(a: float, b: float, n: int) -> np.ndarray:
    """n+1 Chebyshev-Lobatto nodes on [a, b], ascending."""
    j = np.arange(n + 1)
    return a + 0.5 * (b - a) * (1.0 - np.cos(np.pi * j / n))
