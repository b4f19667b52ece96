"""Hot scalar kernels: force evaluation, coefficient integrands, the
adaptive-Simpson driver, and the pointwise grid loops.

All functions here are wrapped with :func:`linpacket._accel.maybe_njit`; with
numba disabled they run as plain Python.  Force profiles arrive encoded as
``(kind, f0, omega, phi, times, values, cum_f, cum_ft)`` where the four
arrays are empty except for tabulated profiles.  Callers guarantee domain
validity (tabulated coverage, caustic guard); kernels never raise, they
report non-convergence through a status flag.
"""
from __future__ import annotations

import math

import numpy as np

from ._accel import maybe_njit

# force profile codes
FORCE_ZERO = 0
FORCE_CONSTANT = 1
FORCE_SINUSOIDAL = 2
FORCE_TABULATED = 3

# integrand codes
ITG_FORCE = 0  # F(tau)
ITG_FORCE_T = 1  # tau * F(tau)
ITG_INV_A2 = 2  # 1 / (2 hbar m A^2)
ITG_C_OVER_A2 = 3  # C / (m A^2)
ITG_C2_OVER_A2 = 4  # C^2 / (2 hbar m A^2)
ITG_QUARTER_A2 = 5  # 1 / (4 a m A^2)
ITG_EIGEN_PHASE = 6  # (lam - C)^2 / (2 hbar m A^2)


@maybe_njit
def force_value(kind, f0, omega, phi, times, values, t):
    if kind == FORCE_ZERO:
        return 0.0
    if kind == FORCE_CONSTANT:
        return f0
    if kind == FORCE_SINUSOIDAL:
        return f0 * math.sin(omega * t + phi)
    # tabulated: linear interpolation, range checked by the caller
    n = times.shape[0]
    i = np.searchsorted(times, t) - 1
    if i < 0:
        i = 0
    if i > n - 2:
        i = n - 2
    h = times[i + 1] - times[i]
    s = (t - times[i]) / h
    return values[i] * (1.0 - s) + values[i + 1] * s


@maybe_njit
def force_cumulatives(kind, f0, omega, phi, times, values, cum_f, cum_ft, t):
    """Return (int_0^t F dtau, int_0^t F*tau dtau), exact per profile kind.

    Tabulated profiles integrate their linear interpolant exactly:
    ``cum_f``/``cum_ft`` hold prefix integrals shifted to vanish at tau=0 and
    the partial segment is a closed-form polynomial.
    """
    if kind == FORCE_ZERO:
        return 0.0, 0.0
    if kind == FORCE_CONSTANT:
        return f0 * t, 0.5 * f0 * t * t
    if kind == FORCE_SINUSOIDAL:
        if omega == 0.0:
            s0 = f0 * math.sin(phi)
            return s0 * t, 0.5 * s0 * t * t
        wt = omega * t + phi
        i_f = f0 * (math.cos(phi) - math.cos(wt)) / omega
        i_ft = f0 * ((math.sin(wt) - math.sin(phi)) / (omega * omega) - t * math.cos(wt) / omega)
        return i_f, i_ft
    n = times.shape[0]
    i = np.searchsorted(times, t) - 1
    if i < 0:
        i = 0
    if i > n - 2:
        i = n - 2
    t0 = times[i]
    v0 = values[i]
    slope = (values[i + 1] - v0) / (times[i + 1] - t0)
    d = t - t0
    part_f = v0 * d + 0.5 * slope * d * d
    part_ft = 0.5 * v0 * (t * t - t0 * t0) + slope * (
        t * t * t / 3.0 - 0.5 * t0 * t * t + t0 * t0 * t0 / 6.0
    )
    return cum_f[i] + part_f, cum_ft[i] + part_ft


@maybe_njit
def cheb_eval(nodes, vals, x):
    """Barycentric interpolation on Chebyshev-Lobatto nodes."""
    n = nodes.shape[0]
    num = 0.0
    den = 0.0
    sign = 1.0
    for j in range(n):
        dx = x - nodes[j]
        if -1e-300 < dx < 1e-300:
            return vals[j]
        w = sign
        if j == 0 or j == n - 1:
            w *= 0.5
        q = w / dx
        num += q * vals[j]
        den += q
        sign = -sign
    return num / den


@maybe_njit
def c_value(tau, a0, b0, c0, m, kind, f0, omega, phi, times, values, cum_f, cum_ft,
            cheb_on, cheb_nodes, cheb_vals):
    if cheb_on == 1:
        return cheb_eval(cheb_nodes, cheb_vals, tau)
    i_f, i_ft = force_cumulatives(kind, f0, omega, phi, times, values, cum_f, cum_ft, tau)
    return c0 - a0 * i_f + (b0 / m) * i_ft


@maybe_njit
def integrand(code, tau, a0, b0, c0, m, hbar, width_a, lam,
              kind, f0, omega, phi, times, values, cum_f, cum_ft,
              cheb_on, cheb_nodes, cheb_vals):
    if code == ITG_FORCE:
        return force_value(kind, f0, omega, phi, times, values, tau)
    if code == ITG_FORCE_T:
        return tau * force_value(kind, f0, omega, phi, times, values, tau)
    a_t = a0 - b0 * tau / m
    inv_a2 = 1.0 / (a_t * a_t)
    if code == ITG_INV_A2:
        return 0.5 * inv_a2 / (hbar * m)
    if code == ITG_QUARTER_A2:
        return 0.25 * inv_a2 / (width_a * m)
    c_t = c_value(tau, a0, b0, c0, m, kind, f0, omega, phi, times, values,
                  cum_f, cum_ft, cheb_on, cheb_nodes, cheb_vals)
    if code == ITG_C_OVER_A2:
        return c_t * inv_a2 / m
    if code == ITG_C2_OVER_A2:
        return 0.5 * c_t * c_t * inv_a2 / (hbar * m)
    # ITG_EIGEN_PHASE
    d = lam - c_t
    return 0.5 * d * d * inv_a2 / (hbar * m)


@maybe_njit
def adaptive_simpson(code, b, a0, b0, c0, m, hbar, width_a, lam,
                     kind, f0, omega, phi, times, values, cum_f, cum_ft,
                     cheb_on, cheb_nodes, cheb_vals,
                     rel_tol, abs_tol, max_depth):
    """Integrate the coded integrand over [0, b] by bisecting Simpson panels.

    Returns ``(value, converged)`` where ``converged`` is 0 if any panel hit
    ``max_depth`` while still above its error budget.
    """
    if b == 0.0:
        return 0.0, 1

    # L1-ish scale from a coarse trapezoid pass, for the relative budget
    n0 = 16
    h0 = b / n0
    scale = 0.0
    prev = abs(integrand(code, 0.0, a0, b0, c0, m, hbar, width_a, lam,
                         kind, f0, omega, phi, times, values, cum_f, cum_ft,
                         cheb_on, cheb_nodes, cheb_vals))
    for i in range(1, n0 + 1):
        cur = abs(integrand(code, h0 * i, a0, b0, c0, m, hbar, width_a, lam,
                            kind, f0, omega, phi, times, values, cum_f, cum_ft,
                            cheb_on, cheb_nodes, cheb_vals))
        scale += 0.5 * (prev + cur) * h0
        prev = cur
    eps = max(abs_tol, rel_tol * scale)

    cap = max_depth + 8
    st_a = np.empty(cap, np.float64)
    st_b = np.empty(cap, np.float64)
    st_fa = np.empty(cap, np.float64)
    st_fm = np.empty(cap, np.float64)
    st_fb = np.empty(cap, np.float64)
    st_s = np.empty(cap, np.float64)
    st_eps = np.empty(cap, np.float64)
    st_d = np.empty(cap, np.int64)

    fa = integrand(code, 0.0, a0, b0, c0, m, hbar, width_a, lam,
                   kind, f0, omega, phi, times, values, cum_f, cum_ft,
                   cheb_on, cheb_nodes, cheb_vals)
    fb = integrand(code, b, a0, b0, c0, m, hbar, width_a, lam,
                   kind, f0, omega, phi, times, values, cum_f, cum_ft,
                   cheb_on, cheb_nodes, cheb_vals)
    fm = integrand(code, 0.5 * b, a0, b0, c0, m, hbar, width_a, lam,
                   kind, f0, omega, phi, times, values, cum_f, cum_ft,
                   cheb_on, cheb_nodes, cheb_vals)
    st_a[0] = 0.0
    st_b[0] = b
    st_fa[0] = fa
    st_fm[0] = fm
    st_fb[0] = fb
    st_s[0] = (b / 6.0) * (fa + 4.0 * fm + fb)
    st_eps[0] = eps
    st_d[0] = 0
    sp = 1

    total = 0.0
    ok = 1
    while sp > 0:
        sp -= 1
        pa = st_a[sp]
        pb = st_b[sp]
        fa = st_fa[sp]
        fm = st_fm[sp]
        fb = st_fb[sp]
        s_whole = st_s[sp]
        eps_loc = st_eps[sp]
        depth = st_d[sp]

        mid = 0.5 * (pa + pb)
        lm = 0.5 * (pa + mid)
        rm = 0.5 * (mid + pb)
        flm = integrand(code, lm, a0, b0, c0, m, hbar, width_a, lam,
                        kind, f0, omega, phi, times, values, cum_f, cum_ft,
                        cheb_on, cheb_nodes, cheb_vals)
        frm = integrand(code, rm, a0, b0, c0, m, hbar, width_a, lam,
                        kind, f0, omega, phi, times, values, cum_f, cum_ft,
                        cheb_on, cheb_nodes, cheb_vals)
        h12 = (pb - pa) / 12.0
        s_left = h12 * (fa + 4.0 * flm + fm)
        s_right = h12 * (fm + 4.0 * frm + fb)
        s2 = s_left + s_right
        err = (s2 - s_whole) / 15.0

        if abs(err) <= eps_loc or depth >= max_depth:
            total += s2 + err
            if abs(err) > eps_loc:
                ok = 0
        else:
            st_a[sp] = mid
            st_b[sp] = pb
            st_fa[sp] = fm
            st_fm[sp] = frm
            st_fb[sp] = fb
            st_s[sp] = s_right
            st_eps[sp] = 0.5 * eps_loc
            st_d[sp] = depth + 1
            sp += 1
            st_a[sp] = pa
            st_b[sp] = mid
            st_fa[sp] = fa
            st_fm[sp] = flm
            st_fb[sp] = fm
            st_s[sp] = s_left
            st_eps[sp] = 0.5 * eps_loc
            st_d[sp] = depth + 1
            sp += 1
    return total, ok


@maybe_njit
def phase_multiply(psi, x, coef):
    """Elementwise psi * exp(1j * coef * x)."""
    out = np.empty_like(psi)
    for j in range(psi.shape[0]):
        th = coef * x[j]
        out[j] = psi[j] * complex(math.cos(th), math.sin(th))
    return out


@maybe_njit
def superpose_accumulate(lam_nodes, coefs, x, scale, c_t, b0, hbar, a_t):
    """Weighted sum over eigenvalue nodes of the invariant eigenstates.

    ``coefs[i]`` already bundles quadrature weight, weight-function value and
    the time-dependent eigenphase; the x-dependence is a linear phase per
    node plus one common quadratic chirp.
    """
    n = x.shape[0]
    nl = lam_nodes.shape[0]
    out = np.empty(n, np.complex128)
    inv = 1.0 / (hbar * a_t)
    for j in range(n):
        xj = x[j]
        acc = 0.0 + 0.0j
        for i in range(nl):
            th = (lam_nodes[i] - c_t) * xj * inv
            acc += coefs[i] * complex(math.cos(th), math.sin(th))
        th_chirp = -0.5 * b0 * xj * xj * inv
        out[j] = acc * scale * complex(math.cos(th_chirp), math.sin(th_chirp))
    return out
