"""External force profiles F(t) and their exact cumulative integrals."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels as k
from .errors import OutOfTabulatedRange, ValidationError

_EMPTY = np.empty(0, dtype=np.float64)

_KIND_CODES = {
    "zero": k.FORCE_ZERO,
    "constant": k.FORCE_CONSTANT,
    "sinusoidal": k.FORCE_SINUSOIDAL,
    "tabulated": k.FORCE_TABULATED,
}


def _finite(name, value):
    value = float(value)
    if not np.isfinite(value):
        raise ValidationError(f"{name} must be finite, got {value}")
    return value


@dataclass(frozen=True, eq=False)
class ForceProfile:
    """A time-dependent uniform force.

    Construct through :meth:`zero`, :meth:`constant`, :meth:`sinusoidal` or
    :meth:`tabulated`.  Tabulated profiles interpolate linearly between
    strictly increasing sample times and refuse evaluation outside them;
    their cumulative integrals are the exact integrals of the interpolant.
    """

    kind: str
    f0: float = 0.0
    omega: float = 0.0
    phi: float = 0.0
    times: np.ndarray = field(default_factory=lambda: _EMPTY)
    values: np.ndarray = field(default_factory=lambda: _EMPTY)
    # prefix integrals of F and F*t from tau=0 up to each sample time
    _cum_f: np.ndarray = field(default_factory=lambda: _EMPTY, repr=False)
    _cum_ft: np.ndarray = field(default_factory=lambda: _EMPTY, repr=False)

    def __post_init__(self):
        if self.kind not in _KIND_CODES:
            raise ValidationError(f"unknown force kind {self.kind!r}")

    @classmethod
    def zero(cls) -> "ForceProfile":
        return cls(kind="zero")

    @classmethod
    def constant(cls, f0: float) -> "ForceProfile":
        return cls(kind="constant", f0=_finite("f0", f0))

    @classmethod
    def sinusoidal(cls, f0: float, omega: float, phi: float = 0.0) -> "ForceProfile":
        return cls(kind="sinusoidal", f0=_finite("f0", f0),
                   omega=_finite("omega", omega), phi=_finite("phi", phi))

    @classmethod
    def tabulated(cls, times, values) -> "ForceProfile":
        t = np.asarray(times, dtype=np.float64).copy()
        v = np.asarray(values, dtype=np.float64).copy()
        if t.ndim != 1 or v.ndim != 1 or t.size != v.size:
            raise ValidationError("times and values must be 1-D arrays of equal length")
        if t.size < 2:
            raise ValidationError("tabulated force needs at least two samples")
        if not np.all(np.diff(t) > 0):
            raise ValidationError("tabulated times must be strictly increasing")
        if not (np.all(np.isfinite(t)) and np.all(np.isfinite(v))):
            raise ValidationError("tabulated samples must be finite")
        cum_f, cum_ft = cls._prefix_integrals(t, v)
        for arr in (t, v, cum_f, cum_ft):
            arr.setflags(write=False)
        return cls(kind="tabulated", times=t, values=v, _cum_f=cum_f, _cum_ft=cum_ft)

    @staticmethod
    def _prefix_integrals(t, v):
        # per-segment exact integrals of the linear interpolant
        h = np.diff(t)
        slopes = np.diff(v) / h
        seg_f = 0.5 * (v[:-1] + v[1:]) * h
        t0, t1 = t[:-1], t[1:]
        seg_ft = 0.5 * v[:-1] * (t1**2 - t0**2) + slopes * (
            t1**3 / 3.0 - 0.5 * t0 * t1**2 + t0**3 / 6.0
        )
        cum_f = np.concatenate(([0.0], np.cumsum(seg_f)))
        cum_ft = np.concatenate(([0.0], np.cumsum(seg_ft)))
        # shift so that both prefix integrals vanish at tau = 0
        if t[0] <= 0.0 <= t[-1]:
            pf0, pft0 = ForceProfile._partial_from(t, v, cum_f, cum_ft, 0.0)
            cum_f = cum_f - pf0
            cum_ft = cum_ft - pft0
        return cum_f, cum_ft

    @staticmethod
    def _partial_from(t, v, cum_f, cum_ft, tau):
        i = min(max(int(np.searchsorted(t, tau)) - 1, 0), t.size - 2)
        slope = (v[i + 1] - v[i]) / (t[i + 1] - t[i])
        d = tau - t[i]
        pf = cum_f[i] + v[i] * d + 0.5 * slope * d * d
        pft = cum_ft[i] + 0.5 * v[i] * (tau**2 - t[i] ** 2) + slope * (
            tau**3 / 3.0 - 0.5 * t[i] * tau**2 + t[i] ** 3 / 6.0
        )
        return pf, pft

    # -- kernel argument pack ------------------------------------------------

    @property
    def code(self) -> int:
        return _KIND_CODES[self.kind]

    def pack(self):
        return (self.code, self.f0, self.omega, self.phi,
                self.times, self.values, self._cum_f, self._cum_ft)

    # -- evaluation ----------------------------------------------------------

    def covers(self, t: float) -> bool:
        if self.kind != "tabulated":
            return True
        return self.times[0] <= t <= self.times[-1]

    def require_covers(self, t_lo: float, t_hi: float) -> None:
        if self.kind != "tabulated":
            return
        if not (self.covers(t_lo) and self.covers(t_hi)):
            raise OutOfTabulatedRange(
                f"interval [{t_lo:g}, {t_hi:g}] outside tabulated range "
                f"[{self.times[0]:g}, {self.times[-1]:g}]"
            )

    def eval(self, t: float) -> float:
        """F(t); linear interpolation for tabulated profiles."""
        t = float(t)
        if not self.covers(t):
            raise OutOfTabulatedRange(
                f"t={t:g} outside tabulated range [{self.times[0]:g}, {self.times[-1]:g}]"
            )
        return float(k.force_value(self.code, self.f0, self.omega, self.phi,
                                   self.times, self.values, t))

    def cumulatives(self, t: float) -> tuple[float, float]:
        """Exact (int_0^t F dtau, int_0^t F*tau dtau)."""
        t = float(t)
        self.require_covers(min(0.0, t), max(0.0, t))
        i_f, i_ft = k.force_cumulatives(self.code, self.f0, self.omega, self.phi,
                                        self.times, self.values,
                                        self._cum_f, self._cum_ft, t)
        return float(i_f), float(i_ft)

    def __eq__(self, other):
        if not isinstance(other, ForceProfile):
            return NotImplemented
        return (self.kind == other.kind
                and self.f0 == other.f0
                and self.omega == other.omega
                and self.phi == other.phi
                and np.array_equal(self.times, other.times)
                and np.array_equal(self.values, other.values))

    def __hash__(self):
        return hash((self.kind, self.f0, self.omega, self.phi,
                     self.times.tobytes(), self.values.tobytes()))


def force_eval(profile: ForceProfile, t: float) -> float:
    """Evaluate F(t); module-level alias for :meth:`ForceProfile.eval`."""
    return profile.eval(t)
