"""The numba path and the pure-Python/numpy fallback must agree numerically."""
import json
import os
import subprocess
import sys

import numpy as np
import pytest

import linpacket

WORKLOAD = r"""
import json
import numpy as np
import linpacket as lp

force = lp.ForceProfile.sinusoidal(1.0, 2.0, 0.3)
c = lp.InvariantCoeffs(a0=1.0, b0=0.4, c0=0.2, params=lp.PhysicalParams(),
                       force=force)
spec = lp.PacketSpec(coeffs=c, a=0.5)
grid = lp.GridSpec(-15.0, 15.0, 256, 1e-3)
state = lp.propagate(lp.init_from_packet(spec, grid, 0.0), c, 0.05)
sup = lp.superpose(lp.WeightFunction.gaussian(0.5, n_lambda=64), c, grid, 0.3)
out = {
    "numba": lp.NUMBA_ENABLED,
    "I": lp.kernel_inv_a2(c, 1.2),
    "J": lp.kernel_c_over_a2(c, 1.2),
    "P": lp.kernel_c2_over_a2(c, 1.2),
    "cq": lp.coeff_c_quadrature(c, 1.7),
    "amp_re": lp.packet_amplitude(spec, 1.3, 0.8).real,
    "amp_im": lp.packet_amplitude(spec, 1.3, 0.8).imag,
    "psi_sum_re": float(np.sum(state.psi).real),
    "psi_sum_im": float(np.sum(state.psi).imag),
    "sup_sum_re": float(np.sum(sup.psi).real),
    "sup_sum_im": float(np.sum(sup.psi).imag),
}
print(json.dumps(out))
"""


def run_workload(disable_numba):
    env = dict(os.environ)
    env["LINPACKET_DISABLE_NUMBA"] = "1" if disable_numba else "0"
    proc = subprocess.run([sys.executable, "-c", WORKLOAD], env=env,
                          capture_output=True, text=True, timeout=600)
    assert proc.returncode == 0, proc.stderr
    return json.loads(proc.stdout)


@pytest.mark.skipif(not linpacket.NUMBA_ENABLED, reason="numba not active")
def test_fallback_matches_numba_path():
    fast = run_workload(disable_numba=False)
    slow = run_workload(disable_numba=True)
    assert fast["numba"] is True
    assert slow["numba"] is False
    for key in fast:
        if key == "numba":
            continue
        assert fast[key] == pytest.approx(slow[key], rel=1e-12, abs=1e-12), key


def test_env_flag_detection(monkeypatch):
    from linpacket import _accel
    monkeypatch.setenv("LINPACKET_DISABLE_NUMBA", "1")
    assert _accel._detect() is False
    monkeypatch.setenv("LINPACKET_DISABLE_NUMBA", "")
    assert _accel._detect() is True
    monkeypatch.delenv("LINPACKET_DISABLE_NUMBA")
    assert _accel._detect() is True
