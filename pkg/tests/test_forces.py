import numpy as np
import pytest
from scipy.integrate import quad

from linpacket import ForceProfile, OutOfTabulatedRange, ValidationError, force_eval


def test_zero_eval():
    assert force_eval(ForceProfile.zero(), 3.7) == 0.0


def test_constant_eval():
    assert force_eval(ForceProfile.constant(2.0), 5.0) == 2.0


def test_sinusoidal_eval():
    f = ForceProfile.sinusoidal(1.0, 2.0, 0.0)
    assert force_eval(f, np.pi / 4) == pytest.approx(1.0, abs=1e-15)


def test_sinusoidal_phase():
    f = ForceProfile.sinusoidal(1.5, 0.7, 0.3)
    assert f.eval(1.1) == pytest.approx(1.5 * np.sin(0.7 * 1.1 + 0.3), rel=1e-15)


def test_tabulated_interpolates_linear_exactly():
    # a linear function is reproduced exactly between its samples
    times = np.array([0.0, 1.0, 2.5, 4.0])
    f = ForceProfile.tabulated(times, 2.0 * times - 1.0)
    for t in (0.3, 1.7, 3.99):
        assert f.eval(t) == pytest.approx(2.0 * t - 1.0, rel=1e-14)


def test_tabulated_out_of_range():
    f = ForceProfile.tabulated([0.0, 1.0], [1.0, 2.0])
    with pytest.raises(OutOfTabulatedRange):
        f.eval(1.5)
    with pytest.raises(OutOfTabulatedRange):
        f.eval(-0.1)


def test_tabulated_times_must_increase():
    with pytest.raises(ValidationError):
        ForceProfile.tabulated([0.0, 1.0, 1.0], [1.0, 2.0, 3.0])
    with pytest.raises(ValidationError):
        ForceProfile.tabulated([0.0], [1.0])


def test_tabulated_rejects_nonfinite():
    with pytest.raises(ValidationError):
        ForceProfile.tabulated([0.0, 1.0], [np.inf, 0.0])


def test_unknown_kind_rejected():
    with pytest.raises(ValidationError):
        ForceProfile(kind="quadratic")


def test_cumulatives_constant():
    f = ForceProfile.constant(2.0)
    i_f, i_ft = f.cumulatives(3.0)
    assert i_f == pytest.approx(6.0, rel=1e-15)
    assert i_ft == pytest.approx(9.0, rel=1e-15)


@pytest.mark.parametrize("f0,omega,phi,t", [
    (1.0, 2.0, 0.0, 1.0),
    (1.3, 2.1, 0.4, 1.7),
    (-0.7, 5.0, -1.2, 2.3),
    (2.0, 0.0, 0.5, 1.1),  # omega = 0 degenerates to a constant
])
def test_cumulatives_sinusoidal_match_quadrature(f0, omega, phi, t):
    f = ForceProfile.sinusoidal(f0, omega, phi)
    i_f, i_ft = f.cumulatives(t)
    ref_f, _ = quad(f.eval, 0.0, t, epsabs=1e-13, epsrel=1e-13)
    ref_ft, _ = quad(lambda s: s * f.eval(s), 0.0, t, epsabs=1e-13, epsrel=1e-13)
    assert i_f == pytest.approx(ref_f, abs=1e-11)
    assert i_ft == pytest.approx(ref_ft, abs=1e-11)


def test_cumulatives_tabulated_exact_for_linear_force():
    # F(t) = 2t tabulated coarsely is represented exactly, so
    # int F = t^2 and int F*tau = 2 t^3 / 3 must come out exact
    times = np.array([0.0, 0.7, 1.9, 3.0])
    f = ForceProfile.tabulated(times, 2.0 * times)
    for t in (0.5, 1.3, 2.75):
        i_f, i_ft = f.cumulatives(t)
        assert i_f == pytest.approx(t**2, rel=1e-13)
        assert i_ft == pytest.approx(2.0 * t**3 / 3.0, rel=1e-13)


def test_cumulatives_tabulated_match_quadrature_of_interpolant():
    rng = np.random.default_rng(7)
    times = np.sort(rng.uniform(-0.5, 4.0, 17))
    times[0] = -0.5
    values = rng.uniform(-2.0, 2.0, 17)
    f = ForceProfile.tabulated(times, values)
    for t in (0.9, 2.2, 3.7):
        # breakpoints keep the oracle's panels aligned with the kinks
        pts = [s for s in times if 0.0 < s < t]
        i_f, i_ft = f.cumulatives(t)
        ref_f, _ = quad(f.eval, 0.0, t, epsabs=1e-13, limit=400, points=pts)
        ref_ft, _ = quad(lambda s: s * f.eval(s), 0.0, t, epsabs=1e-13, limit=400, points=pts)
        assert i_f == pytest.approx(ref_f, abs=1e-11)
        assert i_ft == pytest.approx(ref_ft, abs=1e-11)


def test_cumulatives_require_zero_in_range():
    f = ForceProfile.tabulated([1.0, 2.0], [1.0, 1.0])
    assert f.eval(1.5) == 1.0
    with pytest.raises(OutOfTabulatedRange):
        f.cumulatives(1.5)


def test_profile_equality():
    assert ForceProfile.constant(1.0) == ForceProfile.constant(1.0)
    assert ForceProfile.constant(1.0) != ForceProfile.constant(2.0)
    a = ForceProfile.tabulated([0.0, 1.0], [1.0, 2.0])
    b = ForceProfile.tabulated([0.0, 1.0], [1.0, 2.0])
    assert a == b
